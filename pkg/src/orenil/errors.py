"""Exception types shared across the library."""


class OrenilError(Exception):
    """Base class for all library-specific errors."""


class MismatchError(OrenilError):
    """Operands belong to incompatible algebraic structures."""


class FieldMismatchError(MismatchError):
    pass


class DimensionMismatchError(MismatchError):
    pass


class SingularMatrixError(OrenilError):
    pass


class NotNilpotentError(OrenilError):
    pass


class NotIdempotentError(OrenilError):
    pass


class NotClosedError(OrenilError):
    """A commutator or product escapes the span it is required to stay in.

    ``witness`` holds the offending element (a Matrix), when known.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DerivationMismatchError(OrenilError):
    pass


class InstanceNotNilpotentError(OrenilError):
    """The generated subalgebra of an instance is not nilpotent.

    This is a failed precondition, reported as its own outcome; it is never
    a counterexample.
    """


class ParseError(OrenilError):
    """Syntax error with 1-based line/column position."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
