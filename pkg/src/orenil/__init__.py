"""Exact computer algebra for differential polynomial rings over nilpotent
matrix algebras, with a randomized checker that idempotent values vanish."""

from .errors import (
    DerivationMismatchError,
    DimensionMismatchError,
    FieldMismatchError,
    InstanceNotNilpotentError,
    MismatchError,
    NotClosedError,
    NotIdempotentError,
    NotNilpotentError,
    OrenilError,
    ParseError,
    SingularMatrixError,
)
from .scalars import GF, QQ, Scalar, binomial
from .linalg import (
    Flag,
    Matrix,
    Subspace,
    change_of_basis,
    preimage,
)
from .nilalg import MatrixAlgebra, closure
from .commutators import (
    commutator,
    decompose_idempotent_commutator,
    iterated_commutator,
    leibniz_expand,
    product_commutator_expand,
    recombine,
)
from .orepoly import (
    CoefficientRing,
    Derivation,
    OrePoly,
    UnitalElement,
    evaluate,
    make_inner_derivation,
    move_coefficient,
    ore_mul,
    ore_pow,
)
from .harness import (
    Conclusion,
    Instance,
    Verdict,
    check_instance,
    coefficient_subalgebra,
    commutator_expansion_suite,
    control_run,
    field_from_spec,
    idempotent_decomposition_suite,
    stress,
)
from .exprs import Evaluator, format_value, parse

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "Scalar",
    "binomial",
    "Matrix",
    "Subspace",
    "Flag",
    "change_of_basis",
    "preimage",
    "MatrixAlgebra",
    "closure",
    "commutator",
    "iterated_commutator",
    "leibniz_expand",
    "product_commutator_expand",
    "decompose_idempotent_commutator",
    "recombine",
    "CoefficientRing",
    "UnitalElement",
    "Derivation",
    "OrePoly",
    "make_inner_derivation",
    "move_coefficient",
    "ore_mul",
    "ore_pow",
    "evaluate",
    "Instance",
    "Verdict",
    "Conclusion",
    "check_instance",
    "coefficient_subalgebra",
    "control_run",
    "stress",
    "field_from_spec",
    "commutator_expansion_suite",
    "idempotent_decomposition_suite",
    "parse",
    "Evaluator",
    "format_value",
    "OrenilError",
    "MismatchError",
    "FieldMismatchError",
    "DimensionMismatchError",
    "SingularMatrixError",
    "NotNilpotentError",
    "NotIdempotentError",
    "NotClosedError",
    "DerivationMismatchError",
    "InstanceNotNilpotentError",
    "ParseError",
]
