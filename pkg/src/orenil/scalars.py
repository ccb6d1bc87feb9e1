"""Exact coefficient fields: arbitrary-precision rationals and prime residue fields.

A :class:`Field` hands out :class:`Scalar` values and also exposes "raw"
arithmetic callables (``add``, ``mul``, ...) that operate directly on the
underlying representation (``int``/``Fraction`` for the rationals, small
``int`` residues mod p).  The raw layer exists so that dense linear algebra
can run without per-entry object wrapping; :class:`Scalar` is the boundary
type used by the public API, parsers and printers.
"""

from __future__ import annotations

import math
import operator
from fractions import Fraction

from .errors import FieldMismatchError


def binomial(n: int, j: int) -> int:
    """Exact binomial coefficient C(n, j); zero when j > n."""
    if n < 0 or j < 0:
        raise ValueError("binomial arguments must be non-negative")
    return math.comb(n, j)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Base class for coefficient fields.

    Subclasses populate the raw operation attributes in ``__init__`` so hot
    loops can bind them to locals without method dispatch.
    """

    name: str
    characteristic: int

    # raw ops, assigned per instance: add, sub, mul, neg, div, inv
    zero = 0
    one = 1

    def coerce(self, value):
        """Coerce an int/Fraction/Scalar into a raw value of this field."""
        raise NotImplementedError

    def canonical(self, raw):
        """Canonical raw form, as stored in a Scalar."""
        raise NotImplementedError

    def format(self, raw) -> str:
        raise NotImplementedError

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.canonical(self.coerce(value)))

    def from_int(self, n: int):
        raise NotImplementedError

    def __call__(self, value) -> "Scalar":
        return self.scalar(value)


class RationalField(Field):
    """The field of rationals, backed by ``int`` and ``fractions.Fraction``.

    Raw values mix plain ints with Fractions; Python's numeric tower keeps
    the arithmetic exact and equality consistent across the two.
    """

    name = "Q"
    characteristic = 0

    def __init__(self):
        self.add = operator.add
        self.sub = operator.sub
        self.mul = operator.mul
        self.neg = operator.neg

    @staticmethod
    def div(a, b):
        if not b:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    @staticmethod
    def inv(a):
        if not a:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field is not self:
                raise FieldMismatchError("scalar belongs to a different field")
            return value.value
        if isinstance(value, (int, Fraction)):
            return value
        raise TypeError(f"cannot interpret {value!r} as a rational")

    def canonical(self, raw) -> Fraction:
        return Fraction(raw)

    def from_int(self, n: int) -> int:
        return n

    def format(self, raw) -> str:
        f = Fraction(raw)
        if f.denominator == 1:
            return str(f.numerator)
        return f"{f.numerator}/{f.denominator}"

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_restore_rationals, ())


class PrimeField(Field):
    """Residues modulo a prime p, stored as ints in [0, p)."""

    characteristic: int

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.mul = lambda a, b: (a * b) % p
        self.neg = lambda a: (-a) % p
        self.inv = self._inv
        self.div = self._div

    def _inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F{self.p}")
        return pow(a, -1, self.p)

    def _div(self, a, b):
        return (a * self._inv(b)) % self.p

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field is not self:
                raise FieldMismatchError("scalar belongs to a different field")
            return value.value
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        raise TypeError(f"cannot interpret {value!r} as a residue mod {self.p}")

    def canonical(self, raw) -> int:
        return raw % self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def format(self, raw) -> str:
        return str(raw % self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


def _restore_rationals() -> RationalField:
    return QQ


_prime_fields: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """The prime field with p elements (cached, so fields compare by identity)."""
    field = _prime_fields.get(p)
    if field is None:
        field = PrimeField(p)
        _prime_fields[p] = field
    return field


class Scalar:
    """An immutable exact field element.

    Rationals print as ``p/q`` (or a bare integer when q = 1); prime-field
    elements print as ``k mod p``.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, _value):
        raise AttributeError("Scalar is immutable")

    def _check(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.field is not self.field:
            raise FieldMismatchError(
                f"cannot combine {self.field.name} and {other.field.name} scalars"
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.canonical(self.field.add(self.value, other.value)))

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.canonical(self.field.sub(self.value, other.value)))

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.canonical(self.field.mul(self.value, other.value)))

    def __truediv__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.canonical(self.field.div(self.value, other.value)))

    def __neg__(self):
        return Scalar(self.field, self.field.canonical(self.field.neg(self.value)))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.canonical(self.field.inv(self.value)))

    def is_zero(self) -> bool:
        return not self.value

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field is other.field and self.value == other.value

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __str__(self):
        if isinstance(self.field, PrimeField):
            return f"{self.value} mod {self.field.p}"
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field.name}, {self})"
