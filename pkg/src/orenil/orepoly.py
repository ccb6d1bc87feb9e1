"""Differential polynomial arithmetic over a matrix coefficient ring.

The coefficient ring R is a finite-dimensional span of matrices closed
under multiplication (typically the closure basis of a nilpotent algebra).
Polynomials live in the unital extension: coefficients are lambda*1 + r
pairs, written on the right of the powers of the indeterminate, and
multiplication rewrites every coefficient past a power using the relation

    X * r = r * X + delta(r)

equivalently r * X = X * r - delta(r), where delta is the ring's
derivation.  Evaluation substitutes a concrete matrix for X; it is a ring
homomorphism exactly when that matrix realizes delta by commutators, and
the precondition is checked.
"""

from __future__ import annotations

from .errors import (
    DerivationMismatchError,
    DimensionMismatchError,
    FieldMismatchError,
    MismatchError,
    NotClosedError,
)
from .linalg import Matrix
from .scalars import binomial


class CoefficientRing:
    """A matrix realization of the coefficient ring R.

    ``basis`` must be linearly independent with a multiplication-closed
    span; both are verified.  A product table (coordinates of b_i * b_j)
    is precomputed so element arithmetic never re-solves linear systems.
    """

    __slots__ = ("field", "dim", "basis", "_solver_rows", "_solver_pivots", "table")

    def __init__(self, basis):
        basis = tuple(basis)
        if not basis:
            raise ValueError("coefficient ring needs at least one basis matrix")
        field = basis[0].field
        d = basis[0].nrows
        for b in basis:
            if b.field is not field:
                raise FieldMismatchError("basis matrices over different fields")
            if not b.is_square or b.nrows != d:
                raise DimensionMismatchError("basis matrices must be square, equal size")
        self.field = field
        self.dim = d
        self.basis = basis
        self._build_solver()
        m = len(basis)
        table = []
        for i in range(m):
            row = []
            for j in range(m):
                coords = self.coordinates(basis[i] * basis[j])
                if coords is None:
                    raise NotClosedError(
                        f"basis product {i}*{j} escapes the span",
                        witness=basis[i] * basis[j],
                    )
                row.append(coords)
            table.append(tuple(row))
        self.table = tuple(table)

    @classmethod
    def from_algebra(cls, algebra) -> "CoefficientRing":
        return cls(algebra.closure_basis)

    def _build_solver(self):
        """Row-reduce the flattened basis, remembering the combination."""
        f = self.field
        m = len(self.basis)
        n = self.dim * self.dim
        sub, mul, div = f.sub, f.mul, f.div
        rows = []
        for k, b in enumerate(self.basis):
            row = list(b.data) + [f.one if t == k else f.zero for t in range(m)]
            rows.append(row)
        pivots = []
        pr = 0
        for pc in range(n):
            pivot = None
            for i in range(pr, m):
                if rows[i][pc]:
                    pivot = i
                    break
            if pivot is None:
                continue
            rows[pr], rows[pivot] = rows[pivot], rows[pr]
            pv = rows[pr][pc]
            if pv != f.one:
                rows[pr] = [div(x, pv) for x in rows[pr]]
            prow = rows[pr]
            for i in range(m):
                if i != pr and rows[i][pc]:
                    c = rows[i][pc]
                    rows[i] = [sub(x, mul(c, y)) if y else x for x, y in zip(rows[i], prow)]
            pivots.append(pc)
            pr += 1
            if pr == m:
                break
        if pr < m:
            raise ValueError("basis matrices are linearly dependent")
        self._solver_rows = [r for r in rows]
        self._solver_pivots = pivots

    def coordinates(self, m: Matrix):
        """Coordinates of ``m`` in the basis, or None when m is outside the span."""
        if m.field is not self.field:
            raise FieldMismatchError("matrix over a different field")
        if not m.is_square or m.nrows != self.dim:
            raise DimensionMismatchError("matrix of the wrong size")
        f = self.field
        sub, mul = f.sub, f.mul
        n = self.dim * self.dim
        mcount = len(self.basis)
        u = list(m.data)
        coeffs = [f.zero] * mcount
        for row, p in zip(self._solver_rows, self._solver_pivots):
            c = u[p]
            if c:
                u = [sub(x, mul(c, y)) if y else x for x, y in zip(u, row[:n])]
                for t in range(mcount):
                    if row[n + t]:
                        coeffs[t] = f.add(coeffs[t], mul(c, row[n + t]))
        if any(u):
            return None
        return tuple(coeffs)

    def element(self, m: Matrix, lam=None) -> "UnitalElement":
        """Embed a span matrix (plus an optional scalar part) as an element."""
        coords = self.coordinates(m)
        if coords is None:
            raise NotClosedError("matrix is not in the coefficient ring", witness=m)
        raw_lam = self.field.zero if lam is None else self.field.coerce(lam)
        return UnitalElement(self, raw_lam, coords)

    def scalar_element(self, lam) -> "UnitalElement":
        return UnitalElement(
            self, self.field.coerce(lam), (self.field.zero,) * len(self.basis)
        )

    @property
    def zero_element(self) -> "UnitalElement":
        return self.scalar_element(0)

    @property
    def one_element(self) -> "UnitalElement":
        return self.scalar_element(1)

    def __repr__(self):
        return f"CoefficientRing(d={self.dim}, rank={len(self.basis)})"


class UnitalElement:
    """lambda * 1 + r, with r given by coordinates in the ring basis."""

    __slots__ = ("ring", "lam", "coords")

    def __init__(self, ring: CoefficientRing, lam, coords: tuple):
        self.ring = ring
        self.lam = lam
        self.coords = coords

    def _check(self, other: "UnitalElement"):
        if not isinstance(other, UnitalElement):
            raise TypeError("expected UnitalElement")
        if other.ring is not self.ring:
            raise MismatchError("elements of different coefficient rings")

    def __add__(self, other):
        self._check(other)
        f = self.ring.field
        add = f.add
        return UnitalElement(
            self.ring,
            add(self.lam, other.lam),
            tuple(add(a, b) for a, b in zip(self.coords, other.coords)),
        )

    def __sub__(self, other):
        self._check(other)
        f = self.ring.field
        sub = f.sub
        return UnitalElement(
            self.ring,
            sub(self.lam, other.lam),
            tuple(sub(a, b) for a, b in zip(self.coords, other.coords)),
        )

    def __neg__(self):
        f = self.ring.field
        neg = f.neg
        return UnitalElement(
            self.ring, neg(self.lam), tuple(neg(a) for a in self.coords)
        )

    def scale_raw(self, c) -> "UnitalElement":
        f = self.ring.field
        mul = f.mul
        return UnitalElement(
            self.ring, mul(c, self.lam), tuple(mul(c, a) for a in self.coords)
        )

    def scale_int(self, k: int) -> "UnitalElement":
        return self.scale_raw(self.ring.field.from_int(k))

    def __mul__(self, other):
        """(l1 + r1)(l2 + r2) with r1 r2 resolved through the product table."""
        self._check(other)
        f = self.ring.field
        add, mul = f.add, f.mul
        m = len(self.coords)
        out = [f.zero] * m
        l1, l2 = self.lam, other.lam
        if l1:
            for t, b in enumerate(other.coords):
                if b:
                    out[t] = add(out[t], mul(l1, b))
        if l2:
            for t, a in enumerate(self.coords):
                if a:
                    out[t] = add(out[t], mul(l2, a))
        table = self.ring.table
        for i, a in enumerate(self.coords):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                ab = mul(a, b)
                entry = row[j]
                for t in range(m):
                    if entry[t]:
                        out[t] = add(out[t], mul(ab, entry[t]))
        return UnitalElement(self.ring, mul(l1, l2), tuple(out))

    def is_zero(self) -> bool:
        return not self.lam and not any(self.coords)

    def is_pure_scalar(self) -> bool:
        return not any(self.coords)

    def ring_part(self) -> Matrix:
        """The matrix realizing r (without the adjoined unit)."""
        f = self.ring.field
        total = Matrix.zeros(f, self.ring.dim)
        for c, b in zip(self.coords, self.ring.basis):
            if c:
                add, mul = f.add, f.mul
                total = Matrix(
                    f,
                    total.nrows,
                    total.ncols,
                    tuple(add(x, mul(c, y)) for x, y in zip(total.data, b.data)),
                )
        return total

    def matrix(self) -> Matrix:
        """Embed into the matrix ring as lambda * I + r."""
        f = self.ring.field
        total = self.ring_part()
        if self.lam:
            add, mul = f.add, f.mul
            eye = Matrix.identity(f, self.ring.dim)
            total = Matrix(
                f,
                total.nrows,
                total.ncols,
                tuple(add(x, mul(self.lam, y)) for x, y in zip(total.data, eye.data)),
            )
        return total

    def __eq__(self, other):
        if not isinstance(other, UnitalElement):
            return NotImplemented
        return (
            self.ring is other.ring
            and self.lam == other.lam
            and all(a == b for a, b in zip(self.coords, other.coords))
        )

    def __hash__(self):
        canon = self.ring.field.canonical
        return hash((id(self.ring), canon(self.lam), tuple(canon(c) for c in self.coords)))

    def __repr__(self):
        return f"UnitalElement(lam={self.ring.field.format(self.lam)}, r={self.ring_part()})"


class Derivation:
    """A linear self-map of the coefficient ring satisfying the Leibniz rule.

    Stored as the images of the basis elements; the Leibniz identity
    delta(ab) = delta(a) b + a delta(b) is verified exactly on every
    ordered basis pair at construction.  The adjoined unit maps to zero.
    """

    __slots__ = ("ring", "images", "image_coords")

    def __init__(self, ring: CoefficientRing, images, _skip_check: bool = False):
        images = tuple(images)
        if len(images) != len(ring.basis):
            raise ValueError("need one image per basis element")
        coords = []
        for k, img in enumerate(images):
            c = ring.coordinates(img)
            if c is None:
                raise NotClosedError(
                    f"derivation image of basis element {k} leaves the ring",
                    witness=img,
                )
            coords.append(c)
        self.ring = ring
        self.images = images
        self.image_coords = tuple(coords)
        if not _skip_check:
            self._verify_leibniz()

    def _verify_leibniz(self):
        basis = self.ring.basis
        for i, bi in enumerate(basis):
            for j, bj in enumerate(basis):
                lhs = self.apply_matrix(bi * bj)
                rhs = self.images[i] * bj + bi * self.images[j]
                if lhs != rhs:
                    raise ValueError(
                        f"Leibniz rule fails on basis pair ({i}, {j})"
                    )

    def apply_coords(self, coords: tuple) -> tuple:
        f = self.ring.field
        add, mul = f.add, f.mul
        m = len(coords)
        out = [f.zero] * m
        for k, c in enumerate(coords):
            if c:
                img = self.image_coords[k]
                for t in range(m):
                    if img[t]:
                        out[t] = add(out[t], mul(c, img[t]))
        return tuple(out)

    def apply(self, elem: UnitalElement) -> UnitalElement:
        """Apply to lambda + r; the unit part is killed."""
        if elem.ring is not self.ring:
            raise MismatchError("element of a different coefficient ring")
        return UnitalElement(
            self.ring, self.ring.field.zero, self.apply_coords(elem.coords)
        )

    def apply_matrix(self, m: Matrix) -> Matrix:
        coords = self.ring.coordinates(m)
        if coords is None:
            raise NotClosedError("matrix outside the coefficient ring", witness=m)
        f = self.ring.field
        out = Matrix.zeros(f, self.ring.dim)
        add, mul = f.add, f.mul
        for c, img in zip(coords, self.images):
            if c:
                out = Matrix(
                    f,
                    out.nrows,
                    out.ncols,
                    tuple(add(x, mul(c, y)) for x, y in zip(out.data, img.data)),
                )
        return out

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def __repr__(self):
        return f"Derivation(on rank-{len(self.ring.basis)} ring)"


def zero_derivation(ring: CoefficientRing) -> Derivation:
    zero = Matrix.zeros(ring.field, ring.dim)
    return Derivation(ring, [zero] * len(ring.basis), _skip_check=True)


def make_inner_derivation(ring: CoefficientRing, x: Matrix) -> Derivation:
    """The commutator derivation a -> x a - a x, when it preserves the ring.

    Raises NotClosedError (with the offending commutator) if some basis
    commutator escapes the span.  The Leibniz rule holds automatically for
    commutators but is still verified.
    """
    if x.field is not ring.field:
        raise FieldMismatchError("x over a different field")
    if not x.is_square or x.nrows != ring.dim:
        raise DimensionMismatchError("x has the wrong size")
    images = []
    for k, b in enumerate(ring.basis):
        img = x * b - b * x
        if ring.coordinates(img) is None:
            raise NotClosedError(
                f"commutator with basis element {k} leaves the ring", witness=img
            )
        images.append(img)
    return Derivation(ring, images)


class OrePoly:
    """Normal form sum_i X^i a_i with right-hand coefficients a_i.

    Trailing zero coefficients are trimmed; the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CoefficientRing, coeffs):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, UnitalElement) or c.ring is not ring:
                raise MismatchError("coefficients must be elements of the given ring")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, ring: CoefficientRing) -> "OrePoly":
        return cls(ring, ())

    @classmethod
    def constant(cls, elem: UnitalElement) -> "OrePoly":
        return cls(elem.ring, (elem,))

    @classmethod
    def indeterminate(cls, ring: CoefficientRing) -> "OrePoly":
        """The polynomial X (coefficient 1 at degree one)."""
        return cls(ring, (ring.zero_element, ring.one_element))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> UnitalElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero_element

    def _check(self, other: "OrePoly"):
        if not isinstance(other, OrePoly):
            raise TypeError("expected OrePoly")
        if other.ring is not self.ring:
            raise MismatchError("polynomials over different coefficient rings")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return OrePoly(
            self.ring,
            [self.coefficient(i) + other.coefficient(i) for i in range(n)],
        )

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return OrePoly(
            self.ring,
            [self.coefficient(i) - other.coefficient(i) for i in range(n)],
        )

    def __neg__(self):
        return OrePoly(self.ring, [-c for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            if i == 0:
                power = ""
            elif i == 1:
                power = "X"
            else:
                power = f"X^{i}"
            if a.is_pure_scalar():
                lam = self.ring.field.format(a.lam)
                if power and lam == "1":
                    terms.append(power)
                elif power:
                    terms.append(f"{power}*{lam}")
                else:
                    terms.append(lam)
            else:
                body = str(a.ring_part())
                if a.lam:
                    body = f"({self.ring.field.format(a.lam)} + {body})"
                terms.append(f"{power}*{body}" if power else body)
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"OrePoly({self})"


def delta_powers(a: UnitalElement, n: int, deriv: Derivation) -> list:
    """a, delta(a), ..., delta^n(a); the unit part survives only at power 0."""
    out = [a]
    current = a
    for _ in range(n):
        current = deriv.apply(current)
        out.append(current)
    return out


def move_coefficient(a: UnitalElement, j: int, deriv: Derivation) -> OrePoly:
    """Normal form of a * X^j.

    Closed form: sum_{k=0}^{j} C(j,k) (-1)^{j-k} X^k delta^{j-k}(a).  This
    is the j-fold application of the single rewrite a X -> X a - delta(a);
    the test suite checks the two agree step by step.
    """
    if j < 0:
        raise ValueError("power must be non-negative")
    if a.ring is not deriv.ring:
        raise MismatchError("coefficient and derivation over different rings")
    pows = delta_powers(a, j, deriv)
    ring = a.ring
    f = ring.field
    coeffs = []
    for k in range(j + 1):
        c = binomial(j, k)
        if (j - k) % 2:
            c = -c
        coeffs.append(pows[j - k].scale_raw(f.from_int(c)))
    return OrePoly(ring, coeffs)


def ore_mul(f: OrePoly, g: OrePoly, deriv: Derivation) -> OrePoly:
    """Exact product in normal form.

    Each term pair X^i a_i * X^j b_j is normalized by pushing a_i across
    X^j with ``move_coefficient``, multiplying coefficients in the unital
    extension, and shifting by i.
    """
    f._check(g)
    if deriv.ring is not f.ring:
        raise MismatchError("derivation over a different coefficient ring")
    ring = f.ring
    if f.is_zero() or g.is_zero():
        return OrePoly.zero(ring)
    out = [ring.zero_element] * (f.degree + g.degree + 1)
    for i, a in enumerate(f.coeffs):
        if a.is_zero():
            continue
        pows = delta_powers(a, g.degree, deriv)
        fld = ring.field
        for j, b in enumerate(g.coeffs):
            if b.is_zero():
                continue
            for k in range(j + 1):
                c = binomial(j, k)
                if (j - k) % 2:
                    c = -c
                moved = pows[j - k].scale_raw(fld.from_int(c))
                if moved.is_zero():
                    continue
                out[i + k] = out[i + k] + moved * b
    return OrePoly(ring, out)


def ore_pow(f: OrePoly, n: int, deriv: Derivation) -> OrePoly:
    if n < 0:
        raise ValueError("power must be non-negative")
    result = OrePoly.constant(f.ring.one_element)
    for _ in range(n):
        result = ore_mul(result, f, deriv)
    return result


def check_realizes(x: Matrix, ring: CoefficientRing, deriv: Derivation) -> bool:
    """Does x a - a x = delta(a) hold for every basis element a?"""
    for b, img in zip(ring.basis, deriv.images):
        if x * b - b * x != img:
            return False
    return True


def evaluate(f: OrePoly, x: Matrix, ring: CoefficientRing, deriv: Derivation) -> Matrix:
    """Substitute x for X: sum_i x^i M(a_i) with M(lam + r) = lam I + r.

    Requires x to realize the derivation by commutators (checked); without
    that the substitution would not be multiplicative.
    """
    if f.ring is not ring or deriv.ring is not ring:
        raise MismatchError("polynomial, ring and derivation must match")
    if x.field is not ring.field:
        raise FieldMismatchError("x over a different field")
    if not x.is_square or x.nrows != ring.dim:
        raise DimensionMismatchError("x has the wrong size")
    if not check_realizes(x, ring, deriv):
        raise DerivationMismatchError(
            "x does not realize the derivation on the coefficient ring"
        )
    total = Matrix.zeros(ring.field, ring.dim)
    x_pow = Matrix.identity(ring.field, ring.dim)
    for i, a in enumerate(f.coeffs):
        if i:
            x_pow = x_pow * x
        if not a.is_zero():
            total = total + x_pow * a.matrix()
    return total
