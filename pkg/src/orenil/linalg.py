"""Exact dense linear algebra over a coefficient field.

Matrices are immutable and row-major; entries are raw field values (see
``scalars``), with :class:`~orenil.scalars.Scalar` only at the API surface.
Subspaces are always held in a canonical reduced echelon basis so that
equality is structural and lattice operations need no extra normalization.
Pivoting is deterministic (first nonzero entry, scanning left-to-right and
top-to-bottom); with exact arithmetic there is nothing to gain from
magnitude heuristics and determinism keeps every output reproducible.
"""

from __future__ import annotations

from math import gcd

from .errors import DimensionMismatchError, FieldMismatchError, SingularMatrixError
from .scalars import Field, Scalar


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "data")

    def __init__(self, field: Field, nrows: int, ncols: int, data: tuple):
        """Internal constructor; ``data`` must be raw values, row-major."""
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.data = data

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows, field: Field | None = None) -> "Matrix":
        """Build a matrix from nested sequences of Scalars/ints/Fractions."""
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        if field is None:
            field = next(
                (v.field for r in rows for v in r if isinstance(v, Scalar)), None
            )
            if field is None:
                raise ValueError("cannot infer field; pass one explicitly")
        data = []
        for r in rows:
            for v in r:
                data.append(field.coerce(v))
        return cls(field, len(rows), ncols, tuple(data))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = nrows
        return cls(field, nrows, ncols, (field.zero,) * (nrows * ncols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        data = [field.zero] * (n * n)
        for i in range(n):
            data[i * n + i] = field.one
        return cls(field, n, n, tuple(data))

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> "Matrix":
        """The matrix unit with a single 1 in row i, column j (0-based)."""
        data = [field.zero] * (n * n)
        data[i * n + j] = field.one
        return cls(field, n, n, tuple(data))

    # -- access ------------------------------------------------------------

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self.field.canonical(self.data[i * self.ncols + j]))

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.entry(i, j)

    def row_raw(self, i: int) -> tuple:
        return self.data[i * self.ncols : (i + 1) * self.ncols]

    def rows_raw(self) -> list[tuple]:
        c = self.ncols
        return [self.data[i * c : (i + 1) * c] for i in range(self.nrows)]

    def column_raw(self, j: int) -> tuple:
        return tuple(self.data[i * self.ncols + j] for i in range(self.nrows))

    def rows(self) -> list[list[Scalar]]:
        return [
            [self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)
        ]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return not any(self.data)

    def is_strictly_upper_triangular(self) -> bool:
        n, c = self.nrows, self.ncols
        d = self.data
        return all(not d[i * c + j] for i in range(n) for j in range(min(i + 1, c)))

    # -- checks ------------------------------------------------------------

    def _check_field(self, other: "Matrix"):
        if other.field is not self.field:
            raise FieldMismatchError("matrices over different fields")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatchError("shape mismatch in addition")
        add = self.field.add
        return Matrix(
            self.field,
            self.nrows,
            self.ncols,
            tuple(add(a, b) for a, b in zip(self.data, other.data)),
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatchError("shape mismatch in subtraction")
        sub = self.field.sub
        return Matrix(
            self.field,
            self.nrows,
            self.ncols,
            tuple(sub(a, b) for a, b in zip(self.data, other.data)),
        )

    def __neg__(self):
        neg = self.field.neg
        return Matrix(
            self.field, self.nrows, self.ncols, tuple(neg(a) for a in self.data)
        )

    def scale(self, c) -> "Matrix":
        """Multiply every entry by a Scalar or integer."""
        if isinstance(c, Scalar):
            if c.field is not self.field:
                raise FieldMismatchError("scalar from a different field")
            raw = c.value
        elif isinstance(c, int):
            raw = self.field.from_int(c)
        else:
            raise TypeError(f"cannot scale by {type(c).__name__}")
        mul = self.field.mul
        return Matrix(
            self.field, self.nrows, self.ncols, tuple(mul(raw, a) for a in self.data)
        )

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_field(other)
            if self.ncols != other.nrows:
                raise DimensionMismatchError(
                    f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
                )
            f = self.field
            k, m = self.ncols, other.ncols
            A, B = self.data, other.data
            p = f.characteristic
            out = []
            for i in range(self.nrows):
                acc = [0] * m if p else [f.zero] * m
                base = i * k
                for t in range(k):
                    a = A[base + t]
                    if not a:
                        continue
                    boff = t * m
                    acc = [
                        x + a * B[boff + j] if B[boff + j] else x
                        for j, x in enumerate(acc)
                    ]
                # residues are reduced once per row; rationals need nothing
                if p:
                    acc = [x % p for x in acc]
                out.extend(acc)
            return Matrix(f, self.nrows, m, tuple(out))
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("matrix power needs a non-negative integer")
        if not self.is_square:
            raise DimensionMismatchError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def transpose(self) -> "Matrix":
        c = self.ncols
        data = tuple(
            self.data[i * c + j] for j in range(c) for i in range(self.nrows)
        )
        return Matrix(self.field, c, self.nrows, data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field is other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(a == b for a, b in zip(self.data, other.data))
        )

    def __hash__(self):
        canon = self.field.canonical
        return hash(
            (id(self.field), self.nrows, self.ncols, tuple(canon(a) for a in self.data))
        )

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot columns.

        Pivots are the first nonzero entries found scanning columns left to
        right and rows top to bottom.
        """
        f = self.field
        sub, mul, div = f.sub, f.mul, f.div
        nrows, ncols = self.nrows, self.ncols
        rows = [list(self.data[i * ncols : (i + 1) * ncols]) for i in range(nrows)]
        pivots = []
        pr = 0
        for pc in range(ncols):
            pivot_row = None
            for i in range(pr, nrows):
                if rows[i][pc]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            if pivot_row != pr:
                rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
            pv = rows[pr][pc]
            if pv != f.one:
                rows[pr] = [div(x, pv) for x in rows[pr]]
            prow = rows[pr]
            for i in range(nrows):
                if i == pr:
                    continue
                c = rows[i][pc]
                if c:
                    rows[i] = [
                        sub(x, mul(c, y)) if y else x for x, y in zip(rows[i], prow)
                    ]
            pivots.append(pc)
            pr += 1
            if pr == nrows:
                break
        flat = tuple(v for row in rows for v in row)
        return Matrix(f, nrows, ncols, flat), tuple(pivots)

    @property
    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Subspace":
        """Exact null space; dim(kernel) + rank = ncols."""
        f = self.field
        R, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        neg = f.neg
        vectors = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for r, pc in enumerate(pivots):
                coef = R.data[r * self.ncols + fc]
                if coef:
                    v[pc] = neg(coef)
            vectors.append(v)
        return Subspace.from_vectors(f, self.ncols, vectors)

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatchError("inverse of a non-square matrix")
        f = self.field
        n = self.nrows
        aug_rows = []
        for i in range(n):
            row = list(self.data[i * n : (i + 1) * n])
            row.extend(f.one if j == i else f.zero for j in range(n))
            aug_rows.append(row)
        aug = Matrix(f, n, 2 * n, tuple(v for r in aug_rows for v in r))
        R, pivots = aug.rref()
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
            raise SingularMatrixError("matrix is singular")
        data = tuple(
            R.data[i * 2 * n + n + j] for i in range(n) for j in range(n)
        )
        return Matrix(f, n, n, data)

    def apply_raw(self, vec) -> list:
        """Matrix-vector product on a raw coordinate sequence."""
        if len(vec) != self.ncols:
            raise DimensionMismatchError("vector length mismatch")
        f = self.field
        add, mul, zero = f.add, f.mul, f.zero
        out = []
        c = self.ncols
        d = self.data
        for i in range(self.nrows):
            acc = zero
            base = i * c
            for j, v in enumerate(vec):
                if v and d[base + j]:
                    acc = add(acc, mul(d[base + j], v))
            out.append(acc)
        return out

    # -- printing ----------------------------------------------------------

    def __str__(self):
        fmt = self.field.format
        rows = []
        for i in range(self.nrows):
            rows.append(
                "[" + ",".join(fmt(v) for v in self.row_raw(i)) + "]"
            )
        return "[" + ",".join(rows) + "]"

    def __repr__(self):
        return f"Matrix({self.field.name}, {self})"


def vstack(matrices: list[Matrix]) -> Matrix:
    """Stack matrices with equal column counts on top of each other."""
    if not matrices:
        raise ValueError("nothing to stack")
    f = matrices[0].field
    ncols = matrices[0].ncols
    for m in matrices[1:]:
        if m.field is not f:
            raise FieldMismatchError("stacking matrices over different fields")
        if m.ncols != ncols:
            raise DimensionMismatchError("stacking matrices of different widths")
    data = []
    for m in matrices:
        data.extend(m.data)
    return Matrix(f, sum(m.nrows for m in matrices), ncols, tuple(data))


def from_columns(field: Field, columns) -> Matrix:
    columns = [tuple(c) for c in columns]
    if not columns:
        raise ValueError("need at least one column")
    n = len(columns[0])
    data = tuple(columns[j][i] for i in range(n) for j in range(len(columns)))
    return Matrix(field, n, len(columns), data)


def change_of_basis(m: Matrix, basis: Matrix) -> Matrix:
    """Conjugate ``m`` by an invertible ``basis``: basis^{-1} * m * basis."""
    if m.field is not basis.field:
        raise FieldMismatchError("basis over a different field")
    if not basis.is_square or basis.nrows != m.nrows or not m.is_square:
        raise DimensionMismatchError("incompatible shapes for change of basis")
    return basis.inverse() * m * basis


class Subspace:
    """A subspace of the column space K^d, stored as a canonical basis.

    The basis vectors are in reduced echelon form: each has 1 at its pivot
    coordinate, pivots strictly increase across the basis ("lowest pivot row
    first"), and every vector vanishes at the other pivots.  Two subspaces
    are equal iff their canonical bases agree entrywise.
    """

    __slots__ = ("field", "ambient", "vectors", "pivots")

    def __init__(self, field: Field, ambient: int, vectors: tuple, pivots: tuple):
        self.field = field
        self.ambient = ambient
        self.vectors = vectors
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, field: Field, ambient: int, vectors) -> "Subspace":
        """Canonicalize a spanning set (raw-value sequences of length d)."""
        vecs = [tuple(v) for v in vectors if any(v)]
        if not vecs:
            return cls(field, ambient, (), ())
        m = Matrix(field, len(vecs), ambient, tuple(x for v in vecs for x in v))
        R, pivots = m.rref()
        rows = tuple(R.row_raw(i) for i in range(len(pivots)))
        return cls(field, ambient, rows, tuple(pivots))

    @classmethod
    def from_matrices(cls, field: Field, ambient: int, matrices) -> "Subspace":
        return cls.from_vectors(field, ambient, [m.data for m in matrices])

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        vecs = tuple(
            tuple(field.one if j == i else field.zero for j in range(ambient))
            for i in range(ambient)
        )
        return cls(field, ambient, vecs, tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def is_zero(self) -> bool:
        return not self.vectors

    def is_full(self) -> bool:
        return len(self.vectors) == self.ambient

    def _check(self, other: "Subspace"):
        if other.field is not self.field:
            raise FieldMismatchError("subspaces over different fields")
        if other.ambient != self.ambient:
            raise DimensionMismatchError("subspaces of different ambient dimension")

    def reduce_vector(self, vec) -> list:
        """Subtract the projection onto this subspace's pivot coordinates.

        The residue is zero exactly when ``vec`` lies in the subspace.
        """
        f = self.field
        sub, mul = f.sub, f.mul
        u = list(vec)
        for bvec, p in zip(self.vectors, self.pivots):
            c = u[p]
            if c:
                u = [sub(x, mul(c, y)) if y else x for x, y in zip(u, bvec)]
        return u

    def contains_vector(self, vec) -> bool:
        if len(vec) != self.ambient:
            raise DimensionMismatchError("vector of wrong length")
        return not any(self.reduce_vector(vec))

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(v) for v in other.vectors)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_vectors(
            self.field, self.ambient, list(self.vectors) + list(other.vectors)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Exact intersection via the kernel of [A | -B] on stacked coordinates."""
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.field, self.ambient)
        f = self.field
        ka, kb = self.dim, other.dim
        neg = f.neg
        rows = []
        for i in range(self.ambient):
            row = [self.vectors[j][i] for j in range(ka)]
            row.extend(neg(other.vectors[j][i]) for j in range(kb))
            rows.append(row)
        m = Matrix(f, self.ambient, ka + kb, tuple(x for r in rows for x in r))
        combos = m.kernel()
        add, mul = f.add, f.mul
        vectors = []
        for combo in combos.vectors:
            v = [f.zero] * self.ambient
            for j in range(ka):
                c = combo[j]
                if c:
                    v = [add(x, mul(c, y)) for x, y in zip(v, self.vectors[j])]
            vectors.append(v)
        return Subspace.from_vectors(f, self.ambient, vectors)

    def basis_matrix(self) -> Matrix:
        """Basis vectors as the columns of a d x dim matrix."""
        if not self.vectors:
            return Matrix.zeros(self.field, self.ambient, 1)
        return from_columns(self.field, self.vectors)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field is other.field
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and all(
                a == b
                for va, vb in zip(self.vectors, other.vectors)
                for a, b in zip(va, vb)
            )
        )

    def __hash__(self):
        canon = self.field.canonical
        return hash(
            (
                id(self.field),
                self.ambient,
                tuple(tuple(canon(x) for x in v) for v in self.vectors),
            )
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of K^{self.ambient})"


def apply_to_subspace(m: Matrix, w: Subspace) -> Subspace:
    """The image m(W)."""
    if m.ncols != w.ambient:
        raise DimensionMismatchError("matrix does not act on this space")
    return Subspace.from_vectors(
        m.field, m.nrows, [m.apply_raw(v) for v in w.vectors]
    )


def annihilates(m: Matrix, w: Subspace) -> bool:
    """True when m sends every vector of W to zero."""
    return all(not any(m.apply_raw(v)) for v in w.vectors)


def residue_map(w: Subspace) -> Matrix:
    """A matrix R with kernel exactly W: R subtracts the pivot projection."""
    f = w.field
    d = w.ambient
    data = [f.zero] * (d * d)
    for i in range(d):
        data[i * d + i] = f.one
    sub = f.sub
    for bvec, p in zip(w.vectors, w.pivots):
        for i in range(d):
            if bvec[i]:
                data[i * d + p] = sub(data[i * d + p], bvec[i])
    return Matrix(f, d, d, tuple(data))


def preimage(m: Matrix, w: Subspace) -> Subspace:
    """The largest subspace U with m(U) contained in W: {v : m v in W}."""
    if m.field is not w.field:
        raise FieldMismatchError("matrix and subspace over different fields")
    if m.nrows != w.ambient:
        raise DimensionMismatchError("matrix image does not land in W's space")
    if w.is_full():
        return Subspace.full(m.field, m.ncols)
    return (residue_map(w) * m).kernel()


def joint_preimage(matrices: list[Matrix], w: Subspace) -> Subspace:
    """{v : m v in W for every m} computed with one stacked kernel."""
    if not matrices:
        return Subspace.full(w.field, w.ambient)
    if w.is_full():
        return Subspace.full(matrices[0].field, matrices[0].ncols)
    r = residue_map(w)
    return vstack([r * m for m in matrices]).kernel()


class SpanTracker:
    """Incremental membership oracle for a growing span of raw vectors.

    Rows are kept in echelon order without pivot normalization: elimination
    is by cross-multiplication, so rational input never forces divisions.
    Over Q the rows are scaled to coprime integers; over F_p entries stay
    reduced residues.
    """

    __slots__ = ("field", "length", "rows", "pivots", "_p")

    def __init__(self, field: Field, length: int):
        self.field = field
        self.length = length
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self._p = field.characteristic

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _normalize(self, vec: list) -> list:
        if self._p:
            return vec
        denom = 1
        for x in vec:
            if not isinstance(x, int):
                d = x.denominator
                if d != 1:
                    denom = denom * d // gcd(denom, d)
        if denom != 1:
            vec = [int(x * denom) for x in vec]
        g = 0
        for x in vec:
            if x:
                g = gcd(g, x)
                if g == 1:
                    return vec
        if g > 1:
            vec = [x // g for x in vec]
        return vec

    def reduce(self, vec) -> list:
        """Eliminate ``vec`` against the stored rows (no divisions)."""
        p = self._p
        u = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = u[piv]
            if c:
                pv = row[piv]
                u = [pv * x - c * y if (x or y) else 0 for x, y in zip(u, row)]
                if p:
                    u = [x % p for x in u]
        return u

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def reduce_linear(self, vec) -> list:
        """Like reduce, but scales by the pivot unconditionally at each row.

        The skip in ``reduce`` makes it nonlinear (scale factors depend on
        the input); this variant is a fixed linear map with kernel exactly
        the tracked span, which is what residue matrices need.
        """
        p = self._p
        u = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            pv = row[piv]
            c = u[piv]
            u = [pv * x - c * y for x, y in zip(u, row)]
            if p:
                u = [x % p for x in u]
        return u

    def insert(self, vec) -> bool:
        """Add ``vec`` to the span; False when it was already dependent."""
        u = self.reduce(vec)
        for p, x in enumerate(u):
            if x:
                row = self._normalize(u)
                idx = 0
                while idx < len(self.pivots) and self.pivots[idx] < p:
                    idx += 1
                self.rows.insert(idx, row)
                self.pivots.insert(idx, p)
                return True
        return False

    def residue_matrix(self) -> Matrix:
        """A matrix whose kernel is exactly the tracked span."""
        f = self.field
        d = self.length
        cols = []
        for j in range(d):
            e = [f.zero] * d
            e[j] = f.one
            cols.append(self.reduce_linear(e))
        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        if not self._p:
            # entries pick up pivot products; strip each row's gcd
            # (row scaling leaves the kernel unchanged)
            stripped = []
            for row in rows:
                g = 0
                for x in row:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                stripped.append([x // g for x in row] if g > 1 else row)
            rows = stripped
        data = tuple(x for row in rows for x in row)
        return Matrix(f, d, d, data)

    def kernel_vectors(self) -> list[list]:
        """Back-substituted basis of {v : row . v = 0 for all rows}.

        Over Q the vectors come out as coprime integers; over F_p as
        reduced residues.
        """
        f = self.field
        n = self.length
        pivot_set = set(self.pivots)
        free = [j for j in range(n) if j not in pivot_set]
        pairs = list(zip(self.rows, self.pivots))
        out = []
        p = self._p
        for fc in free:
            v = [0] * n
            v[fc] = 1
            for row, piv in reversed(pairs):
                s = 0
                for j in range(piv + 1, n):
                    if v[j] and row[j]:
                        s += row[j] * v[j]
                pv = row[piv]
                if p:
                    v[piv] = (-s * pow(pv, -1, p)) % p
                elif s:
                    if s % pv == 0:
                        v[piv] = -(s // pv)
                    else:
                        # scale v so the pivot variable stays integral
                        g = gcd(s, pv)
                        v = [x * (pv // g) for x in v]
                        v[piv] = -(s // g)
            if p:
                v = [x % p for x in v]
            else:
                g = 0
                for x in v:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                if g > 1:
                    v = [x // g for x in v]
            out.append(v)
        return out


class Flag:
    """A strictly increasing chain of subspaces starting at zero."""

    __slots__ = ("field", "ambient", "subspaces")

    def __init__(self, subspaces):
        chain = tuple(subspaces)
        if not chain:
            raise ValueError("flag needs at least the zero subspace")
        first = chain[0]
        if not first.is_zero():
            raise ValueError("flag must start at the zero subspace")
        for a, b in zip(chain, chain[1:]):
            if a.field is not b.field or a.ambient != b.ambient:
                raise DimensionMismatchError("flag levels in different spaces")
            if b.dim <= a.dim or not b.contains(a):
                raise ValueError("flag levels must strictly increase")
        self.field = first.field
        self.ambient = first.ambient
        self.subspaces = chain

    def __len__(self):
        return len(self.subspaces)

    def __getitem__(self, i) -> Subspace:
        return self.subspaces[i]

    def __iter__(self):
        return iter(self.subspaces)

    def __eq__(self, other):
        if not isinstance(other, Flag):
            return NotImplemented
        return self.subspaces == other.subspaces

    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.subspaces)

    def __repr__(self):
        return f"Flag(dims {self.dims()})"
