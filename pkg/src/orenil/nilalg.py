"""Finite-dimensional matrix subalgebras and their strict triangularization.

A :class:`MatrixAlgebra` is the non-unital subalgebra of d x d matrices
generated by a finite set of generators, held as a multiplicative-closure
basis.  Nothing here ever adjoins the identity: spans contain products of
generators of length >= 1 only.

For a nilpotent algebra S the chain

    V_0 = 0,   V_i = {v : g v in V_{i-1} for every generator g}

strictly increases until it reaches the whole space (the algebra induced on
each nonzero quotient is again nilpotent, so it annihilates some nonzero
vector); if the chain stalls short of the full space, S is not nilpotent.
At finite dimension this reachability is equivalent to some power of S
vanishing, and an ordered basis refining the chain makes every element of S
strictly upper triangular.
"""

from __future__ import annotations

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    NotNilpotentError,
)
from .linalg import Flag, Matrix, SpanTracker, Subspace, from_columns, vstack
from .scalars import Field, Scalar


def _check_generators(generators) -> tuple[Field, int]:
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    first = gens[0]
    field, d = first.field, first.nrows
    for g in gens:
        if g.field is not field:
            raise FieldMismatchError("generators over different fields")
        if not g.is_square or g.nrows != d:
            raise DimensionMismatchError("generators must be square of equal size")
    return field, d


def closure(generators) -> "MatrixAlgebra":
    """The non-unital algebra generated by the given square matrices.

    Saturates the span: every new basis element is multiplied by each
    generator on both sides until no product adds a new direction.  The
    result has dimension at most d^2.
    """
    gens = list(generators)
    field, d = _check_generators(gens)
    tracker = SpanTracker(field, d * d)
    basis: list[Matrix] = []
    seen: set = set()
    queue: list[Matrix] = []
    for g in gens:
        if g.data not in seen:
            seen.add(g.data)
            if any(g.data) and tracker.insert(g.data):
                basis.append(g)
                queue.append(g)
    factors = [g for g in gens if not g.is_zero()]
    # dedupe the multipliers; products with duplicates add nothing
    uniq, useen = [], set()
    for g in factors:
        if g.data not in useen:
            useen.add(g.data)
            uniq.append(g)
    head = 0
    while head < len(queue):
        m = queue[head]
        head += 1
        for g in uniq:
            for prod in (m * g, g * m):
                key = prod.data
                if key in seen:
                    continue
                seen.add(key)
                if any(key) and tracker.insert(key):
                    basis.append(prod)
                    queue.append(prod)
    return MatrixAlgebra(field, d, tuple(gens), tuple(basis), tracker)


class MatrixAlgebra:
    """A multiplicatively closed span of d x d matrices (no implicit unit)."""

    __slots__ = ("field", "dim", "generators", "closure_basis", "_span")

    def __init__(self, field, dim, generators, closure_basis, span_tracker):
        self.field = field
        self.dim = dim
        self.generators = generators
        self.closure_basis = closure_basis
        self._span = span_tracker

    def contains(self, m: Matrix) -> bool:
        if m.field is not self.field:
            raise FieldMismatchError("matrix over a different field")
        if not m.is_square or m.nrows != self.dim:
            raise DimensionMismatchError("matrix of the wrong size")
        if m.is_zero():
            return True
        return self._span.contains(m.data)

    @property
    def algebra_dim(self) -> int:
        return len(self.closure_basis)

    def is_zero_algebra(self) -> bool:
        return not self.closure_basis

    def _working_generators(self) -> list[Matrix]:
        out, seen = [], set()
        for g in self.generators:
            if not g.is_zero() and g.data not in seen:
                seen.add(g.data)
                out.append(g)
        return out

    # -- nilpotency --------------------------------------------------------

    def nilpotency_index(self) -> int | None:
        """Least n with S^n = 0, or None when S is not nilpotent.

        Power spans satisfy S^{k+1} = span{g * c : g generator, c in S^k},
        so each step multiplies the previous power's basis by the generators
        only.  A nilpotent algebra acting on a d-dimensional space has index
        at most d, so the chain stops after d steps.
        """
        gens = self._working_generators()
        power = list(self.closure_basis)
        for k in range(1, self.dim + 1):
            if not power:
                return k
            tracker = SpanTracker(self.field, self.dim * self.dim)
            next_power = []
            for g in gens:
                for c in power:
                    prod = g * c
                    key = prod.data
                    if any(key) and tracker.insert(key):
                        next_power.append(prod)
            power = next_power
        return None

    def is_nilpotent(self) -> bool:
        try:
            self._annihilator_level_trackers()
        except NotNilpotentError:
            return False
        return True

    def nilpotency_witness(self) -> tuple[Matrix, ...]:
        """A product of generators of length index-1 that is nonzero.

        Returns the factors; empty for the zero algebra (index 1).
        """
        index = self.nilpotency_index()
        if index is None:
            raise NotNilpotentError("algebra is not nilpotent")
        best: tuple[Matrix, ...] = ()
        frontier: list[tuple[Matrix, tuple[Matrix, ...]]] = []
        seen = set()
        for g in self.generators:
            if not g.is_zero() and g.data not in seen:
                seen.add(g.data)
                frontier.append((g, (g,)))
        length = 1
        while frontier and length < index - 1:
            nxt = []
            seen = set()
            for value, word in frontier:
                for g in self.generators:
                    prod = value * g
                    if not prod.is_zero() and prod.data not in seen:
                        seen.add(prod.data)
                        nxt.append((prod, word + (g,)))
            frontier = nxt
            length += 1
        if index > 1:
            if not frontier:
                raise NotNilpotentError("inconsistent nilpotency index")
            best = frontier[0][1]
        return best

    # -- annihilators ------------------------------------------------------

    def annihilated_subspace(self) -> Subspace:
        """{v : g v = 0 for every generator} = kernel of the stacked generators."""
        nonzero = self._working_generators()
        if not nonzero:
            return Subspace.full(self.field, self.dim)
        return vstack(nonzero).kernel()

    def annihilated_vector(self) -> tuple[Scalar, ...]:
        """A deterministic nonzero vector killed by the whole algebra."""
        common = self.annihilated_subspace()
        if common.is_zero():
            raise NotNilpotentError("no nonzero vector is annihilated by the algebra")
        f = self.field
        return tuple(Scalar(f, f.canonical(x)) for x in common.vectors[0])

    def _annihilator_level_trackers(self) -> list[SpanTracker]:
        """Levels of the annihilator chain as integer span trackers.

        Internal fast path: level bases are unnormalized (cross-multiplied)
        echelon vectors, exact but not canonical.
        """
        f = self.field
        d = self.dim
        gens = self._working_generators()
        current = SpanTracker(f, d)
        chain = [current]
        while current.dim < d:
            if not gens:
                nxt = SpanTracker(f, d)
                for i in range(d):
                    e = [f.zero] * d
                    e[i] = f.one
                    nxt.insert(e)
            else:
                residue = current.residue_matrix()
                stacked = SpanTracker(f, d)
                for g in gens:
                    for row in (residue * g).rows_raw():
                        stacked.insert(row)
                nxt = SpanTracker(f, d)
                for v in stacked.kernel_vectors():
                    nxt.insert(v)
            if nxt.dim <= current.dim:
                raise NotNilpotentError(
                    "annihilator chain stalled before reaching the full space"
                )
            chain.append(nxt)
            current = nxt
        return chain

    def annihilator_flag(self) -> Flag:
        """The chain 0 = V_0 < V_1 < ... < V_m = K^d with g V_i <= V_{i-1}."""
        chain = self._annihilator_level_trackers()
        f = self.field
        return Flag(
            [Subspace.from_vectors(f, self.dim, t.rows) for t in chain]
        )

    # -- triangularization -------------------------------------------------

    def triangularize(self) -> Matrix:
        """An invertible basis matrix making every algebra element strictly upper.

        Columns refine the annihilator flag: the canonical basis vectors of
        each level are taken in index order, keeping those independent of
        the columns already chosen.  Conjugating any closure-basis element
        by the result puts zeros on and below the diagonal.
        """
        flag = self.annihilator_flag()
        tracker = SpanTracker(self.field, self.dim)
        columns = []
        for level in flag.subspaces[1:]:
            for v in level.vectors:
                if tracker.insert(v):
                    columns.append(v)
        return from_columns(self.field, columns)

    def __repr__(self):
        return (
            f"MatrixAlgebra(d={self.dim}, generators={len(self.generators)}, "
            f"basis={len(self.closure_basis)})"
        )
