"""Seeded random generation of matrices, algebras and harness instances.

Everything takes an explicit ``random.Random`` so that callers control
reproducibility; there is no ambient entropy anywhere in the library.
Over the rationals, change-of-basis matrices are built from integer
elementary operations (determinant +-1), so conjugated instances keep
integer entries and exact arithmetic stays cheap.
"""

from __future__ import annotations

import random

from .linalg import Matrix
from .nilalg import MatrixAlgebra, closure
from .scalars import Field, PrimeField

_ENTRY_POOL = (-2, -1, 0, 0, 1, 2)


def child_rng(seed: int, label) -> random.Random:
    """A deterministic, process-stable child generator."""
    return random.Random(f"{seed}/{label}")


def random_entry(rng: random.Random, field: Field):
    return field.from_int(rng.choice(_ENTRY_POOL))


def random_matrix(rng: random.Random, field: Field, d: int) -> Matrix:
    data = tuple(field.from_int(rng.choice(_ENTRY_POOL)) for _ in range(d * d))
    return Matrix(field, d, d, data)


def random_strictly_upper(rng: random.Random, field: Field, d: int) -> Matrix:
    data = [field.zero] * (d * d)
    for i in range(d):
        for j in range(i + 1, d):
            data[i * d + j] = field.from_int(rng.choice(_ENTRY_POOL))
    return Matrix(field, d, d, tuple(data))


def random_upper(rng: random.Random, field: Field, d: int) -> Matrix:
    """Upper triangular including the diagonal."""
    data = [field.zero] * (d * d)
    for i in range(d):
        for j in range(i, d):
            data[i * d + j] = field.from_int(rng.choice(_ENTRY_POOL))
    return Matrix(field, d, d, tuple(data))


def random_unimodular(rng: random.Random, field: Field, d: int) -> tuple[Matrix, Matrix]:
    """(P, P^{-1}) built from about 2d integer elementary row operations."""
    p = [[field.one if i == j else field.zero for j in range(d)] for i in range(d)]
    pinv = [[field.one if i == j else field.zero for j in range(d)] for i in range(d)]
    add, sub, mul = field.add, field.sub, field.mul
    for _ in range(2 * d):
        op = rng.randrange(3)
        i = rng.randrange(d)
        j = rng.randrange(d)
        if op == 0 and i != j:
            c = field.from_int(rng.choice((-2, -1, 1, 2)))
            # row_i += c * row_j on P; inverse op applied on the other side
            p[i] = [add(x, mul(c, y)) for x, y in zip(p[i], p[j])]
            for r in range(d):
                pinv[r][j] = sub(pinv[r][j], mul(c, pinv[r][i]))
        elif op == 1 and i != j:
            p[i], p[j] = p[j], p[i]
            for r in range(d):
                pinv[r][i], pinv[r][j] = pinv[r][j], pinv[r][i]
        else:
            neg = field.neg
            p[i] = [neg(x) for x in p[i]]
            for r in range(d):
                pinv[r][i] = neg(pinv[r][i])
    P = Matrix(field, d, d, tuple(x for row in p for x in row))
    Pinv = Matrix(field, d, d, tuple(x for row in pinv for x in row))
    return P, Pinv


def random_invertible(rng: random.Random, field: Field, d: int) -> tuple[Matrix, Matrix]:
    """(P, P^{-1}); rejection sampling over prime fields, unimodular over Q."""
    if not isinstance(field, PrimeField):
        return random_unimodular(rng, field, d)
    while True:
        data = tuple(rng.randrange(field.p) for _ in range(d * d))
        P = Matrix(field, d, d, data)
        try:
            return P, P.inverse()
        except Exception:
            continue


def random_idempotent(rng: random.Random, field: Field, d: int, rank: int) -> Matrix:
    """P * diag(1,...,1,0,...,0) * P^{-1} with the given rank."""
    if not 0 <= rank <= d:
        raise ValueError("rank out of range")
    P, Pinv = random_invertible(rng, field, d)
    diag = Matrix(
        field,
        d,
        d,
        tuple(
            field.one if (i == j and i < rank) else field.zero
            for i in range(d)
            for j in range(d)
        ),
    )
    return P * diag * Pinv


def random_combination(rng: random.Random, basis, zero: Matrix) -> Matrix:
    """A random small-integer combination of the given matrices."""
    total = zero
    field = zero.field
    for b in basis:
        c = rng.choice(_ENTRY_POOL)
        if c:
            total = total + b.scale(field.from_int(c))
    return total


def random_nilpotent_generators(
    rng: random.Random, field: Field, d: int, count: int
) -> list[Matrix]:
    gens = [random_strictly_upper(rng, field, d) for _ in range(count)]
    return gens


def conjugate_all(matrices, P: Matrix, Pinv: Matrix) -> list[Matrix]:
    return [P * m * Pinv for m in matrices]


def random_hidden_instance(
    rng: random.Random, field: Field, dmax: int, nmax: int
) -> dict:
    """A random instance with strictly-triangularizable structure hidden.

    Generators and coefficients are built strictly upper triangular, x is
    upper triangular (diagonal allowed), and everything is conjugated by a
    random unimodular/invertible matrix so no structure is visible to the
    checker.
    """
    d = rng.randint(2, dmax)
    n = rng.randint(0, nmax)
    gen_count = rng.randint(1, 3)
    plain_gens = random_nilpotent_generators(rng, field, d, gen_count)
    plain_algebra = closure(plain_gens)
    zero = Matrix.zeros(field, d)
    basis = plain_algebra.closure_basis
    plain_coeffs = [
        random_combination(rng, basis, zero) if basis else zero for _ in range(n + 1)
    ]
    plain_x = random_upper(rng, field, d)
    P, Pinv = random_unimodular(rng, field, d)
    return {
        "d": d,
        "n": n,
        "generators": conjugate_all(plain_gens, P, Pinv),
        "coeffs": conjugate_all(plain_coeffs, P, Pinv),
        "x": P * plain_x * Pinv,
        "basis_change": P,
    }


def random_conjugated_nilpotent_algebra(
    rng: random.Random, field: Field, d: int, gen_count: int
) -> tuple[MatrixAlgebra, Matrix]:
    """A nilpotent algebra with hidden triangular structure, plus the hiding P."""
    plain = random_nilpotent_generators(rng, field, d, gen_count)
    P, Pinv = random_unimodular(rng, field, d)
    return closure(conjugate_all(plain, P, Pinv)), P
