"""Iterated-commutator calculus.

All functions are generic over ring elements supporting ``+``, ``-``, ``*``
and left multiplication by Python ints (which must act through the ring's
base field, so integer coefficients reduce correctly in characteristic p).
The dense exact matrices of :mod:`orenil.linalg` are the shipped instance.

Throughout, ``[e, x]`` denotes e*x - x*e and ``[e, x]_j`` the j-fold
iteration [[e, x]_{j-1}, x], with [e, x]_0 = e.
"""

from __future__ import annotations

from .errors import NotIdempotentError
from .scalars import binomial


def commutator(a, b):
    return a * b - b * a


def iterated_commutator(e, x, n: int):
    """[e, x]_n for n >= 0."""
    if n < 0:
        raise ValueError("commutator depth must be non-negative")
    current = e
    for _ in range(n):
        current = current * x - x * current
    return current


def commutator_table(e, x, n: int) -> list:
    """[e, x]_0 .. [e, x]_n in one pass."""
    table = [e]
    for _ in range(n):
        prev = table[-1]
        table.append(prev * x - x * prev)
    return table


def leibniz_expand(e, x, n: int):
    """The binomial expansion sum_j C(n, j) x^j [e, x]_{n-j}.

    Ring identity: this equals e * x^n.  The equality is a theorem about
    the expansion, so callers/tests check it rather than this function
    assuming it.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    comms = commutator_table(e, x, n)
    x_pow = None
    total = comms[n]  # j = 0 term: x^0 [e,x]_n
    for j in range(1, n + 1):
        x_pow = x if x_pow is None else x_pow * x
        term = x_pow * comms[n - j]
        c = binomial(n, j)
        if c != 1:
            term = c * term
        total = total + term
    return total


def product_commutator_expand(a, b, x, m: int):
    """sum_j C(m, j) [a, x]_j [b, x]_{m-j}.

    e -> [e, x] is a derivation of the ring, so this expansion equals
    [a*b, x]_m; the identity is property-tested, not assumed.
    """
    if m < 0:
        raise ValueError("depth must be non-negative")
    ca = commutator_table(a, x, m)
    cb = commutator_table(b, x, m)
    total = None
    for j in range(m + 1):
        term = ca[j] * cb[m - j]
        c = binomial(m, j)
        if c != 1:
            term = c * term
        total = term if total is None else total + term
    return total


def decompose_idempotent_commutator(e, x, n: int) -> list:
    """Coefficients r_0..r_n with [e, x]_n = sum_i r_i * e * [e, x]_i.

    Requires e * e = e.  Splitting e = e*e and expanding [e*e, x]_n with the
    product rule turns the degree-n commutator into terms whose right factor
    is a lower-degree commutator; factors of degree 0 and n are kept as
    they stand and every other right factor is replaced by its own
    decomposition, with the left factor absorbed into the coefficient.
    Term order is fixed (left sum first, then right, each by ascending j),
    so the output is deterministic.  Degrees 0 and 1 return the anchors
    (e) and ([e, x], e).
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if e * e != e:
        raise NotIdempotentError("decomposition requires an idempotent")
    comms = commutator_table(e, x, n)
    memo: dict[int, list] = {}

    def decomp(k: int) -> list:
        cached = memo.get(k)
        if cached is not None:
            return cached
        if k == 0:
            result = [e]
        elif k == 1:
            result = [comms[1], e]
        else:
            zero = e - e
            result = [zero] * (k + 1)
            # [e,x]_k = sum_j C(k-1,j) ([e,x]_{j+1} [e,x]_{k-1-j}
            #                           + [e,x]_{k-1-j} [e,x]_{j+1})
            for j in range(k):
                c = binomial(k - 1, j)
                left, right = j + 1, k - 1 - j
                if right == 0:
                    extra = comms[k] * e
                    result[0] = result[0] + (c * extra if c != 1 else extra)
                else:
                    absorb(result, c, comms[left], right)
            for j in range(k):
                c = binomial(k - 1, j)
                left, right = k - 1 - j, j + 1
                if right == k:
                    result[k] = result[k] + (c * e if c != 1 else e)
                else:
                    absorb(result, c, comms[left], right)
        memo[k] = result
        return result

    def absorb(result: list, c: int, left, right_degree: int):
        sub = decomp(right_degree)
        for p in range(right_degree + 1):
            term = left * sub[p]
            if c != 1:
                term = c * term
            result[p] = result[p] + term

    return decomp(n)


def recombine(e, x, coefficients: list):
    """sum_i r_i * e * [e, x]_i — the other side of the decomposition."""
    comms = commutator_table(e, x, len(coefficients) - 1)
    total = None
    for r, c in zip(coefficients, comms):
        term = r * e * c
        total = term if total is None else total + term
    return total
