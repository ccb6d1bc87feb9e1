"""The checker: evaluates polynomial expressions with nilpotent coefficients
and verifies, exactly, that idempotent values must vanish.

An :class:`Instance` packages an ambient coefficient algebra N, a matrix x
and coefficients a_0..a_n from N.  Checking proceeds in the order the
mathematics demands: first the subalgebra S generated by the a_i together
with their iterated commutators against x is closed up and its nilpotency
established (via the annihilator chain); only then is

    e = a_0 + x a_1 + ... + x^n a_n

evaluated and tested for idempotency.  A nonzero idempotent with the
hypothesis established would be a counterexample; reaching that verdict
fails the acceptance suite.  A non-nilpotent S is a failed precondition,
reported as its own outcome.  Everything is exact: idempotency means
e*e == e entrywise, with no tolerance anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .commutators import commutator_table, iterated_commutator, leibniz_expand
from .commutators import decompose_idempotent_commutator, recombine
from .errors import (
    InstanceNotNilpotentError,
    MismatchError,
    NotClosedError,
    NotNilpotentError,
)
from .linalg import Matrix
from .nilalg import MatrixAlgebra, closure
from .sampling import (
    child_rng,
    random_hidden_instance,
    random_idempotent,
    random_matrix,
)
from .scalars import Field, GF, QQ


def field_from_spec(spec) -> Field:
    """Resolve a field descriptor: 'q'/'Q' or a prime (int or digits)."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, int):
        return GF(spec)
    text = str(spec).strip().lower()
    if text in ("q", "qq", "rational", "rationals"):
        return QQ
    if text.isdigit():
        return GF(int(text))
    raise ValueError(f"unknown field descriptor {spec!r}")


def field_spec_name(field: Field) -> str:
    return "q" if field is QQ else str(field.characteristic)


class Conclusion(Enum):
    NOT_IDEMPOTENT = "not_idempotent"
    IDEMPOTENT_ZERO = "idempotent_zero"
    COUNTEREXAMPLE = "counterexample"
    # bypass mode only: hypothesis was never established, so a nonzero
    # idempotent is merely an observation, not a counterexample
    NONZERO_IDEMPOTENT = "nonzero_idempotent"


@dataclass(frozen=True)
class Instance:
    """Coefficient data for one check: e = sum_i x^i a_i with a_i in N."""

    algebra: MatrixAlgebra
    x: Matrix
    coeffs: tuple[Matrix, ...]

    def __post_init__(self):
        alg, x = self.algebra, self.x
        if x.field is not alg.field or not x.is_square or x.nrows != alg.dim:
            raise MismatchError("x must be square over the algebra's space")
        if not self.coeffs:
            raise ValueError("need at least one coefficient")
        for i, a in enumerate(self.coeffs):
            if a.field is not alg.field or a.nrows != alg.dim or not a.is_square:
                raise MismatchError(f"coefficient {i} has the wrong shape or field")
            if not alg.contains(a):
                raise NotClosedError(
                    f"coefficient {i} is not in the span of the coefficient algebra",
                    witness=a,
                )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self) -> Matrix:
        """a_0 + x a_1 + ... + x^n a_n by direct matrix arithmetic."""
        total = self.coeffs[0]
        x_pow = None
        for a in self.coeffs[1:]:
            x_pow = self.x if x_pow is None else x_pow * self.x
            if not a.is_zero():
                total = total + x_pow * a
        return total


@dataclass(frozen=True)
class FlagClaimReport:
    """Exact checks of e [e,x]_k (V_l) = 0 against the annihilator chain."""

    level_dims: tuple[int, ...]
    # one entry per (commutator depth k, level index l >= 1)
    checks: tuple[tuple[int, int, bool], ...]
    # e(V_l) = 0 per level, evaluated only when e is idempotent
    idempotent_annihilates: tuple[bool, ...] | None

    @property
    def all_claims_hold(self) -> bool:
        return all(ok for (_, _, ok) in self.checks)

    def to_dict(self) -> dict:
        return {
            "level_dims": list(self.level_dims),
            "checks": [list(c) for c in self.checks],
            "idempotent_annihilates": (
                None
                if self.idempotent_annihilates is None
                else list(self.idempotent_annihilates)
            ),
        }


@dataclass(frozen=True)
class Verdict:
    e: Matrix
    is_idempotent: bool
    conclusion: Conclusion
    flag_report: FlagClaimReport | None


def coefficient_subalgebra(
    instance: Instance, jmax: int | None = None, strict: bool = False
) -> MatrixAlgebra:
    """Closure of the coefficients and their iterated commutators with x.

    The generators are every a_i together with [a_i, x]_j for
    1 <= j <= jmax (jmax defaults to the instance degree).  With
    ``strict=True`` a commutator leaving the span of the ambient algebra N
    raises NotClosedError instead of silently enlarging S beyond N.
    """
    if jmax is None:
        jmax = instance.degree
    x = instance.x
    gens: list[Matrix] = []
    for i, a in enumerate(instance.coeffs):
        table = commutator_table(a, x, jmax)
        gens.append(a)
        for j in range(1, jmax + 1):
            c = table[j]
            if strict and not instance.algebra.contains(c):
                raise NotClosedError(
                    f"commutator depth {j} of coefficient {i} leaves the ambient algebra",
                    witness=c,
                )
            gens.append(c)
    return closure(gens)


def _flag_report(
    e: Matrix, x: Matrix, degree: int, level_trackers, is_idempotent: bool
) -> FlagClaimReport:
    comms = commutator_table(e, x, degree)
    products = [e * c for c in comms]
    checks = []
    level_dims = [t.dim for t in level_trackers]
    for k, m in enumerate(products):
        for l, tracker in enumerate(level_trackers):
            if l == 0:
                continue
            ok = all(not any(m.apply_raw(v)) for v in tracker.rows)
            checks.append((k, l, ok))
    annihilates = None
    if is_idempotent:
        annihilates = tuple(
            all(not any(e.apply_raw(v)) for v in tracker.rows)
            for tracker in level_trackers[1:]
        )
    return FlagClaimReport(tuple(level_dims), tuple(checks), annihilates)


def check_instance(
    instance: Instance,
    jmax: int | None = None,
    require_nilpotent: bool = True,
) -> Verdict:
    """Evaluate e and test it, establishing the nilpotency hypothesis first.

    With ``require_nilpotent=False`` (the control/bypass mode) nothing is
    checked about S, no flag exists, and a nonzero idempotent is reported
    as NONZERO_IDEMPOTENT rather than COUNTEREXAMPLE.
    """
    levels = None
    if require_nilpotent:
        algebra = coefficient_subalgebra(instance, jmax)
        try:
            levels = algebra._annihilator_level_trackers()
        except NotNilpotentError as exc:
            raise InstanceNotNilpotentError(
                "the generated subalgebra is not nilpotent; the hypothesis fails"
            ) from exc
    e = instance.evaluate()
    is_idempotent = e * e == e
    if not is_idempotent:
        conclusion = Conclusion.NOT_IDEMPOTENT
    elif e.is_zero():
        conclusion = Conclusion.IDEMPOTENT_ZERO
    elif require_nilpotent:
        conclusion = Conclusion.COUNTEREXAMPLE
    else:
        conclusion = Conclusion.NONZERO_IDEMPOTENT
    report = None
    if levels is not None:
        report = _flag_report(e, instance.x, instance.degree, levels, is_idempotent)
    return Verdict(e, is_idempotent, conclusion, report)


@dataclass(frozen=True)
class ControlReport:
    """Detector sanity: the not-nilpotent path plus the bypass observation."""

    precondition_outcome: str
    bypass: Verdict


def control_run(d: int, field: Field = QQ, coefficient: Matrix | None = None) -> ControlReport:
    """Run the pipeline on a deliberately non-nilpotent single-coefficient case.

    By default a_0 is the rank-one idempotent unit E11 and x = 0.  The full
    pipeline must refuse at the nilpotency precondition; the bypass mode
    must see the nonzero idempotent.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    a0 = coefficient if coefficient is not None else Matrix.unit(field, d, 0, 0)
    algebra = closure([a0])
    inst = Instance(algebra, Matrix.zeros(field, d), (a0,))
    try:
        check_instance(inst)
        outcome = "nilpotent_hypothesis_unexpectedly_held"
    except InstanceNotNilpotentError:
        outcome = "instance_not_nilpotent"
    bypass = check_instance(inst, require_nilpotent=False)
    return ControlReport(outcome, bypass)


# -- randomized stress ------------------------------------------------------

_OUTCOME_KEYS = (
    "not_idempotent",
    "idempotent_zero",
    "counterexample",
    "instance_not_nilpotent",
)


def _witness_dict(trial: int, data: dict, verdict: Verdict | None) -> dict:
    w = {
        "trial": trial,
        "dimension": data["d"],
        "degree": data["n"],
        "x": str(data["x"]),
        "generators": [str(g) for g in data["generators"]],
        "coefficients": [str(a) for a in data["coeffs"]],
    }
    if verdict is not None:
        w["e"] = str(verdict.e)
        w["is_idempotent"] = verdict.is_idempotent
        if verdict.flag_report is not None:
            w["flag_claims"] = verdict.flag_report.to_dict()
    return w


def run_stress_trial(seed: int, index: int, dmax: int, nmax: int, field: Field):
    """One seeded trial; returns (outcome key, witness dict)."""
    rng = child_rng(seed, index)
    data = random_hidden_instance(rng, field, dmax, nmax)
    algebra = closure(data["generators"])
    inst = Instance(algebra, data["x"], tuple(data["coeffs"]))
    try:
        verdict = check_instance(inst)
    except InstanceNotNilpotentError:
        return "instance_not_nilpotent", _witness_dict(index, data, None)
    return verdict.conclusion.value, _witness_dict(index, data, verdict)


@dataclass
class StressReport:
    seed: int
    field_name: str
    trials: int
    dmax: int
    nmax: int
    counts: dict
    witnesses: dict
    counterexamples: list

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "field": self.field_name,
            "trials": self.trials,
            "dmax": self.dmax,
            "nmax": self.nmax,
            "counts": dict(self.counts),
            "first_witness_per_outcome": self.witnesses,
            "counterexamples": self.counterexamples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def stress(
    seed: int, trials: int, dmax: int, nmax: int, field, workers: int = 1
) -> StressReport:
    """Reproducible randomized stress: per-trial exact verification.

    Trials are seeded independently of each other and of the worker count,
    so identical parameters always produce identical reports.
    """
    fld = field_from_spec(field)
    counts = {k: 0 for k in _OUTCOME_KEYS}
    witnesses: dict[str, dict] = {}
    counterexamples: list[dict] = []

    def fold(outcome: str, witness: dict):
        counts[outcome] += 1
        if outcome not in witnesses:
            witnesses[outcome] = witness
        if outcome == "counterexample":
            counterexamples.append(witness)

    if workers > 1 and trials > 1:
        import multiprocessing as mp

        spec = field_spec_name(fld)
        args = [(seed, i, dmax, nmax, spec) for i in range(trials)]
        with mp.Pool(workers) as pool:
            for outcome, witness in pool.starmap(
                _stress_trial_by_spec, args, chunksize=64
            ):
                fold(outcome, witness)
    else:
        for i in range(trials):
            outcome, witness = run_stress_trial(seed, i, dmax, nmax, fld)
            fold(outcome, witness)
    return StressReport(
        seed=seed,
        field_name=field_spec_name(fld),
        trials=trials,
        dmax=dmax,
        nmax=nmax,
        counts=counts,
        witnesses=witnesses,
        counterexamples=counterexamples,
    )


def _stress_trial_by_spec(seed, index, dmax, nmax, field_spec):
    return run_stress_trial(seed, index, dmax, nmax, field_from_spec(field_spec))


# -- identity suites (randomized, seeded, exact) ------------------------------


def _cycle(seq, i):
    return seq[i % len(seq)]


def commutator_expansion_suite(
    seed: int,
    max_degree: int,
    samples_per_degree: int,
    dims,
    fields,
) -> dict:
    """Check e x^n = sum_j C(n,j) x^j [e,x]_{n-j} on random matrix pairs.

    Samples for each degree cycle deterministically through the given
    dimensions and fields.
    """
    dims = list(dims)
    field_objs = [field_from_spec(f) for f in fields]
    checked = 0
    failures = []
    for n in range(max_degree + 1):
        for s in range(samples_per_degree):
            rng = child_rng(seed, f"expansion/{n}/{s}")
            fld = _cycle(field_objs, s)
            d = _cycle(dims, s // len(field_objs))
            e = random_matrix(rng, fld, d)
            x = random_matrix(rng, fld, d)
            checked += 1
            if leibniz_expand(e, x, n) != e * x**n:
                failures.append(
                    {"degree": n, "sample": s, "dimension": d,
                     "field": field_spec_name(fld), "e": str(e), "x": str(x)}
                )
    return {
        "suite": "commutator_expansion",
        "seed": seed,
        "max_degree": max_degree,
        "samples_per_degree": samples_per_degree,
        "dims": dims,
        "fields": [field_spec_name(f) for f in field_objs],
        "checked": checked,
        "failures": failures,
    }


def idempotent_decomposition_suite(
    seed: int,
    max_degree: int,
    samples_per_degree: int,
    dims,
    fields,
) -> dict:
    """Check [e,x]_n = sum_i r_i e [e,x]_i for random idempotents e.

    Idempotents are conjugated 0/1 diagonals of every intermediate rank;
    the certificate is recombined and compared entrywise.  The degree 0
    and 1 coefficient lists are also pinned structurally: (e) and
    ([e,x], e).
    """
    dims = list(dims)
    field_objs = [field_from_spec(f) for f in fields]
    checked = 0
    failures = []
    witness = None
    for n in range(max_degree + 1):
        for s in range(samples_per_degree):
            rng = child_rng(seed, f"decomposition/{n}/{s}")
            fld = _cycle(field_objs, s)
            d = _cycle(dims, s // len(field_objs))
            rank = rng.randint(1, d - 1) if d > 1 else 1
            e = random_idempotent(rng, fld, d, rank)
            x = random_matrix(rng, fld, d)
            coeffs = decompose_idempotent_commutator(e, x, n)
            checked += 1
            ok = recombine(e, x, coeffs) == iterated_commutator(e, x, n)
            if n == 0:
                ok = ok and coeffs == [e]
            elif n == 1:
                ok = ok and coeffs == [iterated_commutator(e, x, 1), e]
            if not ok:
                failures.append(
                    {"degree": n, "sample": s, "dimension": d,
                     "field": field_spec_name(fld), "e": str(e), "x": str(x)}
                )
            elif witness is None and n == max_degree:
                witness = {
                    "degree": n,
                    "dimension": d,
                    "field": field_spec_name(fld),
                    "e": str(e),
                    "x": str(x),
                    "coefficients": [str(r) for r in coeffs],
                }
    return {
        "suite": "idempotent_decomposition",
        "seed": seed,
        "max_degree": max_degree,
        "samples_per_degree": samples_per_degree,
        "dims": dims,
        "fields": [field_spec_name(f) for f in field_objs],
        "checked": checked,
        "failures": failures,
        "witness": witness,
    }
