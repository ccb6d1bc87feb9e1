"""Command-line front end.

Exit codes: 0 = success / claim verified; 1 = an identity failed or a
counterexample appeared (the witness is printed); 2 = input error.
All randomized subcommands require an explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    InstanceNotNilpotentError,
    MismatchError,
    OrenilError,
    ParseError,
)
from .exprs import format_value
from .harness import (
    Conclusion,
    check_instance,
    commutator_expansion_suite,
    control_run,
    field_from_spec,
    idempotent_decomposition_suite,
    stress,
)
from .instancefile import (
    InstanceFileError,
    build_algebra,
    build_instance,
    build_polynomials,
    build_ring_and_derivation,
    load_instance_file,
)
from .linalg import change_of_basis

OK, FAILED, INPUT_ERROR = 0, 1, 2


def _read_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def cmd_mul(args) -> int:
    doc = load_instance_file(_read_file(args.file))
    algebra = build_algebra(doc)
    ring, deriv = build_ring_and_derivation(doc, algebra)
    polys = build_polynomials(doc, ring, deriv)
    if len(polys) < 2:
        raise InstanceFileError("mul needs at least two poly lines")
    names = list(polys)
    from .orepoly import ore_mul

    product = polys[names[0]]
    for name in names[1:]:
        product = ore_mul(product, polys[name], deriv)
    print(format_value(product))
    return OK


def cmd_triangularize(args) -> int:
    doc = load_instance_file(_read_file(args.file))
    algebra = build_algebra(doc)
    basis = algebra.triangularize()
    print(f"basis {format_value(basis)}")
    for name, g in zip(doc.gen_names, doc.generators):
        print(f"conjugated {name} {format_value(change_of_basis(g, basis))}")
    return OK


def cmd_flag(args) -> int:
    doc = load_instance_file(_read_file(args.file))
    algebra = build_algebra(doc)
    flag = algebra.annihilator_flag()
    print(f"levels {len(flag)}")
    print(f"dims {','.join(str(d) for d in flag.dims())}")
    for i, level in enumerate(flag):
        if level.is_zero():
            print(f"V{i} dim 0 zero")
        else:
            print(f"V{i} dim {level.dim} basis {format_value(level.basis_matrix())}")
    return OK


def _suite_exit(report: dict) -> int:
    print(json.dumps(report, indent=2, sort_keys=True))
    return OK if not report["failures"] else FAILED


def cmd_lemma1(args) -> int:
    field = field_from_spec(args.field)
    report = commutator_expansion_suite(
        seed=args.seed,
        max_degree=args.n,
        samples_per_degree=args.samples,
        dims=[args.dim],
        fields=[field],
    )
    return _suite_exit(report)


def cmd_lemma2(args) -> int:
    field = field_from_spec(args.field)
    report = idempotent_decomposition_suite(
        seed=args.seed,
        max_degree=args.n,
        samples_per_degree=args.samples,
        dims=[args.dim],
        fields=[field],
    )
    return _suite_exit(report)


def cmd_check(args) -> int:
    doc = load_instance_file(_read_file(args.file))
    inst = build_instance(doc)
    try:
        verdict = check_instance(inst, require_nilpotent=not args.bypass_nilpotency)
    except InstanceNotNilpotentError:
        print("conclusion instance_not_nilpotent")
        return OK
    print(f"e {format_value(verdict.e)}")
    print(f"idempotent {str(verdict.is_idempotent).lower()}")
    print(f"conclusion {verdict.conclusion.value}")
    if verdict.flag_report is not None:
        report = verdict.flag_report
        print(f"flag_dims {','.join(str(d) for d in report.level_dims)}")
        for k, level, ok in report.checks:
            print(f"claim k={k} level={level} {'ok' if ok else 'FAIL'}")
        if report.idempotent_annihilates is not None:
            for level, ok in enumerate(report.idempotent_annihilates, start=1):
                print(f"annihilates level={level} {'ok' if ok else 'FAIL'}")
    if verdict.conclusion is Conclusion.COUNTEREXAMPLE:
        return FAILED
    return OK


def cmd_control(args) -> int:
    field = field_from_spec(args.field)
    report = control_run(args.dim, field)
    print(f"precondition {report.precondition_outcome}")
    print(f"bypass_e {format_value(report.bypass.e)}")
    print(f"bypass_conclusion {report.bypass.conclusion.value}")
    ok = (
        report.precondition_outcome == "instance_not_nilpotent"
        and report.bypass.conclusion is Conclusion.NONZERO_IDEMPOTENT
    )
    return OK if ok else FAILED


def cmd_stress(args) -> int:
    report = stress(
        seed=args.seed,
        trials=args.trials,
        dmax=args.dmax,
        nmax=args.nmax,
        field=args.field,
        workers=args.workers,
    )
    text = report.to_json()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    if report.counts["counterexample"]:
        print("COUNTEREXAMPLE found; witnesses are in the report", file=sys.stderr)
        return FAILED
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orenil",
        description=(
            "Exact differential-polynomial and nilpotent-algebra toolkit: "
            "normal-form products, strict triangularization, annihilator "
            "flags, and randomized verification that idempotent values of "
            "nilpotent-coefficient polynomials vanish."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", help="multiply the poly lines of an instance file")
    p.add_argument("-f", "--file", required=True)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser(
        "triangularize",
        help="print a strict triangularizing basis and the conjugated generators",
    )
    p.add_argument("-f", "--file", required=True)
    p.set_defaults(func=cmd_triangularize)

    p = sub.add_parser("flag", help="print the annihilator flag of the generators")
    p.add_argument("-f", "--file", required=True)
    p.set_defaults(func=cmd_flag)

    p = sub.add_parser(
        "lemma1",
        help="randomized check of the binomial commutator-expansion identity",
    )
    p.add_argument("-n", type=int, required=True, help="maximum commutator degree")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--field", required=True, help="q or a prime")
    p.add_argument("--samples", type=int, default=50, help="samples per degree")
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser(
        "lemma2",
        help="randomized check of the idempotent commutator decomposition",
    )
    p.add_argument("-n", type=int, required=True, help="maximum commutator degree")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--field", required=True, help="q or a prime")
    p.add_argument("--samples", type=int, default=50, help="samples per degree")
    p.set_defaults(func=cmd_lemma2)

    p = sub.add_parser("check", help="check one instance file")
    p.add_argument("-f", "--file", required=True)
    p.add_argument(
        "--bypass-nilpotency",
        action="store_true",
        help="skip the nilpotency precondition (control mode)",
    )
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("control", help="run the non-nilpotent detector sanity check")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--field", default="q")
    p.set_defaults(func=cmd_control)

    p = sub.add_parser("stress", help="seeded randomized stress run")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--field", required=True, help="q or a prime")
    p.add_argument("--report", help="write the JSON report to this path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_stress)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InstanceFileError, MismatchError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except OrenilError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
