"""Command-line entry point.

One executable, subcommands per computation:

    monopoles dim pun --input problem.json
    monopoles dim un --input problem.json --dirac-multiplicity 1
    monopoles dim asd --input problem.json
    monopoles reductions enumerate --input problem.json --c-trace 6.2832 \
        --c-plus 0 --c-minus 8.89 --g identity --kmax 2
    monopoles strata --input problem.json --kmax 3
    monopoles mu properness --n 3 --tau 0 --starts 64 --seed 7
    monopoles mu check --suite all --samples 1000 --seed 7
    monopoles kaehler check --suite all --seed 7
    monopoles kaehler margin --n 2 --tau 0.5 --lambda 1+0i
    monopoles tau0 --input problem.json

Reports go to stdout as canonical JSON (``--format table`` for aligned
text).  Exit codes: 0 success, 1 a checked property failed (the
counterexample is serialized in the report), 2 invalid input.  Reports are
byte-identical given the same input, seed and package version; wall-clock
timing is only attached on request (``--timing``), since it would break
that reproducibility.  The thread-count variable ``MONOPOLES_THREADS`` is
accepted for operational tuning but can never affect results.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
import warnings

from . import __version__
from .cohomology import (
    asd_dimension_report,
    characteristic_defects,
    pun_dimension_report,
    un_dimension_report,
)
from .jsonio import (
    Problem,
    ValidationError,
    canonical_dumps,
    input_sha256,
    load_problem,
    problem_schema,
)
from .kaehler import impossibility_margin, impossibility_margin_closed_form
from .mu_kernel import properness_constant_estimate
from .reductions import (
    CurvatureBounds,
    enumerate_reductions,
    generic_tau0_vanishing,
    identity_metric,
    uhlenbeck_strata,
)
from .suites import kaehler_suite, mu_suite

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_INVALID_INPUT = 2


def _parse_complex(text: str) -> complex:
    """Parse '1+0i', '2i', '-0.5-1.5i' (also accepts 'j' notation)."""
    cleaned = text.strip().replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monopoles",
        description="expected dimensions, spinor-map certificates, Kahler fiber "
        "algebra and reduction censuses for higher-rank monopole theory",
    )
    parser.add_argument("--version", action="version", version=f"monopoles {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, input_file=False):
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--timing", action="store_true", help="attach wall-clock timing")
        if input_file:
            p.add_argument("--input", required=True, help="problem JSON file")

    dim = sub.add_parser("dim", help="expected dimension formulas")
    dim_sub = dim.add_subparsers(dest="dim_kind", required=True)
    for kind in ("pun", "un", "asd"):
        p = dim_sub.add_parser(kind)
        add_common(p, input_file=True)
        if kind != "asd":
            p.add_argument("--dirac-multiplicity", type=int, choices=(1, 2), default=None)

    red = sub.add_parser("reductions", help="fixed-point candidate census")
    red_sub = red.add_subparsers(dest="red_kind", required=True)
    enum_p = red_sub.add_parser("enumerate")
    add_common(enum_p, input_file=True)
    enum_p.add_argument("--c-trace", type=float, default=None)
    enum_p.add_argument("--c-plus", type=float, default=None)
    enum_p.add_argument("--c-minus", type=float, default=None)
    enum_p.add_argument("--g", default=None, help='"identity" or a JSON file with a rational matrix')
    enum_p.add_argument("--kmax", type=int, default=None)
    enum_p.add_argument("--dirac-multiplicity", type=int, choices=(1, 2), default=None)

    strata = sub.add_parser("strata", help="Uhlenbeck strata bookkeeping")
    add_common(strata, input_file=True)
    strata.add_argument("--kmax", type=int, default=None)
    strata.add_argument("--dirac-multiplicity", type=int, choices=(1, 2), default=None)

    mu_p = sub.add_parser("mu", help="spinor-map certificates")
    mu_sub = mu_p.add_subparsers(dest="mu_kind", required=True)
    prop = mu_sub.add_parser("properness")
    add_common(prop)
    prop.add_argument("--n", type=int, required=True)
    prop.add_argument("--tau", type=float, required=True)
    prop.add_argument("--starts", type=int, default=64)
    prop.add_argument("--seed", type=int, default=0)
    prop.add_argument("--tol", type=float, default=1e-8)
    check = mu_sub.add_parser("check")
    add_common(check)
    check.add_argument("--suite", default="all")
    check.add_argument("--samples", type=int, default=200)
    check.add_argument("--seed", type=int, default=0)

    ka = sub.add_parser("kaehler", help="Kahler fiber algebra")
    ka_sub = ka.add_subparsers(dest="ka_kind", required=True)
    kcheck = ka_sub.add_parser("check")
    add_common(kcheck)
    kcheck.add_argument("--suite", default="all")
    kcheck.add_argument("--samples", type=int, default=200)
    kcheck.add_argument("--seed", type=int, default=0)
    margin = ka_sub.add_parser("margin")
    add_common(margin)
    margin.add_argument("--n", type=int, required=True)
    margin.add_argument("--tau", type=float, required=True)
    margin.add_argument("--lambda", dest="lam", type=_parse_complex, required=True)
    margin.add_argument("--starts", type=int, default=64)
    margin.add_argument("--seed", type=int, default=0)

    tau0 = sub.add_parser("tau0", help="generic vanishing of the tau=0 trace equation")
    add_common(tau0, input_file=True)

    schema = sub.add_parser("schema", help="print the problem-file JSON schema")
    schema.add_argument("--format", choices=("json", "table"), default="json")
    schema.add_argument("--timing", action="store_true")
    return parser


def _problem_warnings(problem: Problem) -> list[str]:
    notes = list(problem.manifold.warnings)
    defects = characteristic_defects(problem.spinc, problem.manifold)
    if defects:
        notes.append(
            "Spin^c class fails the mod-2 characteristic test at basis "
            f"indices {list(defects)}"
        )
    if problem.manifold.b1 != 0:
        notes.append("b1 != 0: simple-connectivity assumptions do not apply")
    return notes


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], obj


def _render(report: dict, fmt: str) -> str:
    from .jsonio import to_jsonable

    if fmt == "json":
        return canonical_dumps(report)
    rows = list(_flatten(to_jsonable(report)))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _emit(report: dict, args, start_time: float) -> None:
    if getattr(args, "timing", False):
        report["timing_seconds"] = time.monotonic() - start_time
    print(_render(report, args.format))


def _envelope(argv, result, warnings_list, input_doc=None) -> dict:
    report = {
        "command": list(argv),
        "version": __version__,
        "warnings": list(warnings_list),
        "result": result,
    }
    if input_doc is not None:
        report["input_sha256"] = input_sha256(input_doc)
        report["input"] = input_doc
    return report


def _run_dim(args, argv, start_time) -> int:
    problem = load_problem(args.input)
    mult = getattr(args, "dirac_multiplicity", None)
    if mult is None:
        mult = problem.options.dirac_multiplicity
    if args.dim_kind == "pun":
        result = pun_dimension_report(problem.bundle, problem.spinc, problem.manifold, mult)
    elif args.dim_kind == "un":
        result = un_dimension_report(problem.bundle, problem.spinc, problem.manifold, mult)
    else:
        result = asd_dimension_report(problem.bundle, problem.manifold)
    _emit(_envelope(argv, result, _problem_warnings(problem), problem.raw), args, start_time)
    return EXIT_OK


def _load_metric_arg(g_arg, b2):
    if g_arg is None or g_arg == "identity":
        return identity_metric(b2)
    import json as _json

    from .jsonio import _rational_field  # reuse the strict rational parser

    with open(g_arg, "r", encoding="utf-8") as fh:
        doc = _json.load(fh)
    if not isinstance(doc, list):
        raise ValidationError("$.g", "expected a JSON matrix of rationals")
    return tuple(
        tuple(_rational_field(x, f"$.g[{i}][{j}]") for j, x in enumerate(row))
        for i, row in enumerate(doc)
    )


def _run_reductions(args, argv, start_time) -> int:
    problem = load_problem(args.input)
    base = problem.bounds
    c_trace = args.c_trace if args.c_trace is not None else (base.c_trace if base else None)
    c_plus = args.c_plus if args.c_plus is not None else (base.c_plus if base else 0.0)
    c_minus = args.c_minus if args.c_minus is not None else (base.c_minus if base else 0.0)
    if c_trace is None:
        raise ValidationError(
            "$.bounds.c_trace", "required (give --c-trace or a bounds block in the input)"
        )
    if args.g is not None:
        metric = _load_metric_arg(args.g, problem.manifold.b2)
    elif base is not None:
        metric = base.metric
    else:
        metric = identity_metric(problem.manifold.b2)
    bounds = CurvatureBounds(c_trace, c_plus, c_minus, metric)
    kmax = args.kmax if args.kmax is not None else problem.options.kmax
    mult = (
        args.dirac_multiplicity
        if args.dirac_multiplicity is not None
        else problem.options.dirac_multiplicity
    )
    report = enumerate_reductions(
        problem.manifold, problem.bundle, problem.spinc, bounds, kmax, mult
    )
    notes = _problem_warnings(problem) + [w for w in report.warnings if w not in problem.manifold.warnings]
    result = {
        "candidates": [
            {
                "rank": c.F.rank,
                "c1": list(c.F.c1.coeffs),
                "c2": c.F.c2,
                "complement_rank": c.Fperp.rank,
                "complement_c1": list(c.Fperp.c1.coeffs),
                "complement_c2": c.Fperp.c2,
                "tau": c.tau,
                "dim_un_part": c.dim_un_part,
                "dim_asd_part": c.dim_asd_part,
                "total_dim": c.total_dim,
                "stratum_k": c.stratum_k,
                "c1_norm": c.c1_norm,
            }
            for c in report.candidates
        ],
        "count": len(report.candidates),
        "pruned_inconsistent": report.pruned_inconsistent,
        "lattice_points": report.lattice_points,
    }
    _emit(_envelope(argv, result, notes, problem.raw), args, start_time)
    return EXIT_OK


def _run_strata(args, argv, start_time) -> int:
    problem = load_problem(args.input)
    kmax = args.kmax if args.kmax is not None else problem.options.kmax
    mult = (
        args.dirac_multiplicity
        if args.dirac_multiplicity is not None
        else problem.options.dirac_multiplicity
    )
    rows = uhlenbeck_strata(problem.bundle, problem.manifold, problem.spinc, kmax, mult)
    result = {
        "strata": [
            {
                "k": r.k,
                "c1": list(r.bundle.c1.coeffs),
                "c2": r.bundle.c2,
                "expected_dim": r.expected_dim,
                "instanton_part": r.instanton_part,
                "dirac_index": r.dirac_index,
            }
            for r in rows
        ]
    }
    _emit(_envelope(argv, result, _problem_warnings(problem), problem.raw), args, start_time)
    return EXIT_OK


def _run_mu(args, argv, start_time) -> int:
    if args.mu_kind == "properness":
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = properness_constant_estimate(
                args.n, args.tau, starts=args.starts, seed=args.seed, tol=args.tol
            )
        result = report.as_dict()
        result["n"] = args.n
        result["tau"] = args.tau
        _emit(_envelope(argv, result, [str(w.message) for w in caught]), args, start_time)
        return EXIT_OK
    report = mu_suite(suite=args.suite, samples=args.samples, seed=args.seed)
    result = {
        "suite": report.suite,
        "seed": report.seed,
        "all_passed": report.all_passed,
        "checks": [c for c in report.checks],
    }
    _emit(_envelope(argv, result, []), args, start_time)
    return EXIT_OK if report.all_passed else EXIT_PROPERTY_FAILURE


def _run_kaehler(args, argv, start_time) -> int:
    if args.ka_kind == "margin":
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = impossibility_margin(
                args.n, args.tau, args.lam, starts=args.starts, seed=args.seed
            )
        result = report.as_dict()
        result["n"] = args.n
        result["tau"] = args.tau
        result["lambda"] = args.lam
        result["closed_form"] = impossibility_margin_closed_form(args.n, args.tau, args.lam)
        _emit(_envelope(argv, result, [str(w.message) for w in caught]), args, start_time)
        return EXIT_OK
    report = kaehler_suite(suite=args.suite, samples=args.samples, seed=args.seed)
    result = {
        "suite": report.suite,
        "seed": report.seed,
        "all_passed": report.all_passed,
        "checks": [c for c in report.checks],
    }
    _emit(_envelope(argv, result, []), args, start_time)
    return EXIT_OK if report.all_passed else EXIT_PROPERTY_FAILURE


def _run_tau0(args, argv, start_time) -> int:
    problem = load_problem(args.input)
    verdict = generic_tau0_vanishing(problem.manifold)
    result = {
        "vanishes_generically": verdict.vanishes_generically,
        "cokernel_dimension": verdict.cokernel_dimension,
    }
    _emit(_envelope(argv, result, _problem_warnings(problem), problem.raw), args, start_time)
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    os.environ.get("MONOPOLES_THREADS")  # accepted; results never depend on it
    parser = _build_parser()
    args = parser.parse_args(argv)
    start_time = time.monotonic()
    try:
        if args.command == "dim":
            return _run_dim(args, argv, start_time)
        if args.command == "reductions":
            return _run_reductions(args, argv, start_time)
        if args.command == "strata":
            return _run_strata(args, argv, start_time)
        if args.command == "mu":
            return _run_mu(args, argv, start_time)
        if args.command == "kaehler":
            return _run_kaehler(args, argv, start_time)
        if args.command == "tau0":
            return _run_tau0(args, argv, start_time)
        if args.command == "schema":
            print(_render(problem_schema(), args.format))
            return EXIT_OK
        raise AssertionError(f"unhandled command {args.command}")
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
