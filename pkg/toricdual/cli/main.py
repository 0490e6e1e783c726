"""
The ``toricdual`` command.

Subcommands: ``dual``, ``analyze``, ``check-pair``, ``verify-cert`` and
``table``. Reports go to stdout; the log goes to a single stderr sink. The
exit status carries the outcome: 0 success, 1 a requested check failed,
2 malformed input, 3 a non-reflexive polytope where one is required,
4 a nontrivial toric contribution.
"""

import argparse
import sys
from functools import partial
from typing import Any, Callable, Dict, List, Optional, Sequence

import sympy
from loguru import logger as log

from toricdual.duality import (
    CouplingPair,
    DualityVerdict,
    PicardReport,
    analyze_family,
    build_polytope,
    builtin_pairs,
    check_pair,
    load_pair,
    load_polytope,
    select_builtin,
)
from toricdual.duality.parameters import PolytopeSpec, Side
from toricdual.polytope import (
    is_reflexive,
    lattice_points,
    polar_dual,
    toric_contribution,
)
from toricdual.utils.exceptions import (
    NotReflexive,
    OriginNotInterior,
    ParseError,
    ToricDualError,
)
from toricdual.utils.misc import digest, parallel_map

from .parameters import RuntimeParameters, read_config
from .report import (
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_NOT_REFLEXIVE,
    EXIT_OK,
    EXIT_TORIC_CONTRIBUTION,
    ReportEnvelope,
    render_certificates,
    render_dual,
    render_picard,
    render_table,
    render_verdict,
)


def _coordinates(point: Sequence) -> List:
    """Integers stay integers, fractions become strings such as ``"1/2"``."""
    values = [sympy.Rational(x) for x in point]
    return [int(x) if x.q == 1 else str(x) for x in values]


def picard_payload(report: PicardReport) -> Dict[str, Any]:
    payload = report.model_dump(mode="json")
    payload["name"] = report.name
    return payload


def verdict_payload(verdict: DualityVerdict) -> Dict[str, Any]:
    payload = verdict.model_dump(mode="json")
    payload["passed"] = verdict.passed
    payload["flags"] = verdict.flags
    for side in ("pic_delta", "pic_delta_prime"):
        report = getattr(verdict, side)
        if report is not None:
            payload[side] = picard_payload(report)
    return payload


def _pairs(args, params: RuntimeParameters) -> List[CouplingPair]:
    if getattr(args, "all", False):
        return builtin_pairs(params.data_path)
    if args.builtin is not None:
        return select_builtin(args.builtin, params.data_path)
    if args.input is None:
        raise ParseError("Give a pair file, --builtin ID or --all")
    return [load_pair(args.input)]


def _check_all(pairs: List[CouplingPair], params: RuntimeParameters) -> List:
    check = partial(
        check_pair, search_bound=params.search_bound, max_support=params.max_support
    )
    # results come back in input order for both backends
    return parallel_map(
        check,
        pairs,
        backend=params.backend,
        number_of_workers=params.number_of_workers,
        progress=len(pairs) > 1 and params.log_level in ("DEBUG", "INFO"),
    )


def cmd_dual(args, params: RuntimeParameters) -> ReportEnvelope:
    spec = load_polytope(args.input)
    polytope = build_polytope(spec)
    reflexive = is_reflexive(polytope)
    results: Dict[str, Any] = {
        "vertices": [_coordinates(v) for v in polytope.vertices],
        "reflexive": reflexive,
        "lattice_points": len(lattice_points(polytope)),
        "dual_vertices": None,
        "l0": None,
    }
    warnings = []
    try:
        dual = polar_dual(polytope)
        results["dual_vertices"] = [_coordinates(v) for v in dual.vertices]
    except OriginNotInterior as e:
        warnings.append(str(e))
    if reflexive:
        results["l0"] = toric_contribution(polytope)
    status = EXIT_OK
    if not reflexive and params.require_reflexive:
        warnings.append("polytope is not reflexive")
        status = EXIT_NOT_REFLEXIVE
    return ReportEnvelope(
        command="dual",
        inputs=digest(spec.model_dump(mode="json")),
        results=results,
        warnings=warnings,
        exit_status=status,
    )


def _analyze_spec(args, params: RuntimeParameters) -> PolytopeSpec:
    if args.builtin is not None:
        pair = select_builtin(args.builtin, params.data_path)[0]
        return pair.side(Side(args.side))
    if args.input is None:
        raise ParseError("Give a polytope file or --builtin ID")
    return load_polytope(args.input)


def cmd_analyze(args, params: RuntimeParameters) -> ReportEnvelope:
    spec = _analyze_spec(args, params)
    polytope = build_polytope(spec)
    report = analyze_family(polytope, params.search_bound, params.max_support)
    warnings, status = [], EXIT_OK
    if not report.computed:
        warnings.append(f"toric contribution L0 = {report.l0}; only L0 is reported")
        status = EXIT_TORIC_CONTRIBUTION
    return ReportEnvelope(
        command="analyze",
        inputs=digest(spec.model_dump(mode="json")),
        results={"picard": picard_payload(report)},
        warnings=warnings,
        exit_status=status,
    )


def cmd_check_pair(args, params: RuntimeParameters) -> ReportEnvelope:
    pairs = _pairs(args, params)
    verdicts = _check_all(pairs, params)
    payloads = [verdict_payload(v) for v in verdicts]
    warnings = [f"{v.id}: {w}" for v in verdicts for w in v.warnings]
    passed = all(v.passed for v in verdicts)
    return ReportEnvelope(
        command="check-pair",
        inputs=digest([p.model_dump(mode="json") for p in pairs]),
        results={
            "verdicts": payloads,
            "passed": sum(v.passed for v in verdicts),
            "total": len(verdicts),
        },
        warnings=warnings,
        exit_status=EXIT_OK if passed else EXIT_CHECK_FAILED,
    )


def cmd_verify_cert(args, params: RuntimeParameters) -> ReportEnvelope:
    pairs = _pairs(args, params)
    warnings = []
    with_certificates = []
    for pair in pairs:
        if pair.certificates:
            with_certificates.append(pair)
        else:
            warnings.append(f"{pair.id}: no certificates")
    verdicts = _check_all(with_certificates, params)
    certificates = {
        v.id: [c.model_dump(mode="json") for c in v.certificates] for v in verdicts
    }
    failed = any(not c.passed for v in verdicts for c in v.certificates)
    return ReportEnvelope(
        command="verify-cert",
        inputs=digest([p.model_dump(mode="json") for p in pairs]),
        results={"certificates": certificates},
        warnings=warnings,
        exit_status=EXIT_CHECK_FAILED if failed else EXIT_OK,
    )


def _table_row(pair: CouplingPair, verdict: DualityVerdict) -> Dict[str, Any]:
    row: Dict[str, Any] = {"id": pair.id, "numbers": pair.numbers, "case": pair.case}
    for side in ("delta", "delta_prime"):
        report = getattr(verdict, f"pic_{side}")
        if report is None:
            row[f"pic_{side}"] = "?"
            row[f"invariants_{side}"] = "?"
            row[f"rank_{side}"] = None
            row[f"abs_discriminant_{side}"] = None
            continue
        row[f"pic_{side}"] = report.name
        row[f"invariants_{side}"] = f"({report.rho},{report.abs_discriminant})"
        row[f"rank_{side}"] = report.rho
        row[f"abs_discriminant_{side}"] = report.abs_discriminant
    row["lattice_duality_ok"] = verdict.lattice_duality_ok
    return row


def cmd_table(args, params: RuntimeParameters) -> ReportEnvelope:
    pairs = builtin_pairs(params.data_path)
    verdicts = _check_all(pairs, params)
    rows = [_table_row(p, v) for p, v in zip(pairs, verdicts)]
    ok = all(v.lattice_duality_ok for v in verdicts)
    return ReportEnvelope(
        command="table",
        inputs=digest([p.model_dump(mode="json") for p in pairs]),
        results={"rows": rows},
        exit_status=EXIT_OK if ok else EXIT_CHECK_FAILED,
    )


def render(envelope: ReportEnvelope) -> str:
    results = envelope.results
    if envelope.command == "dual":
        text = render_dual(results)
    elif envelope.command == "analyze":
        text = render_picard(results["picard"])
    elif envelope.command == "check-pair":
        text = "\n".join(render_verdict(v) for v in results["verdicts"])
        if results["total"] > 1:
            text += f"\n{results['passed']}/{results['total']} pairs pass"
    elif envelope.command == "verify-cert":
        parts = []
        for pair_id, certificates in results["certificates"].items():
            parts.append(f"pair {pair_id}:")
            parts.append(render_certificates(certificates))
        text = "\n".join(parts)
    elif envelope.command == "table":
        text = render_table(results["rows"])
    else:
        text = envelope.to_json()
    for w in envelope.warnings:
        text += f"\nwarning: {w}"
    return text


COMMANDS: Dict[str, Callable[..., ReportEnvelope]] = {
    "dual": cmd_dual,
    "analyze": cmd_analyze,
    "check-pair": cmd_check_pair,
    "verify-cert": cmd_verify_cert,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the JSON report")
    common.add_argument(
        "--config", type=str, help="Path to the runtime TOML config file"
    )
    common.add_argument(
        "--require-reflexive",
        action="store_true",
        default=None,
        help="Exit with status 3 on non-reflexive input",
    )
    common.add_argument(
        "--search-bound", type=int, help="Coefficient bound for splitting off U"
    )
    common.add_argument(
        "--max-support", type=int, help="Nonzero coefficients tried for splitting off U"
    )
    common.add_argument("--backend", type=str, help="serial or ray")
    common.add_argument("--workers", type=int, help="Number of ray workers")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Log details")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Log errors only")

    parser = argparse.ArgumentParser(
        prog="toricdual",
        description="Lattice duality of K3 families from coupling pairs of polytopes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    dual = sub.add_parser("dual", parents=[common], help="Polar dual of a polytope")
    dual.add_argument("input", type=str, help="Polytope JSON file")

    analyze = sub.add_parser(
        "analyze", parents=[common], help="Picard lattice of a family"
    )
    analyze.add_argument("input", type=str, nargs="?", help="Polytope JSON file")
    analyze.add_argument("--builtin", type=str, help="Built-in pair id or number")
    analyze.add_argument(
        "--side",
        type=str,
        default="delta",
        choices=[s.value for s in Side],
        help="Side of the built-in pair",
    )

    for name, text in (
        ("check-pair", "Check the lattice duality of a coupling pair"),
        ("verify-cert", "Verify the basis certificates of a coupling pair"),
    ):
        command = sub.add_parser(name, parents=[common], help=text)
        command.add_argument("input", type=str, nargs="?", help="Pair JSON file")
        source = command.add_mutually_exclusive_group()
        source.add_argument("--builtin", type=str, help="Built-in pair id or number")
        source.add_argument("--all", action="store_true", help="Every built-in pair")

    sub.add_parser("table", parents=[common], help="Recompute the table of pairs")
    return parser


def _configure_logging(level: str) -> None:
    log.remove()
    log.add(sys.stderr, level=level)


def run(
    argv: Optional[Sequence[str]] = None, args: Optional[argparse.Namespace] = None
) -> ReportEnvelope:
    """Run the command given by ``args``, parsing ``argv`` when none is given."""
    if args is None:
        args = build_parser().parse_args(argv)
    log_level = "DEBUG" if args.verbose else "ERROR" if args.quiet else None
    try:
        params = read_config(
            args.config,
            search_bound=args.search_bound,
            max_support=args.max_support,
            backend=args.backend,
            number_of_workers=args.workers,
            log_level=log_level,
            require_reflexive=args.require_reflexive,
        )
    except (OSError, ValueError) as e:
        return ReportEnvelope(
            command=args.command,
            inputs="",
            warnings=[f"invalid configuration: {e}"],
            exit_status=EXIT_INPUT_ERROR,
        )
    _configure_logging(params.log_level)

    inputs = digest(vars(args))
    try:
        return COMMANDS[args.command](args, params)
    except NotReflexive as e:
        status, message = EXIT_NOT_REFLEXIVE, str(e)
    except (ToricDualError, KeyError) as e:
        status, message = EXIT_INPUT_ERROR, str(e)
    log.error(message)
    return ReportEnvelope(
        command=args.command, inputs=inputs, warnings=[message], exit_status=status
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    envelope = run(args=args)
    print(envelope.to_json() if args.json else render(envelope))
    return envelope.exit_status


if __name__ == "__main__":
    sys.exit(main())
