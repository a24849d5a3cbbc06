"""CLI entry point.

Exit codes: 0 ok, 1 a false verdict or a failed construction, 2 usage or
configuration errors, 3 budget exceeded, 4 rejected instance.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from ... import __version__
from ...application.budget import ComputationBudget, Stopwatch
from ...application.campaign import expand, parse_entries, run_campaign
from ...application.points_service import (
    PointConstraints,
    genericity_report,
    groebner_hilbert_function,
    hilbert_data,
    named_point_set,
    point_ideal,
    random_points,
)
from ...application.rees_service import case_data, generic_minors_ideal, rees_via_elimination, theorem_generators
from ...application.resolution_service import (
    hilbert_burch_check,
    hilbert_series,
    is_perfect,
    minimal_generators,
    presentation_matrix,
    resolve,
    signed_maximal_minors,
)
from ...application.verification import failed_report, verify_theorem
from ...domain.configuration import RunConfig, with_cli_overrides
from ...domain.errors import ConfigurationError, ErrorCode, InstanceRejectedError, ReesError
from ...domain.ideals import Ideal
from ...domain.points import Decomposition, PointSet
from ...domain.rees import Splitting
from ...domain.report import Status
from ...domain.resolution import PerfectionMethod
from ...domain.rings import MonomialOrder, Polynomial, RingContext
from ...domain.scalars import Field
from ...infrastructure.point_files import dump_point_set, load_point_set
from ...infrastructure.polynomial_text import format_many, format_polynomial, parse_polynomial
from ...infrastructure.report_writer import write_report
from ...shared.logging import configure_logging, get_logger, log_event

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_REJECTED = 4

_USAGE_CODES = frozenset({ErrorCode.INVALID_CONFIG, ErrorCode.PARSE, ErrorCode.INVALID_POINTS})
_BUDGET_CODES = frozenset({ErrorCode.BUDGET, ErrorCode.DEGREE_BOUND})
_REJECTED_CODES = frozenset(
    {
        ErrorCode.REJECTED_INSTANCE,
        ErrorCode.RETRY_EXHAUSTED,
        ErrorCode.FIELD_TOO_SMALL,
        ErrorCode.NOT_POINT_IDEAL,
    }
)


def exit_code_for(error: ReesError) -> int:
    if error.code in _USAGE_CODES:
        return EXIT_USAGE
    if error.code in _BUDGET_CODES:
        return EXIT_BUDGET
    if error.code in _REJECTED_CODES:
        return EXIT_REJECTED
    return EXIT_FAILED


def load_config(path: Optional[Path]) -> RunConfig:
    if not path:
        return RunConfig()
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(ErrorCode.INVALID_CONFIG, f"cannot load configuration {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError(ErrorCode.INVALID_CONFIG, "configuration must be a JSON object")
    return RunConfig.from_dict(data)


# -- parser ------------------------------------------------------------------

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    instance = common.add_argument_group("instance")
    instance.add_argument("--s", type=int, help="Number of points (random instances)")
    instance.add_argument("--t", type=int, help="Degree of the linear system I_t (default d+1)")
    instance.add_argument("--field", help="Ground field: Q or F_p")
    instance.add_argument("--prime", type=int, help="Prime modulus, same as --field F_p")
    instance.add_argument("--seed", type=int, help="Seed for random point sets")
    instance.add_argument("--points", help="Named point set (coordinate-triangle, frame-4, collinear-4)")
    instance.add_argument("--points-file", type=Path, help="Point file: header Q or 'F p', then a,b,c lines")
    instance.add_argument("--retry-budget", type=int, help="Resampling attempts for random point sets")

    compute = common.add_argument_group("computation")
    compute.add_argument("--order", choices=["grevlex", "lex"], help="Monomial order for printed generators")
    compute.add_argument("--budget", help="Wall-clock budget, e.g. 500ms, 30s, 5m")
    compute.add_argument("--max-steps", type=int, help="Step budget")
    compute.add_argument("--degree-bound", type=int, help="Degree cap for resolutions")
    compute.add_argument("--perfection", choices=[m.value for m in PerfectionMethod], help="Perfection check method")
    compute.add_argument("--splitting", choices=[s.value for s in Splitting], help="Quadric coefficient splitting")
    compute.add_argument("--no-splitting-check", action="store_true", help="Skip the alternative splitting comparison")
    compute.add_argument("--skip-betti", action="store_true", help="Skip the Betti table comparison")
    compute.add_argument("--no-linear-slice", action="store_true", help="Skip the x-linear slice comparison")

    output = common.add_argument_group("output")
    output.add_argument("--config", type=Path, help="Configuration JSON file")
    output.add_argument("--format", dest="output_format", choices=["json", "text"], help="Report format")
    output.add_argument("--output", dest="output_path", type=Path, help="Write the report to a file")
    output.add_argument("--timings", action="store_true", help="Include stage timings (not reproducible)")
    output.add_argument("--log-level", default="WARNING", help="Log level for stderr diagnostics")
    output.add_argument("--plain-logs", action="store_true", help="Plain text logs instead of JSON lines")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="rees-toolkit",
        description="Exact Rees-algebra computations for blow-ups of the plane at points",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  rees-toolkit rees verify --points coordinate-triangle --t 3
  rees-toolkit rees verify --s 7 --seed 11 --prime 32003
  rees-toolkit points gen --s 5 --seed 2 --save five.pts
  rees-toolkit resolve --ideal generic-minors --rows 3 --cols 4
  rees-toolkit campaign --entry 3:3:0-2 --entry 4:3:0-2 --jobs 4
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="group", required=True)

    points = commands.add_parser("points", help="Point sets")
    points_sub = points.add_subparsers(dest="action", required=True)
    gen = points_sub.add_parser("gen", parents=[common], help="Generate or load a point set")
    gen.add_argument("--save", type=Path, help="Also write the point set to this file")
    gen.set_defaults(handler=cmd_points_gen, command="points gen")

    for name, handler, text in (
        ("ideal", cmd_ideal, "Minimal generators of the point ideal"),
        ("hilbert", cmd_hilbert, "Hilbert function, alpha and sigma"),
        ("presentation", cmd_presentation, "Hilbert-Burch matrix of the point ideal"),
    ):
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.set_defaults(handler=handler, command=name)

    rees = commands.add_parser("rees", help="Rees ideals of I_t")
    rees_sub = rees.add_subparsers(dest="action", required=True)
    for name, handler, text in (
        ("eliminate", cmd_rees_eliminate, "Rees ideal by elimination"),
        ("theorem", cmd_rees_theorem, "Predicted generators at t = d+1"),
        ("verify", cmd_rees_verify, "Compare predictions with elimination"),
    ):
        sub = rees_sub.add_parser(name, parents=[common], help=text)
        sub.set_defaults(handler=handler, command=f"rees {name}")

    res = commands.add_parser("resolve", parents=[common], help="Betti table of an ideal")
    res.add_argument("--ideal", choices=["points", "rees", "generic-minors"], default="rees")
    res.add_argument("--rows", type=int, default=3, help="Rows of the generic matrix")
    res.add_argument("--cols", type=int, help="Columns of the generic matrix (default d+2)")
    res.add_argument("--generators", type=Path, help="File with one polynomial per line")
    res.add_argument("--vars", help="Comma-separated variables for --generators")
    res.set_defaults(handler=cmd_resolve, command="resolve")

    camp = commands.add_parser("campaign", parents=[common], help="Verify many random instances")
    camp.add_argument("--entry", action="append", dest="campaign", help="s:t:seedA-seedB (repeatable)")
    camp.add_argument("--jobs", type=int, help="Worker processes")
    camp.add_argument("--no-progress", action="store_true", help="Hide the progress bar")
    camp.set_defaults(handler=cmd_campaign, command="campaign")
    return parser


def apply_cli(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    overrides: Dict[str, object] = {
        "command": args.command,
        "s": args.s,
        "t": args.t,
        "field": args.field,
        "prime": args.prime,
        "seed": args.seed,
        "points": args.points,
        "points_file": args.points_file,
        "retry_budget": args.retry_budget,
        "order": args.order,
        "budget": args.budget,
        "max_steps": args.max_steps,
        "degree_bound": args.degree_bound,
        "perfection": args.perfection,
        "splitting": args.splitting,
        "check_splitting": False if args.no_splitting_check else None,
        "compare_betti": False if args.skip_betti else None,
        "check_linear_slice": False if args.no_linear_slice else None,
        "output_format": args.output_format,
        "output_path": args.output_path,
        "timings": True if args.timings else None,
        "jobs": getattr(args, "jobs", None),
        "campaign": getattr(args, "campaign", None),
    }
    return with_cli_overrides(config, overrides).validate()


# -- shared helpers ----------------------------------------------------------

def _budget(config: RunConfig) -> ComputationBudget:
    return ComputationBudget(config.budget.max_steps, config.budget.max_ms)


def load_instance(config: RunConfig, budget: Optional[ComputationBudget] = None) -> PointSet:
    field = config.field_spec.build()
    if config.points is not None or config.points_file is not None:
        points = (
            named_point_set(config.points, field)
            if config.points is not None
            else load_point_set(config.points_file)  # type: ignore[arg-type]
        )
        if config.s is not None and config.s != points.s:
            raise ConfigurationError(
                ErrorCode.INVALID_CONFIG,
                f"--s {config.s} disagrees with the {points.s} given points",
            )
        return points
    if config.s is None:
        raise ConfigurationError(ErrorCode.INVALID_CONFIG, "give --s with --seed, --points or --points-file")
    assert config.seed is not None
    return random_points(config.s, config.seed, field, PointConstraints(), config.retry_budget, budget)


def _order(config: RunConfig) -> MonomialOrder:
    return MonomialOrder.parse(config.order)


def _degree(config: RunConfig, points: PointSet) -> int:
    if config.t is not None:
        return config.t
    return Decomposition.of(points.s).d + 1


def _header(config: RunConfig, points: Optional[PointSet] = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {"command": config.command, "config": config.to_dict()}
    if points is not None:
        out["instance"] = points.describe()
    return out


def _emit(config: RunConfig, payload: Dict[str, Any]) -> None:
    text = write_report(payload, config.output_format, config.output_path)
    if config.output_path is None:
        sys.stdout.write(text)


def _labelled(gens: Iterable[Tuple[int, Polynomial]], field: Field, order: MonomialOrder) -> List[Dict[str, Any]]:
    return [{"degree": deg, "generator": format_polynomial(poly, field, order)} for deg, poly in gens]


# -- commands ----------------------------------------------------------------

def cmd_points_gen(config: RunConfig, args: argparse.Namespace) -> int:
    budget = _budget(config)
    points = load_instance(config, budget)
    data = hilbert_data(points, budget)
    payload = _header(config, points)
    payload["genericity"] = genericity_report(points, data).to_dict()
    payload["hilbert"] = {"alpha": data.alpha, "sigma": data.sigma, "hf_prefix": list(data.values)}
    if args.save is not None:
        payload["saved_to"] = str(dump_point_set(points, args.save))
    _emit(config, payload)
    return EXIT_OK


def cmd_ideal(config: RunConfig, args: argparse.Namespace) -> int:
    budget = _budget(config)
    points = load_instance(config, budget)
    ideal = point_ideal(points, budget=budget)
    payload = _header(config, points)
    payload["generators"] = _labelled(minimal_generators(ideal, budget=budget), points.field, _order(config))
    _emit(config, payload)
    return EXIT_OK


def cmd_hilbert(config: RunConfig, args: argparse.Namespace) -> int:
    budget = _budget(config)
    points = load_instance(config, budget)
    data = hilbert_data(points, budget)
    upto = config.t if config.t is not None else data.sigma + 1
    ideal = point_ideal(points, data, budget)
    payload = _header(config, points)
    payload["hilbert"] = {
        "alpha": data.alpha,
        "sigma": data.sigma,
        "hf": data.prefix(upto + 1),
        "groebner_hf": [groebner_hilbert_function(points, t, ideal, budget) for t in range(upto + 1)],
    }
    _emit(config, payload)
    return EXIT_OK


def cmd_presentation(config: RunConfig, args: argparse.Namespace) -> int:
    budget = _budget(config)
    points = load_instance(config, budget)
    ideal = point_ideal(points, budget=budget)
    L = presentation_matrix(ideal, config.resolution.degree_bound, budget)
    plane = RingContext.plane(points.field)
    payload = _header(config, points)
    payload["presentation"] = {
        "shape": list(L.shape),
        "row_degrees": list(L.row_degrees),
        "col_degrees": list(L.col_degrees),
        "rows": [format_many(row, points.field, _order(config)) for row in L.entries],
        "signed_minors": format_many(signed_maximal_minors(L, plane), points.field, _order(config)),
        "hilbert_burch": hilbert_burch_check(ideal, L, budget),
    }
    _emit(config, payload)
    return EXIT_OK


def cmd_rees_eliminate(config: RunConfig, args: argparse.Namespace) -> int:
    budget = _budget(config)
    points = load_instance(config, budget)
    t = _degree(config, points)
    case = None
    if t == Decomposition.of(points.s).d + 1:
        try:
            case = case_data(points, budget=budget)
        except InstanceRejectedError as exc:
            log_event(logger, "rees.flat_coordinates", reason=exc.message)
    rees = rees_via_elimination(points, t, case, budget)
    payload = _header(config, points)
    payload["t"] = t
    payload["variables"] = list(rees.ctx.names)
    payload["generators"] = format_many(rees.gens, points.field, _order(config))
    _emit(config, payload)
    return EXIT_OK


def cmd_rees_theorem(config: RunConfig, args: argparse.Namespace) -> int:
    budget = _budget(config)
    points = load_instance(config, budget)
    d = Decomposition.of(points.s).d
    if _degree(config, points) != d + 1:
        raise ConfigurationError(ErrorCode.INVALID_CONFIG, f"predicted generators exist for t = d+1 = {d + 1} only")
    case = case_data(points, budget=budget)
    gens = theorem_generators(case, config.verification.splitting, budget)
    payload = _header(config, points)
    payload["t"] = case.t
    payload["case"] = case.tag.value
    payload["variables"] = list(case.ctx.names)
    payload["generator_counts"] = gens.counts()
    payload["generators"] = [
        {"origin": item.origin.value, "generator": format_polynomial(item.poly, points.field, _order(config))}
        for item in gens.items
    ]
    _emit(config, payload)
    return EXIT_OK


def cmd_rees_verify(config: RunConfig, args: argparse.Namespace) -> int:
    budget = _budget(config)
    try:
        points = load_instance(config, budget)
    except ReesError as exc:
        if not config.random_instance or exc.code in _USAGE_CODES or config.s is None:
            raise
        # sampling ran out of budget or retries: still report the instance
        t = config.t if config.t is not None else Decomposition.of(config.s).d + 1
        instance = {"field": config.field_spec.build().label, "provenance": "random", "seed": config.seed, "s": config.s}
        _emit(config, failed_report(t, config.s, exc, instance, config.to_dict()).to_dict())
        return exit_code_for(exc)
    stopwatch = Stopwatch() if config.timings else None
    report = verify_theorem(
        points,
        _degree(config, points),
        config.verification,
        config.resolution,
        budget,
        stopwatch,
        config.to_dict(),
    )
    _emit(config, report.to_dict())
    if report.status is Status.BUDGET:
        return EXIT_BUDGET
    if report.status is Status.REJECTED:
        return EXIT_REJECTED
    return EXIT_OK if report.passed else EXIT_FAILED


def _read_generators(path: Path, names: Optional[str], field: Field) -> Ideal:
    if not names:
        raise ConfigurationError(ErrorCode.INVALID_CONFIG, "--generators needs --vars")
    ctx = RingContext.from_names([n.strip() for n in names.split(",") if n.strip()], field)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ReesError(ErrorCode.PARSE, f"cannot read {path}: {exc.strerror}") from exc
    polys = [parse_polynomial(ctx, line) for line in lines if line.strip() and not line.lstrip().startswith("#")]
    return Ideal.of(ctx, polys)


def cmd_resolve(config: RunConfig, args: argparse.Namespace) -> int:
    budget = _budget(config)
    payload = _header(config)
    if args.generators is not None:
        ideal = _read_generators(args.generators, args.vars, config.field_spec.build())
    elif args.ideal == "generic-minors":
        cols = args.cols
        if cols is None:
            if config.s is None:
                raise ConfigurationError(ErrorCode.INVALID_CONFIG, "give --cols or --s")
            cols = Decomposition.of(config.s).d + 2
        ideal = generic_minors_ideal(args.rows, cols, config.field_spec.build())
    else:
        points = load_instance(config, budget)
        payload["instance"] = points.describe()
        if args.ideal == "points":
            ideal = point_ideal(points, budget=budget)
        else:
            ideal = rees_via_elimination(points, _degree(config, points), budget=budget)
    resolution = resolve(ideal, config.resolution.degree_bound, budget)
    series = hilbert_series(ideal, budget)
    verdict = is_perfect(
        ideal,
        method=config.resolution.perfection,
        seed=config.resolution.reduction_seed,
        variable_limit=config.resolution.betti_variable_limit,
        degree_bound=config.resolution.degree_bound,
        budget=budget,
    )
    payload["variables"] = list(ideal.ctx.names)
    payload["betti"] = resolution.table.to_dict()
    payload["projective_dimension"] = resolution.table.projective_dimension
    payload["linear_forms"] = resolution.linear_forms
    payload["hilbert_series"] = series.to_dict()
    payload["perfection"] = verdict.to_dict()
    if config.output_format == "text":
        payload["betti_grid"] = str(resolution.table)
    _emit(config, payload)
    return EXIT_OK


def cmd_campaign(config: RunConfig, args: argparse.Namespace) -> int:
    if config.field_spec.prime is None:
        raise ConfigurationError(ErrorCode.INVALID_CONFIG, "campaigns sample points over a prime field")
    entries = parse_entries(config.campaign)
    tasks = expand(
        entries,
        prime=config.field_spec.prime,
        retry_budget=config.retry_budget,
        budget=config.budget,
        resolution=config.resolution,
        verification=config.verification,
        timings=config.timings,
    )
    summary = run_campaign(tasks, jobs=config.jobs, progress=not args.no_progress)
    payload = _header(config)
    payload.update(summary.to_dict())
    _emit(config, payload)
    return EXIT_FAILED if summary.counts()["failed"] else EXIT_OK


# -- entry point -------------------------------------------------------------

def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE

    configure_logging(args.log_level, json_mode=not args.plain_logs)
    handler: Callable[[RunConfig, argparse.Namespace], int] = args.handler
    try:
        config = apply_cli(load_config(args.config), args)
        return handler(config, args)
    except ReesError as exc:
        log_event(logger, "cli.error", code=exc.code.value, message=exc.message)
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    raise SystemExit(main())
