import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from decouple import config as env
from pydantic import ValidationError

from .backend import SectionTableBackend
from .config.settings import GridSpec, QuadratureConfig, SamplingConfig, VerifyConfig
from .config.storage import RedisConfig, StorageConfig
from .config.storage_type import StorageTypes
from .errors import InvalidParameterError, UsageError, WicksellError
from .evt.tail_index import TailIndexEstimate, local_tail_exponent, reciprocal_hill
from .laws.factory import add_law_arguments, law_spec_from_args, make_law
from .simulate.boolean3d import simulate_planar_section_3d
from .simulate.io import load_sample, save_sample
from .simulate.sampler import SampleMode, sample_section_radii
from .transform.io import load_section_law, save_section_law
from .transform.moments import moment
from .verify.report import ReportFormat, load_report, render_report
from .verify.scenarios import run_all, run_corollary_check, run_theorem1_matrix, run_theorem2_check

logger = logging.getLogger("wicksell_tails")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
SCENARIOS = ["theorem1", "theorem2", "corollary", "all"]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wicksell", description="Wicksell section transforms and lower-tail diagnostics.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    transform = commands.add_parser("transform", help="tabulate F^(r) of a radius law")
    add_law_arguments(transform)
    transform.add_argument("--r", type=int, required=True)
    transform.add_argument("--grid-min", type=float)
    transform.add_argument("--points", type=int)
    transform.add_argument("--out", type=Path, required=True)

    simulate = commands.add_parser("simulate", help="draw section radii by Monte Carlo")
    add_law_arguments(simulate)
    simulate.add_argument("--r", type=int, required=True)
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--seed", type=int, required=True)
    simulate.add_argument("--mode", choices=SampleMode.values(), default=SampleMode.ANALYTIC.value)
    simulate.add_argument("--window-area", type=float, default=1.0)
    simulate.add_argument("--half-thickness", type=float)
    simulate.add_argument("--workers", type=int)
    simulate.add_argument("--out", type=Path, required=True)

    tail = commands.add_parser("tail-index", help="estimate the lower-tail exponent")
    source = tail.add_mutually_exclusive_group(required=True)
    source.add_argument("--table", type=Path)
    source.add_argument("--samples", type=Path)
    tail.add_argument("--eta", type=float, required=True)
    tail.add_argument("--k", type=int)
    tail.add_argument("--json", action="store_true")

    verify = commands.add_parser("verify", help="run the domain-of-attraction scenarios")
    verify.add_argument("--scenario", choices=SCENARIOS, required=True)
    verify.add_argument("--alphas", type=_float_list)
    verify.add_argument("--etas", type=_float_list)
    verify.add_argument("--r-list", type=_int_list)
    verify.add_argument("--seed", type=int, required=True)
    verify.add_argument("--workers", type=int)
    verify.add_argument("--storage", choices=StorageTypes.values(), default=StorageTypes.MEMORY.value)
    verify.add_argument("--out", type=Path, required=True)

    report = commands.add_parser("report", help="render a verification report")
    report.add_argument("--in", dest="source", type=Path, required=True)
    report.add_argument("--format", choices=ReportFormat.values(), default=ReportFormat.JSON.value)
    return parser


def configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, str(env("WICKSELL_LOG_LEVEL", default="WARNING")).upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _transform(args: argparse.Namespace) -> int:
    law = make_law(law_spec_from_args(args))
    grid_fields = {"grid_min": args.grid_min, "points": args.points}
    grid = GridSpec(**{k: v for k, v in grid_fields.items() if v is not None})
    table = SectionTableBackend(grid=grid).tabulate(law, args.r)
    save_section_law(table, args.out)
    print(f"{table.source}: {table.grid.size} knots, M_{table.r}={table.moment:.10g} -> {args.out}")
    return EXIT_OK


def _simulate(args: argparse.Namespace) -> int:
    law = make_law(law_spec_from_args(args))
    sampling = SamplingConfig(**({"workers": args.workers} if args.workers else {}))
    if args.mode == SampleMode.GEOMETRIC3D.value:
        if args.r != 1:
            raise UsageError("geometric3d sections balls by a plane and needs --r 1")
        half_thickness = args.half_thickness or law.upper_support
        if half_thickness is None:
            raise UsageError("--half-thickness is required for unbounded radius laws")
        intensity = args.n / (args.window_area * 2.0 * moment(law, 1))
        sample = simulate_planar_section_3d(
            law, intensity, half_thickness, args.window_area, args.seed, sampling
        )
    else:
        sample = sample_section_radii(law, args.r, args.n, args.seed, sampling)
    save_sample(sample, args.out)
    print(f"{sample.n} {sample.mode.value} section radii -> {args.out}")
    return EXIT_OK


def _tail_index(args: argparse.Namespace) -> int:
    estimate: TailIndexEstimate
    if args.table is not None:
        table = load_section_law(args.table)
        estimate = local_tail_exponent(table.cdf, args.eta)
    else:
        if args.k is None:
            raise UsageError("--samples requires --k")
        estimate = reciprocal_hill(load_sample(args.samples).values, args.eta, args.k)
    if args.json:
        print(estimate.model_dump_json(indent=2))
    else:
        stderr = f" +/- {estimate.stderr:.4g}" if estimate.stderr is not None else ""
        flag = " (ill-conditioned)" if estimate.ill_conditioned else ""
        print(f"beta_hat={estimate.beta_hat:.6f}{stderr} [{estimate.method.value}]{flag}")
    return EXIT_OK


def _verify(args: argparse.Namespace) -> int:
    quadrature = QuadratureConfig(**({"workers": args.workers} if args.workers else {}))
    storage = RedisConfig() if args.storage == StorageTypes.REDIS.value else StorageConfig()
    fields = {"alphas": args.alphas, "etas": args.etas, "corollary_r": args.r_list}
    settings = VerifyConfig(
        seed=args.seed,
        quadrature=quadrature,
        storage=storage,
        **{k: v for k, v in fields.items() if v is not None},
    )
    backend = SectionTableBackend(settings.quadrature, settings.grid, settings.storage)
    if args.scenario == "theorem1":
        report = run_theorem1_matrix(config=settings, backend=backend)
    elif args.scenario == "theorem2":
        report = run_theorem2_check(settings, backend)
    elif args.scenario == "corollary":
        report = run_corollary_check(config=settings, backend=backend)
    else:
        report = run_all(settings, backend)
    args.out.write_text(render_report(report, ReportFormat.JSON))
    failures = report.failures()
    for row in failures:
        logger.warning("failed: %s [%s] %s", row.scenario_id, row.cell, row.error or row.beta_hat)
    print(f"{len(report.rows) - len(failures)}/{len(report.rows)} rows passed -> {args.out}")
    return EXIT_OK if not failures else EXIT_FAILURE


def _report(args: argparse.Namespace) -> int:
    sys.stdout.write(render_report(load_report(args.source.read_text()), args.format))
    return EXIT_OK


HANDLERS = {
    "transform": _transform,
    "simulate": _simulate,
    "tail-index": _tail_index,
    "verify": _verify,
    "report": _report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the `wicksell` command.

    Returns:
        int: 0 on success (and, for `verify`, when every row passes), 1 on a
        failed scenario or computational error, 2 on a usage or parameter error.
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"wicksell: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(args.verbose)
    try:
        return HANDLERS[args.command](args)
    except (UsageError, InvalidParameterError, ValidationError) as e:
        print(f"wicksell: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (WicksellError, OSError, ValueError) as e:
        print(f"wicksell: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["main", "build_parser", "configure_logging"]
