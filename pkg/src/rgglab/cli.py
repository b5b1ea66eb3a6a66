"""The ``rgglab`` console script.

Every experiment subcommand runs through :func:`rgglab.harness.run_sweep`, so a
single-run subcommand and a one-cell sweep config write the same rows.
"""

import argparse
import logging
import math
import sys
from collections import defaultdict
from collections.abc import Sequence
from pathlib import Path

from . import __version__
from .core.errors import (
    ConfigError,
    InvalidParameterError,
    KernelDomainError,
    NoCrossingError,
    RgglabError,
)
from .core.rng import mix
from .core.settings import RunSettings, Settings
from .detection.power import sample_cloud
from .detection.thresholds import predicted_thresholds, spectrum_at
from .geometry.points import Geometry
from .graphs.io import write_graph
from .graphs.model import sample_rgg
from .harness.config import (
    ExperimentConfig,
    geometric_grid,
    load_config,
    override_config,
)
from .harness.fits import (
    PRIMARY,
    crossings_by_kernel,
    fit_scale_slope,
    fit_threshold,
    level_sensitivity,
)
from .harness.plots import PLOTTED, emit_plots
from .harness.records import ExperimentRecord, write_results
from .harness.runner import run_sweep, scaled_kernel
from .kernels.grammar import parse_kernel
from .posterior.ensemble import MIN_ESS

logger = logging.getLogger(__name__)

EXPERIMENTS = ("spectrum", "detect", "recover", "posterior", "distance", "sweep")
EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAILED = 2


def _experiment_arguments(parser: argparse.ArgumentParser, sweep: bool) -> None:
    parser.add_argument(
        "--config",
        type=Path,
        required=sweep,
        help="experiment config file (key = value with [section] headers)",
    )
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--workers", type=int, help="parallel workers per cell")
    parser.add_argument("--seed", type=int, help="master seed (overrides config)")
    if sweep:
        return
    parser.add_argument("--kernel", help='kernel string, e.g. "gauss(r=1)"')
    parser.add_argument("--n", type=int, nargs="+", help="graph sizes")
    grid = parser.add_mutually_exclusive_group()
    grid.add_argument("--d", type=int, nargs="+", help="dimensions")
    grid.add_argument(
        "--d-geometric", metavar="START:STOP:RATIO", help="geometric d grid"
    )
    parser.add_argument("--trials", type=int, help="trials per cell")
    parser.add_argument("--alpha", type=float, help="test level")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rgglab",
        description="Random geometric graph experiments on the sphere.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--log-level",
        default=RunSettings().log_level,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="sample one RGG and write it to a file")
    gen.add_argument("--kernel", required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument(
        "--geometry",
        choices=[g.value for g in Geometry],
        default=Geometry.SPHERE_UNIFORM.value,
    )
    gen.add_argument(
        "--out",
        type=Path,
        required=True,
        help="target file; a .rggb suffix selects the bit-packed format",
    )

    helps = {
        "spectrum": "Gegenbauer spectrum table (and predicted thresholds with --n)",
        "detect": "signed-triangle power experiment",
        "recover": "spectral recovery of the Gram matrix",
        "posterior": "importance-sampled posterior overlap g(2)",
        "distance": "wedge/triangle tests for the distance kernel",
        "sweep": "run any config grid and fit the threshold exponent",
    }
    for name in EXPERIMENTS:
        _experiment_arguments(
            sub.add_parser(name, help=helps[name]), sweep=name == "sweep"
        )

    serve = sub.add_parser("serve", help="start the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config file (if any) with command-line overrides applied.

    Raises:
        ConfigError: If the file or the merged values are invalid.
    """
    base = load_config(args.config) if args.config else None
    updates: dict[str, object] = {
        "seed": args.seed,
        "workers": args.workers,
        "out": args.out,
    }
    if args.command != "sweep":
        d = args.d
        if args.d_geometric is not None:
            try:
                d = geometric_grid(args.d_geometric)
            except ValueError as exc:
                problem = f"bad value for 'd_geometric': {exc}"
                raise ConfigError([(0, problem)]) from None
        updates |= {
            "kind": args.command,
            "kernel": args.kernel,
            "n": args.n,
            "d": d,
            "trials": args.trials,
            "alpha": args.alpha,
        }
    return override_config(base, updates)


def _rate_summary(records: Sequence[ExperimentRecord]) -> list[str]:
    counts: dict[tuple[str, int, int, str], list[int]] = defaultdict(lambda: [0, 0])
    for r in records:
        if r.failed or r.decision not in {"rgg", "er"}:
            continue
        tally = counts[(r.kernel, r.n, r.d, r.statistic)]
        tally[0] += r.decision == "rgg"
        tally[1] += 1
    lines = []
    for (kernel, n, d, statistic), (hits, total) in sorted(counts.items()):
        rate = hits / total
        se = math.sqrt(rate * (1.0 - rate) / total)
        lines.append(
            f"{kernel} n={n} d={d} {statistic}: "
            f"rgg-rate={rate:.4f} (se {se:.4f}, {total} trials)"
        )
    return lines


def _mean_summary(records: Sequence[ExperimentRecord], statistic: str) -> list[str]:
    values: dict[tuple[str, int, int], list[float]] = defaultdict(list)
    for r in records:
        if not r.failed and r.statistic == statistic:
            values[(r.kernel, r.n, r.d)].append(r.value)
    lines = []
    for (kernel, n, d), vs in sorted(values.items()):
        mean = math.fsum(vs) / len(vs)
        var = math.fsum((v - mean) ** 2 for v in vs) / max(len(vs) - 1, 1)
        se = math.sqrt(var / len(vs))
        lines.append(f"{kernel} n={n} d={d} {statistic}: {mean:.6g} (se {se:.3g})")
    return lines


def _posterior_summary(records: Sequence[ExperimentRecord]) -> list[str]:
    low = {(r.kernel, r.n, r.d) for r in records if r.decision == "low_ess"}
    lines = [
        f"{kernel} n={n} d={d}: effective sample size below {MIN_ESS}, "
        "estimate withheld (increase the ensemble size)"
        for kernel, n, d in sorted(low)
    ]
    kept = [r for r in records if (r.kernel, r.n, r.d) not in low]
    return lines + _mean_summary(kept, "g2") + _mean_summary(kept, "g2_inner")


def _print_spectrum(config: ExperimentConfig, settings: Settings) -> None:
    kernel = config.kernel_spec
    for d in config.d:
        spec = spectrum_at(kernel, d, settings.spectrum, settings.quadrature)
        print(f"# {kernel.kernel_id} d={d}")
        print("k,alpha,eigenvalue,multiplicity,cumulative_cube,scaled")
        for row in spec.table():
            print(
                f"{row.k},{row.alpha:.17g},{row.eigenvalue:.17g},"
                f"{row.multiplicity:.17g},{row.cumulative_cube:.17g},"
                f"{row.scaled:.17g}"
            )
    for n in config.n:
        pred = predicted_thresholds(
            kernel,
            n,
            spectrum_settings=settings.spectrum,
            quadrature_settings=settings.quadrature,
        )
        print(
            f"# thresholds n={n}: d_test={pred.d_test} "
            f"closed={pred.d_test_closed} d_est={pred.d_est} "
            f"k0={pred.k0} general={pred.d_test_general} "
            f"linear={pred.d_test_linear}"
        )


def _print_fits(config: ExperimentConfig, records: list[ExperimentRecord]) -> None:
    if config.kind not in PRIMARY or len(set(config.n)) < 3:
        return
    try:
        fit = fit_threshold(records, config.power_level, seed=config.seed)
    except NoCrossingError as exc:
        print(f"threshold fit aborted: {exc}")
        return
    print(
        f"threshold fit at level {fit.level}: exponent={fit.exponent:.4f} "
        f"intercept={fit.intercept:.4f} "
        f"{fit.ci_level:.0%} CI [{fit.ci_low:.4f}, {fit.ci_high:.4f}]"
    )
    if fit.excluded:
        print(f"  no crossing for n in {list(fit.excluded)}")
    for level, sens in level_sensitivity(records, seed=config.seed).items():
        shown = "no fit" if sens is None else f"exponent={sens.exponent:.4f}"
        print(f"  level {level}: {shown}")
    if config.kind == "sweep" and config.r:
        by_id = {scaled_kernel(config.kernel_spec, r).kernel_id: r for r in config.r}
        n = max(config.n)
        crossings = crossings_by_kernel(records, n, config.power_level)
        try:
            scale = fit_scale_slope({by_id[k]: d for k, d in crossings.items()})
        except NoCrossingError as exc:
            print(f"scale fit aborted: {exc}")
            return
        print(f"scale fit at n={n}: slope={scale.slope:.4f}")


def run_experiment(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    settings = Settings(
        run=RunSettings(
            workers=config.workers,
            log_level=args.log_level,
            output_dir=config.out or RunSettings().output_dir,
        )
    )
    out = settings.run.output_dir
    if config.kind == "spectrum":
        _print_spectrum(config, settings)
    result = run_sweep(config, settings)
    path = write_results(result.records, out)
    if config.kind in PLOTTED:
        emit_plots(result.records, out)
    logger.info(f"Wrote {len(result.records)} records to {path}")

    if config.kind == "posterior":
        lines = _posterior_summary(result.records)
    elif config.kind == "recover":
        lines = _mean_summary(result.records, "relative_mse")
    elif config.kind == "spectrum":
        lines = []
    else:
        lines = _rate_summary(result.records)
    for line in lines:
        print(line)
    _print_fits(config, result.records)
    if result.failed_cells:
        print(f"{result.failed_cells} cell(s) failed; see the error column in {path}")
    return result.exit_code


def run_gen(args: argparse.Namespace) -> int:
    kernel = parse_kernel(args.kernel)
    cloud = sample_cloud(Geometry(args.geometry), args.n, args.d, mix(args.seed, 1))
    graph = sample_rgg(kernel, cloud, mix(args.seed, 2))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_graph(graph, args.out)
    print(f"{kernel.kernel_id} n={graph.n} edges={graph.edge_count} -> {args.out}")
    return EXIT_OK


def run_serve(args: argparse.Namespace) -> int:
    try:
        import uvicorn

        from .api import create_app
    except ImportError as e:
        raise ImportError(
            "fastapi and uvicorn are not installed. "
            'Install with: pip install "rgglab[api]"'
        ) from e

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "gen":
            return run_gen(args)
        if args.command == "serve":
            return run_serve(args)
        return run_experiment(args)
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidParameterError, KernelDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RgglabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
