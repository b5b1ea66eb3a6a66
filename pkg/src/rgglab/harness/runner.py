"""Grid execution with per-trial seeds, cooperative time limits and error rows."""

import logging
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

from joblib import Parallel, delayed

from ..core.errors import InvalidParameterError
from ..core.rng import mix, text_hash
from ..core.settings import Settings, get_settings
from ..detection.power import default_theory, run_trial
from ..detection.theory import Statistic, make_test
from ..distance.experiment import distance_theories, distance_trial
from ..distance.kernel import DistanceKernelSpec
from ..kernels.density import edge_density, standardize
from ..kernels.zoo import KernelSpec, Linear, ScaledCDF
from ..posterior.ensemble import MIN_ESS, g2_estimate
from ..recovery.sweep import recovery_trial
from ..spectra.spectrum import gegenbauer_coefficients
from .config import ExperimentConfig
from .records import ExperimentRecord, sort_records

logger = logging.getLogger(__name__)


def cell_seed(
    master: int, kind: str, kernel_id: str, n: int, d: int, trial: int
) -> int:
    """``mix(master, hash(kind), hash(kernel), n, d, trial)``."""
    return mix(master, text_hash(kind), text_hash(kernel_id), n, d, trial)


@dataclass(frozen=True)
class Cell:
    kind: str
    kernel: Any
    n: int
    d: int

    @property
    def kernel_id(self) -> str:
        return str(self.kernel.kernel_id)

    def record(
        self,
        trial: int,
        seed: int,
        statistic: str,
        value: float,
        decision: str = "",
        seconds: float = 0.0,
    ) -> ExperimentRecord:
        return ExperimentRecord(
            kind=self.kind,
            kernel=self.kernel_id,
            n=self.n,
            d=self.d,
            trial=trial,
            seed=seed,
            statistic=statistic,
            value=value,
            decision=decision,
            seconds=seconds,
        )

    def error(self, exc: BaseException) -> ExperimentRecord:
        return ExperimentRecord(
            kind=self.kind,
            kernel=self.kernel_id,
            n=self.n,
            d=self.d,
            trial=-1,
            seed=0,
            statistic="error",
            value=0.0,
            error=f"{type(exc).__name__}: {exc}",
        )


@dataclass(frozen=True)
class SweepResult:
    records: list[ExperimentRecord]
    failed_cells: int

    @property
    def exit_code(self) -> int:
        return 2 if self.failed_cells else 0


@dataclass(frozen=True)
class _Clock:
    deadline: float
    timeout: float

    def check(self) -> None:
        if time.monotonic() > self.deadline:
            raise TimeoutError(f"cell exceeded its {self.timeout:g} s limit")


def scaled_kernel(kernel: KernelSpec, r: float) -> KernelSpec:
    """Copy of a linear or CDF kernel with scale ``r``, validated anew."""
    if not isinstance(kernel, Linear | ScaledCDF):
        raise InvalidParameterError(f"{kernel.kernel_id} has no scale parameter r")
    return type(kernel).model_validate({**kernel.model_dump(), "r": r})


def build_cells(config: ExperimentConfig) -> list[Cell]:
    """Grid cells in canonical order."""
    if config.kind == "distance":
        kernel: Any = DistanceKernelSpec(
            gamma=config.distance.gamma, beta=config.distance.beta
        )
        return [Cell("distance", kernel, n, d) for n in config.n for d in config.d]
    if config.kind == "spectrum":
        return [Cell("spectrum", config.kernel_spec, 0, d) for d in config.d]
    if config.kind == "sweep":
        kernels = [scaled_kernel(config.kernel_spec, r) for r in config.r or ()]
    else:
        kernels = [config.kernel_spec]
    return [
        Cell(config.kind, k, n, d) for k in kernels for n in config.n for d in config.d
    ]


def _run_batched(
    task: Callable[..., Any],
    args: Sequence[tuple[Any, ...]],
    workers: int,
    clock: _Clock,
) -> list[Any]:
    # the time limit is checked between batches, never inside a trial
    size = max(4 * workers, 8)
    results: list[Any] = []
    with Parallel(n_jobs=workers) as parallel:
        for start in range(0, len(args), size):
            clock.check()
            batch = args[start : start + size]
            results.extend(parallel(delayed(task)(*a) for a in batch))
    return results


class CellRunner:
    """Runs one grid cell of an experiment into records."""

    def __init__(self, config: ExperimentConfig, settings: Settings) -> None:
        self.config = config
        self.settings = settings

    def seeds(self, cell: Cell, count: int) -> list[int]:
        return [
            cell_seed(self.config.seed, cell.kind, cell.kernel_id, cell.n, cell.d, t)
            for t in range(count)
        ]

    def run(self, cell: Cell) -> list[ExperimentRecord]:
        timeout = self.settings.run.cell_timeout
        clock = _Clock(deadline=time.monotonic() + timeout, timeout=timeout)
        handlers = {
            "detect": self.detect,
            "sweep": self.detect,
            "recover": self.recover,
            "distance": self.distance,
            "posterior": self.posterior,
            "spectrum": self.spectrum,
        }
        return handlers[cell.kind](cell, clock)

    def detect(self, cell: Cell, clock: _Clock) -> list[ExperimentRecord]:
        cfg = self.config
        quad = self.settings.quadrature
        p = edge_density(cell.kernel, cell.d, quad)
        theory = default_theory(cell.kernel, cell.n, cell.d, Statistic.TRIANGLE, quad)
        test = make_test(theory, cfg.alpha)
        args = [
            (cell.kernel, cell.n, cell.d, p, test, t, s, cfg.geometry, cfg.empirical_p)
            for t, s in enumerate(self.seeds(cell, cfg.trials))
        ]
        records = []
        for tr in _run_batched(run_trial, args, cfg.workers, clock):
            records += [
                cell.record(
                    tr.trial,
                    tr.seed,
                    "triangle",
                    tr.rgg_value,
                    tr.rgg_decision.value,
                    tr.seconds,
                ),
                cell.record(
                    tr.trial,
                    tr.seed,
                    "triangle_null",
                    tr.er_value,
                    tr.er_decision.value,
                ),
            ]
        return records

    def recover(self, cell: Cell, clock: _Clock) -> list[ExperimentRecord]:
        cfg = self.config
        p = edge_density(cell.kernel, cell.d, self.settings.quadrature)
        args = [
            (cell.kernel, cell.n, cell.d, p, t, s, cfg.geometry, cfg.empirical_p)
            for t, s in enumerate(self.seeds(cell, cfg.trials))
        ]
        records = []
        for tr in _run_batched(recovery_trial, args, cfg.workers, clock):
            records += [
                cell.record(
                    tr.trial, tr.seed, "relative_mse", tr.relative_mse, "", tr.seconds
                ),
                cell.record(tr.trial, tr.seed, "gap_d", tr.gap_d),
                cell.record(tr.trial, tr.seed, "gap_d1", tr.gap_d1),
            ]
        return records

    def distance(self, cell: Cell, clock: _Clock) -> list[ExperimentRecord]:
        cfg = self.config
        kernel = cell.kernel
        p = kernel.edge_density(cell.d)
        wedge, triangle = distance_theories(kernel, cell.n, cell.d)
        wedge_test = make_test(wedge, cfg.alpha)
        triangle_test = make_test(triangle, cfg.alpha)
        args = [
            (kernel, cell.n, cell.d, p, wedge_test, triangle_test, t, s)
            for t, s in enumerate(self.seeds(cell, cfg.trials))
        ]
        records = []
        for tr in _run_batched(distance_trial, args, cfg.workers, clock):
            records += [
                cell.record(
                    tr.trial,
                    tr.seed,
                    "wedge",
                    tr.wedge,
                    tr.wedge_decision.value,
                    tr.seconds,
                ),
                cell.record(
                    tr.trial,
                    tr.seed,
                    "triangle",
                    tr.triangle,
                    tr.triangle_decision.value,
                ),
                cell.record(
                    tr.trial,
                    tr.seed,
                    "wedge_null",
                    tr.er_wedge,
                    tr.er_wedge_decision.value,
                ),
                cell.record(
                    tr.trial,
                    tr.seed,
                    "triangle_null",
                    tr.er_triangle,
                    tr.er_triangle_decision.value,
                ),
            ]
        return records

    def posterior(self, cell: Cell, clock: _Clock) -> list[ExperimentRecord]:
        section = self.config.posterior
        seeds = self.seeds(cell, section.replicates)
        estimate = g2_estimate(
            cell.kernel,
            cell.n,
            cell.d,
            section.replicates,
            section.ensemble,
            self.config.seed,
            seeds=seeds,
            workers=self.config.workers,
            settings=self.settings.quadrature,
        )
        clock.check()
        decision = "ok" if estimate.min_ess >= MIN_ESS else "low_ess"
        records = []
        for t, s in enumerate(seeds):
            records += [
                cell.record(t, s, "g2", estimate.values[t], decision),
                cell.record(t, s, "g2_inner", estimate.inner_values[t], decision),
            ]
        return records

    def spectrum(self, cell: Cell, clock: _Clock) -> list[ExperimentRecord]:
        sk = standardize(cell.kernel, cell.d, self.settings.quadrature)
        spec = gegenbauer_coefficients(
            sk,
            spectrum_settings=self.settings.spectrum,
            quadrature_settings=self.settings.quadrature,
        )
        records = []
        for row in spec.table():
            records += [
                cell.record(row.k, 0, "eigenvalue", row.eigenvalue),
                cell.record(row.k, 0, "scaled", row.scaled),
                cell.record(row.k, 0, "cumulative_cube", row.cumulative_cube),
            ]
        return records


def run_sweep(
    config: ExperimentConfig, settings: Settings | None = None
) -> SweepResult:
    """Run every cell of the grid; a failing cell becomes one error row.

    Output is a deterministic function of ``config``: per-trial seeds come
    from :func:`cell_seed` and rows are sorted canonically, so the worker
    count does not change the records.
    """
    settings = settings or get_settings()
    runner = CellRunner(config, settings)
    cells = build_cells(config)
    logger.info(f"Running {len(cells)} {config.kind} cells with seed {config.seed}")
    records: list[ExperimentRecord] = []
    failed = 0
    for cell in cells:
        label = f"{cell.kind} {cell.kernel_id} n={cell.n} d={cell.d}"
        start = time.perf_counter()
        try:
            records.extend(runner.run(cell))
        except Exception as exc:
            failed += 1
            logger.error(f"Cell {label} failed: {exc}")
            records.append(cell.error(exc))
            continue
        logger.info(f"Cell {label} done in {time.perf_counter() - start:.1f} s")
    return SweepResult(records=sort_records(records), failed_cells=failed)
