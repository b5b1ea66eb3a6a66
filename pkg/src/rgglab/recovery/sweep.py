"""Relative MSE of spectral recovery across latent dimensions."""

import logging
import math
import time
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from ..core.errors import InvalidParameterError
from ..core.rng import TAG_TRIAL, mix
from ..core.settings import QuadratureSettings
from ..detection.power import sample_cloud
from ..geometry.points import Geometry, gram_matrix
from ..graphs.model import sample_rgg, standardize_adjacency
from ..kernels.density import edge_density
from ..kernels.zoo import KernelSpec
from .spectral import relative_mse, spectral_recover

logger = logging.getLogger(__name__)

MIN_TRIALS = 10
CROSSING_LEVEL = 0.5


@dataclass(frozen=True)
class RecoveryTrial:
    trial: int
    seed: int
    relative_mse: float
    gap_d: float
    gap_d1: float
    seconds: float


@dataclass(frozen=True)
class RecoveryPoint:
    d: int
    mean: float
    se: float
    trials: tuple[RecoveryTrial, ...]


@dataclass(frozen=True)
class RecoveryCurve:
    kernel_id: str
    n: int
    points: tuple[RecoveryPoint, ...]
    crossing_d: float | None


def recovery_trial(
    kernel: KernelSpec,
    n: int,
    d: int,
    p: float,
    trial: int,
    seed: int,
    geometry: Geometry = Geometry.SPHERE_UNIFORM,
    empirical_p: bool = False,
) -> RecoveryTrial:
    """Sample a cloud and graph from ``seed`` and score the spectral estimate."""
    start = time.perf_counter()
    cloud = sample_cloud(geometry, n, d, mix(seed, 1))
    g = sample_rgg(kernel, cloud, mix(seed, 2))
    if empirical_p:
        eps = 1.0 / (n * n)
        p = min(max(g.density, eps), 1.0 - eps)
    result = spectral_recover(standardize_adjacency(g, p), d)
    score = relative_mse(result.estimate, gram_matrix(cloud))
    return RecoveryTrial(
        trial=trial,
        seed=seed,
        relative_mse=score,
        gap_d=result.gap_d,
        gap_d1=result.gap_d1,
        seconds=time.perf_counter() - start,
    )


def recovery_point(
    kernel: KernelSpec,
    n: int,
    d: int,
    seeds: Sequence[int],
    *,
    geometry: Geometry | str = Geometry.SPHERE_UNIFORM,
    empirical_p: bool = False,
    workers: int = 1,
    settings: QuadratureSettings | None = None,
) -> RecoveryPoint:
    """Mean relative MSE and its standard error over the given trial seeds."""
    if len(seeds) < MIN_TRIALS:
        raise InvalidParameterError(
            f"recovery needs >= {MIN_TRIALS} trials, got {len(seeds)}"
        )
    geometry = Geometry(geometry)
    p = edge_density(kernel, d, settings)
    trials = Parallel(n_jobs=workers)(
        delayed(recovery_trial)(kernel, n, d, p, t, s, geometry, empirical_p)
        for t, s in enumerate(seeds)
    )
    trials = sorted(trials, key=lambda r: r.trial)
    scores = np.array([t.relative_mse for t in trials])
    se = float(np.std(scores, ddof=1) / math.sqrt(scores.size))
    logger.info(
        f"Recovery for {kernel.kernel_id} at n={n}, d={d}: "
        f"relative mse {scores.mean():.4f} +/- {se:.4f}"
    )
    return RecoveryPoint(d=d, mean=float(scores.mean()), se=se, trials=tuple(trials))


def _crossing(points: Sequence[RecoveryPoint], level: float) -> float | None:
    for left, right in zip(points, points[1:]):
        if left.mean < level <= right.mean:
            # linear in log d between the bracketing grid points
            frac = (level - left.mean) / (right.mean - left.mean)
            log_d = math.log(left.d) + frac * (math.log(right.d) - math.log(left.d))
            return math.exp(log_d)
    return None


def recovery_sweep(
    kernel: KernelSpec,
    n: int,
    d_grid: Sequence[int],
    trials: int,
    seed: int,
    *,
    geometry: Geometry | str = Geometry.SPHERE_UNIFORM,
    empirical_p: bool = False,
    workers: int = 1,
    settings: QuadratureSettings | None = None,
) -> RecoveryCurve:
    """Mean relative MSE per ``d`` and the ``d`` where it crosses 0.5.

    Trial ``t`` at dimension ``d`` uses the seed ``mix(seed, TAG_TRIAL, d, t)``.

    Raises:
        InvalidParameterError: On an empty grid or fewer than 10 trials.
    """
    if not d_grid:
        raise InvalidParameterError("d_grid must not be empty")
    points = []
    for d in sorted(d_grid):
        seeds = [mix(seed, TAG_TRIAL, d, t) for t in range(trials)]
        points.append(
            recovery_point(
                kernel,
                n,
                d,
                seeds,
                geometry=geometry,
                empirical_p=empirical_p,
                workers=workers,
                settings=settings,
            )
        )
    crossing = _crossing(points, CROSSING_LEVEL)
    if crossing is None:
        logger.info(f"Relative mse of {kernel.kernel_id} never crosses 0.5 at n={n}")
    return RecoveryCurve(
        kernel_id=kernel.kernel_id, n=n, points=tuple(points), crossing_d=crossing
    )
