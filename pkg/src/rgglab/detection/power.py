"""Monte Carlo power of the motif tests."""

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
from ..geometry.points import (
    Geometry,
    PointCloud,
    sample_gaussian_points,
    sample_sphere_points,
)
from ..graphs.model import (
    Graph,
    PairKernel,
    sample_er,
    sample_rgg,
    standardize_adjacency,
)
from ..kernels.density import edge_density, standardize
from ..kernels.zoo import KernelSpec
from ..spectra.spectrum import gegenbauer_coefficients
from .motifs import signed_triangle_count, signed_wedge_count
from .theory import (
    Decision,
    MotifTest,
    MotifTheory,
    Statistic,
    decide,
    make_test,
    triangle_theory,
    wedge_theory,
)

logger = logging.getLogger(__name__)

MIN_TRIALS = 30

_STATISTICS = {
    Statistic.TRIANGLE: signed_triangle_count,
    Statistic.WEDGE: signed_wedge_count,
}


@dataclass(frozen=True)
class TrialResult:
    """Both replicates of one trial: an RGG draw and an ER draw."""

    trial: int
    seed: int
    rgg_value: float
    er_value: float
    rgg_decision: Decision
    er_decision: Decision
    seconds: float


@dataclass(frozen=True)
class PowerResult:
    statistic: Statistic
    n: int
    d: int
    p: float
    alpha: float
    threshold: float
    power: float
    power_se: float
    fpr: float
    fpr_se: float
    trials: tuple[TrialResult, ...]

    @property
    def rgg_values(self) -> np.ndarray:
        return np.array([t.rgg_value for t in self.trials])

    @property
    def er_values(self) -> np.ndarray:
        return np.array([t.er_value for t in self.trials])


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Per-trial seeds ``mix(seed, TAG_TRIAL, t)``."""
    return [mix(seed, TAG_TRIAL, t) for t in range(trials)]


def sample_cloud(geometry: Geometry, n: int, d: int, seed: int) -> PointCloud:
    if geometry is Geometry.GAUSSIAN_ISOTROPIC:
        return sample_gaussian_points(n, d, seed)
    return sample_sphere_points(n, d, seed)


def _evaluate(
    g: Graph, p: float, statistic: Statistic, empirical_p: bool
) -> float:
    if empirical_p:
        # plug-in density, kept off the boundary so standardization exists
        eps = 1.0 / max(g.n * g.n, 4)
        p = min(max(g.density, eps), 1.0 - eps)
    return _STATISTICS[statistic](standardize_adjacency(g, p))


def run_trial(
    kernel: KernelSpec | PairKernel,
    n: int,
    d: int,
    p: float,
    test: MotifTest,
    trial: int,
    seed: int,
    geometry: Geometry = Geometry.SPHERE_UNIFORM,
    empirical_p: bool = False,
) -> TrialResult:
    """Sample one RGG and one ER graph from ``seed`` and test both.

    The cloud, RGG edges and ER edges use the sub-seeds ``mix(seed, 1)``,
    ``mix(seed, 2)`` and ``mix(seed, 3)``.
    """
    start = time.perf_counter()
    cloud = sample_cloud(geometry, n, d, mix(seed, 1))
    rgg = sample_rgg(kernel, cloud, mix(seed, 2))
    er = sample_er(n, p, mix(seed, 3))
    rgg_value = _evaluate(rgg, p, test.statistic, empirical_p)
    er_value = _evaluate(er, p, test.statistic, empirical_p)
    result = TrialResult(
        trial=trial,
        seed=seed,
        rgg_value=rgg_value,
        er_value=er_value,
        rgg_decision=decide(test, rgg_value).decision,
        er_decision=decide(test, er_value).decision,
        seconds=time.perf_counter() - start,
    )
    logger.debug(f"Trial {trial}: rgg={rgg_value:.6g} er={er_value:.6g}")
    return result


def default_theory(
    kernel: KernelSpec,
    n: int,
    d: int,
    statistic: Statistic,
    settings: QuadratureSettings | None = None,
) -> MotifTheory:
    """Theory for an inner-product kernel on the sphere."""
    if statistic is Statistic.WEDGE:
        return wedge_theory(n)
    sk = standardize(kernel, d, settings)
    spec = gegenbauer_coefficients(sk, quadrature_settings=settings)
    return triangle_theory(spec, n, sk.p)


def _rate(decisions: list[Decision]) -> tuple[float, float]:
    rate = sum(dec is Decision.RGG for dec in decisions) / len(decisions)
    return rate, math.sqrt(rate * (1.0 - rate) / len(decisions))


def power_experiment(
    kernel: KernelSpec | PairKernel,
    n: int,
    d: int,
    trials: int,
    alpha: float,
    seed: int,
    *,
    statistic: Statistic | str = Statistic.TRIANGLE,
    geometry: Geometry | str = Geometry.SPHERE_UNIFORM,
    p: float | None = None,
    theory: MotifTheory | None = None,
    empirical_p: bool = False,
    seeds: Sequence[int] | None = None,
    workers: int = 1,
    settings: QuadratureSettings | None = None,
) -> PowerResult:
    """Empirical power and false-positive rate of a motif test.

    Runs ``trials`` paired RGG/ER replicates. ``p`` defaults to the analytic
    edge density and ``theory`` to the sphere theory of ``kernel``; distance
    kernels must pass both. ``seeds`` overrides the derived per-trial seeds.

    Raises:
        InvalidParameterError: If fewer than 30 trials are requested, or
            ``p`` or ``theory`` is missing for a pair kernel.
    """
    statistic = Statistic(statistic)
    geometry = Geometry(geometry)
    seeds = list(seeds) if seeds is not None else trial_seeds(seed, trials)
    if len(seeds) < MIN_TRIALS:
        raise InvalidParameterError(
            f"power needs >= {MIN_TRIALS} trials, got {len(seeds)}"
        )
    if isinstance(kernel, PairKernel) and (p is None or theory is None):
        raise InvalidParameterError(
            f"{kernel.kernel_id} needs an explicit edge density and theory"
        )
    if p is None:
        p = edge_density(kernel, d, settings)  # type: ignore[arg-type]
    if theory is None:
        theory = default_theory(
            kernel, n, d, statistic, settings  # type: ignore[arg-type]
        )
    test = make_test(theory, alpha)
    logger.info(
        f"Power of the {statistic.value} test for {kernel.kernel_id}: n={n}, d={d}, "
        f"p={p:.4g}, {len(seeds)} trials, threshold={test.threshold:.6g}"
    )

    results = Parallel(n_jobs=workers)(
        delayed(run_trial)(kernel, n, d, p, test, t, s, geometry, empirical_p)
        for t, s in enumerate(seeds)
    )
    results = sorted(results, key=lambda r: r.trial)
    power, power_se = _rate([r.rgg_decision for r in results])
    fpr, fpr_se = _rate([r.er_decision for r in results])
    return PowerResult(
        statistic=statistic,
        n=n,
        d=d,
        p=p,
        alpha=alpha,
        threshold=test.threshold,
        power=power,
        power_se=power_se,
        fpr=fpr,
        fpr_se=fpr_se,
        trials=tuple(results),
    )
