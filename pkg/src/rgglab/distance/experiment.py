"""Signed wedges against signed triangles on Gaussian latent points."""

import logging
import math
import time
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from ..core.errors import InvalidParameterError
from ..core.rng import mix
from ..detection.motifs import signed_triangle_count, signed_wedge_count
from ..detection.power import MIN_TRIALS, trial_seeds
from ..detection.theory import (
    Decision,
    MotifTest,
    MotifTheory,
    Statistic,
    decide,
    make_test,
    wedge_theory,
)
from ..geometry.points import sample_gaussian_points
from ..graphs.model import sample_er, sample_rgg, standardize_adjacency
from .kernel import DistanceKernelSpec
from .subgraphs import SimpleSubgraph, signed_subgraph_expectation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceTrial:
    trial: int
    seed: int
    wedge: float
    triangle: float
    er_wedge: float
    er_triangle: float
    wedge_decision: Decision
    triangle_decision: Decision
    er_wedge_decision: Decision
    er_triangle_decision: Decision
    seconds: float


@dataclass(frozen=True)
class NonuniversalityResult:
    """Both motif statistics on the same Gaussian-latent graphs.

    Statistic values are in standardized units ``(A - p) / sqrt(p (1 - p))``;
    ``wedge_theory`` is ``3 C(n,3)`` times the exact signed wedge moment in
    those units.
    """

    kernel_id: str
    n: int
    d: int
    p: float
    wedge_mean: float
    wedge_se: float
    wedge_theory: float
    triangle_mean: float
    triangle_se: float
    triangle_theory: float
    er_wedge_mean: float
    er_wedge_se: float
    wedge_power: float
    triangle_power: float
    wedge_fpr: float
    triangle_fpr: float
    trials: tuple[DistanceTrial, ...]


def standardized_motif_value(
    h: SimpleSubgraph, kernel: DistanceKernelSpec, d: int
) -> float:
    """``E[prod_{e in H} (A_e - p) / sqrt(p (1 - p))]``."""
    p = kernel.edge_density(d)
    raw = signed_subgraph_expectation(h, kernel.gamma, kernel.beta, d)
    return raw / (p * (1.0 - p)) ** (h.size / 2)


def distance_theories(
    kernel: DistanceKernelSpec, n: int, d: int
) -> tuple[MotifTheory, MotifTheory]:
    """Wedge and triangle theories with exact signed-moment means."""
    triples = math.comb(n, 3)
    wedge = wedge_theory(n, standardized_motif_value(SimpleSubgraph.wedge(), kernel, d))
    triangle = MotifTheory(
        statistic=Statistic.TRIANGLE,
        n=n,
        mean_p=triples * standardized_motif_value(SimpleSubgraph.triangle(), kernel, d),
        var_p_bound=None,
        mean_q=0.0,
        var_q=float(triples),
    )
    return wedge, triangle


def distance_trial(
    kernel: DistanceKernelSpec,
    n: int,
    d: int,
    p: float,
    wedge_test: MotifTest,
    triangle_test: MotifTest,
    trial: int,
    seed: int,
) -> DistanceTrial:
    start = time.perf_counter()
    cloud = sample_gaussian_points(n, d, mix(seed, 1))
    rgg = standardize_adjacency(sample_rgg(kernel, cloud, mix(seed, 2)), p)
    er = standardize_adjacency(sample_er(n, p, mix(seed, 3)), p)
    wedge, triangle = signed_wedge_count(rgg), signed_triangle_count(rgg)
    er_wedge, er_triangle = signed_wedge_count(er), signed_triangle_count(er)
    return DistanceTrial(
        trial=trial,
        seed=seed,
        wedge=wedge,
        triangle=triangle,
        er_wedge=er_wedge,
        er_triangle=er_triangle,
        wedge_decision=decide(wedge_test, wedge).decision,
        triangle_decision=decide(triangle_test, triangle).decision,
        er_wedge_decision=decide(wedge_test, er_wedge).decision,
        er_triangle_decision=decide(triangle_test, er_triangle).decision,
        seconds=time.perf_counter() - start,
    )


def _mean_se(values: np.ndarray) -> tuple[float, float]:
    return float(values.mean()), float(np.std(values, ddof=1) / math.sqrt(values.size))


def _rate(decisions: list[Decision]) -> float:
    return sum(dec is Decision.RGG for dec in decisions) / len(decisions)


def wedge_nonuniversality_experiment(
    gamma: float,
    beta: float,
    n: int,
    d: int,
    trials: int,
    seed: int,
    *,
    alpha: float = 0.01,
    seeds: list[int] | None = None,
    workers: int = 1,
) -> NonuniversalityResult:
    """Compare signed wedge and triangle counts on distance-kernel graphs.

    Raises:
        InvalidParameterError: If fewer than 30 trials are requested.
    """
    kernel = DistanceKernelSpec(gamma=gamma, beta=beta)
    seeds = seeds if seeds is not None else trial_seeds(seed, trials)
    if len(seeds) < MIN_TRIALS:
        raise InvalidParameterError(
            f"the experiment needs >= {MIN_TRIALS} trials, got {len(seeds)}"
        )
    p = kernel.edge_density(d)
    wedge, triangle = distance_theories(kernel, n, d)
    wedge_test, triangle_test = make_test(wedge, alpha), make_test(triangle, alpha)
    logger.info(
        f"Non-universality run for {kernel.kernel_id}: n={n}, d={d}, p={p:.4g}, "
        f"E[W]={wedge.mean_p:.4g}, E[T]={triangle.mean_p:.4g}"
    )
    results = Parallel(n_jobs=workers)(
        delayed(distance_trial)(kernel, n, d, p, wedge_test, triangle_test, t, s)
        for t, s in enumerate(seeds)
    )
    results = sorted(results, key=lambda r: r.trial)
    wedge_mean, wedge_se = _mean_se(np.array([r.wedge for r in results]))
    tri_mean, tri_se = _mean_se(np.array([r.triangle for r in results]))
    er_mean, er_se = _mean_se(np.array([r.er_wedge for r in results]))
    return NonuniversalityResult(
        kernel_id=kernel.kernel_id,
        n=n,
        d=d,
        p=p,
        wedge_mean=wedge_mean,
        wedge_se=wedge_se,
        wedge_theory=wedge.mean_p,
        triangle_mean=tri_mean,
        triangle_se=tri_se,
        triangle_theory=triangle.mean_p,
        er_wedge_mean=er_mean,
        er_wedge_se=er_se,
        wedge_power=_rate([r.wedge_decision for r in results]),
        triangle_power=_rate([r.triangle_decision for r in results]),
        wedge_fpr=_rate([r.er_wedge_decision for r in results]),
        triangle_fpr=_rate([r.er_triangle_decision for r in results]),
        trials=tuple(results),
    )
