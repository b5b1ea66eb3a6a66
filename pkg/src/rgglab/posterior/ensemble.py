"""Self-normalized importance sampling of the latent posterior."""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from ..core.errors import InvalidParameterError, KernelDomainError, SizeGuardError
from ..core.rng import TAG_ENSEMBLE, TAG_TRIAL, mix
from ..core.settings import QuadratureSettings
from ..geometry.points import (
    PointCloud,
    gram_matrix,
    sample_sphere_points,
    sphere_rows,
)
from ..graphs.model import Graph, sample_rgg
from ..kernels.density import edge_density, standardize
from ..kernels.zoo import KernelSpec
from ..spectra.spectrum import eta_profile, gegenbauer_coefficients

logger = logging.getLogger(__name__)

MAX_N = 12
MAX_D = 8
MAX_ENSEMBLE = 10**7
MIN_ESS = 100.0
_CHUNK = 1 << 15


@dataclass(frozen=True)
class WeightedEnsemble:
    """Prior draws of the latent cloud weighted by the graph likelihood.

    ``overlaps[m]`` holds the pair overlaps ``<x_i, x_j>`` of draw ``m`` in
    the row-major order of ``np.triu_indices(n, 1)``. ``log_weights`` is the
    log-likelihood ratio against the ER graph of the same density.
    """

    n: int
    d: int
    overlaps: np.ndarray
    log_weights: np.ndarray

    @property
    def size(self) -> int:
        return int(self.log_weights.shape[0])

    @property
    def weights(self) -> np.ndarray:
        w = np.exp(self.log_weights - np.max(self.log_weights))
        return w / math.fsum(w)

    @property
    def ess(self) -> float:
        w = self.weights
        return float(1.0 / np.dot(w, w))

    def pair_index(self, i: int, j: int) -> int:
        i, j = min(i, j), max(i, j)
        if not 0 <= i < j < self.n:
            raise InvalidParameterError(f"bad pair ({i}, {j}) for n={self.n}")
        return i * self.n - i * (i + 1) // 2 + (j - i - 1)

    def pair_overlaps(self, i: int, j: int) -> np.ndarray:
        return self.overlaps[:, self.pair_index(i, j)]

    def mean(self, values: np.ndarray) -> float:
        """Self-normalized average of per-draw ``values``."""
        return float(np.dot(self.weights, values))

    def standard_error(self, values: np.ndarray) -> float:
        """Delta-method error ``sqrt(sum w_m^2 (v_m - mean)^2)``."""
        w = self.weights
        centered = values - np.dot(w, values)
        return float(math.sqrt(np.dot(w * w, centered * centered)))


def _check_limits(n: int, d: int, m: int) -> None:
    if n < 2 or n > MAX_N:
        raise SizeGuardError(f"posterior sampling needs 2 <= n <= {MAX_N}, got {n}")
    if d < 1 or d > MAX_D:
        raise SizeGuardError(f"posterior sampling needs 1 <= d <= {MAX_D}, got {d}")
    if m < 2 or m > MAX_ENSEMBLE:
        raise SizeGuardError(
            f"ensemble size must lie in [2, {MAX_ENSEMBLE}], got {m}"
        )


def _chunk(
    kernel: KernelSpec,
    edges: np.ndarray,
    baseline: float,
    n: int,
    d: int,
    key: int,
    start: int,
    stop: int,
) -> tuple[np.ndarray, np.ndarray]:
    # draw m, point i lives on row m * n + i of the ensemble stream
    rows = np.arange(start * n, stop * n, dtype=np.int64)
    x = sphere_rows(key, rows, d).reshape(stop - start, n, d)
    iu = np.triu_indices(n, 1)
    overlaps = np.clip(np.einsum("mid,mjd->mij", x, x)[:, iu[0], iu[1]], -1.0, 1.0)
    k = kernel(overlaps)
    if np.any((k <= 0.0) | (k >= 1.0)):
        raise KernelDomainError(
            f"{kernel.kernel_id} reaches 0 or 1 on a prior draw; the likelihood "
            "needs a kernel bounded away from both"
        )
    loglik = np.where(edges, np.log(k), np.log1p(-k)).sum(axis=1)
    return overlaps, loglik - baseline


def posterior_ensemble(
    a: Graph,
    kernel: KernelSpec,
    d: int,
    m: int,
    seed: int,
    *,
    workers: int = 1,
    settings: QuadratureSettings | None = None,
) -> WeightedEnsemble:
    """Weight ``m`` prior clouds by the likelihood of ``a``.

    Draws are generated in chunks from the counter stream keyed by
    ``mix(seed, TAG_ENSEMBLE)``, so the ensemble does not depend on
    ``workers``.

    Raises:
        SizeGuardError: If ``n > 12``, ``d > 8`` or ``m > 10^7``.
        KernelDomainError: If the kernel hits 0 or 1 on some draw.
    """
    n = a.n
    _check_limits(n, d, m)
    p = edge_density(kernel, d, settings)
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"edge density must lie in (0, 1), got {p}")
    iu = np.triu_indices(n, 1)
    edges = a.adjacency[iu]
    present = int(np.count_nonzero(edges))
    baseline = present * math.log(p) + (edges.size - present) * math.log1p(-p)
    key = mix(seed, TAG_ENSEMBLE)
    bounds = [(s, min(s + _CHUNK, m)) for s in range(0, m, _CHUNK)]
    parts = Parallel(n_jobs=workers)(
        delayed(_chunk)(kernel, edges, baseline, n, d, key, lo, hi)
        for lo, hi in bounds
    )
    ensemble = WeightedEnsemble(
        n=n,
        d=d,
        overlaps=np.concatenate([o for o, _ in parts]),
        log_weights=np.concatenate([w for _, w in parts]),
    )
    ess = ensemble.ess
    if ess < MIN_ESS:
        logger.warning(
            f"Posterior ensemble for {kernel.kernel_id} (n={n}, d={d}, M={m}) has "
            f"ess={ess:.1f}; estimates are untrustworthy"
        )
    else:
        logger.debug(f"Posterior ensemble ess={ess:.1f} of {m}")
    return ensemble


def posterior_mean_overlap(
    ensemble: WeightedEnsemble, i: int, j: int
) -> tuple[float, float]:
    """``E[<x_i, x_j> | A]`` with its standard error."""
    values = ensemble.pair_overlaps(i, j)
    return ensemble.mean(values), ensemble.standard_error(values)


def posterior_overlap(
    ensemble: WeightedEnsemble, truth: PointCloud
) -> tuple[float, float]:
    """``E[<X_tilde, X> | A]``, the Frobenius overlap of a posterior Gram draw
    with the true Gram matrix over ``i < j``."""
    if truth.n != ensemble.n:
        raise InvalidParameterError(
            f"truth has n={truth.n}, ensemble has n={ensemble.n}"
        )
    target = gram_matrix(truth).entries[np.triu_indices(truth.n, 1)]
    values = ensemble.overlaps @ target
    return ensemble.mean(values), ensemble.standard_error(values)


def replica_square(
    first: WeightedEnsemble,
    second: WeightedEnsemble,
    statistic: Callable[[WeightedEnsemble], np.ndarray],
) -> float:
    """Product of the posterior means of ``statistic`` under two independent
    ensembles, a consistent estimate of the squared posterior mean."""
    return first.mean(statistic(first)) * second.mean(statistic(second))


@dataclass(frozen=True)
class G2Estimate:
    """Replicate average of ``(E[eta(X_12) | A])^2`` with its standard error.

    ``inner`` is the inner-product form ``d^-2 (E[X_12 | A])^2`` from the
    same ensembles.
    """

    mean: float
    se: float
    inner: float
    inner_se: float
    values: tuple[float, ...]
    inner_values: tuple[float, ...]
    min_ess: float


def _mean_se(values: list[float]) -> tuple[float, float]:
    arr = np.asarray(values)
    se = float(np.std(arr, ddof=1) / math.sqrt(arr.size)) if arr.size > 1 else 0.0
    return float(arr.mean()), se


def g2_estimate(
    kernel: KernelSpec,
    n: int,
    d: int,
    graph_replicates: int,
    m: int,
    seed: int,
    *,
    seeds: Sequence[int] | None = None,
    workers: int = 1,
    settings: QuadratureSettings | None = None,
) -> G2Estimate:
    """Estimate ``g(2) = E_A[(E_{x|A}[kappa(<x_1, z>) kappa(<x_2, z>)])^2]``.

    The average over the fresh point ``z`` is done exactly through the
    squared-operator profile ``eta``. Each replicate graph gets two
    half-ensembles of ``m // 2`` draws whose posterior means are multiplied.
    Replicate ``r`` uses ``mix(seed, TAG_TRIAL, r)`` unless ``seeds`` is given.

    Raises:
        InvalidParameterError: If fewer than 1 replicate is requested.
    """
    seeds = (
        list(seeds)
        if seeds is not None
        else [mix(seed, TAG_TRIAL, r) for r in range(graph_replicates)]
    )
    if not seeds:
        raise InvalidParameterError(
            f"graph_replicates must be >= 1, got {graph_replicates}"
        )
    _check_limits(n, d, m)
    sk = standardize(kernel, d, settings)
    spec = gegenbauer_coefficients(sk, quadrature_settings=settings)

    def eta_values(ens: WeightedEnsemble) -> np.ndarray:
        return eta_profile(spec, ens.pair_overlaps(0, 1))

    def inner_values(ens: WeightedEnsemble) -> np.ndarray:
        return ens.pair_overlaps(0, 1)

    values: list[float] = []
    inner: list[float] = []
    min_ess = math.inf
    for r, rep_seed in enumerate(seeds):
        cloud = sample_sphere_points(n, d, mix(rep_seed, 1))
        a = sample_rgg(kernel, cloud, mix(rep_seed, 2))
        halves = [
            posterior_ensemble(
                a,
                kernel,
                d,
                m // 2,
                mix(rep_seed, 3 + h),
                workers=workers,
                settings=settings,
            )
            for h in range(2)
        ]
        min_ess = min(min_ess, *(h.ess for h in halves))
        values.append(replica_square(*halves, eta_values))
        inner.append(replica_square(*halves, inner_values) / d**2)
        logger.debug(f"g2 replicate {r}: {values[-1]:.4g}")
    mean, se = _mean_se(values)
    inner_mean, inner_se = _mean_se(inner)
    logger.info(
        f"g2 for {kernel.kernel_id} at n={n}, d={d}: {mean:.4g} +/- {se:.2g} "
        f"(min ess {min_ess:.0f})"
    )
    return G2Estimate(
        mean=mean,
        se=se,
        inner=inner_mean,
        inner_se=inner_se,
        values=tuple(values),
        inner_values=tuple(inner),
        min_ess=min_ess,
    )
