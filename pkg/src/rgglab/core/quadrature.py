"""Quadrature against the overlap law of two uniform sphere points.

For independent uniform ``x, y`` on ``S^{d-1}`` the overlap ``T = <x, y>`` has
density proportional to ``(1 - t^2)^((d - 3) / 2)`` on ``[-1, 1]``. Expectations
under that law are computed with Gauss-Jacobi rules built by the Golub-Welsch
algorithm. Kernels with jump points are integrated piecewise, with the Jacobi
exponent kept on the pieces that touch the endpoints.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import betaln

from .errors import InvalidParameterError, QuadratureError
from .settings import QuadratureSettings, get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OverlapMeasure:
    """Nodes and probability weights for the overlap law in dimension ``d``.

    ``d`` may be any real number >= 1; non-integer values are used by the
    threshold bisection.
    """

    d: float
    nodes: np.ndarray
    weights: np.ndarray

    def expect(self, values: np.ndarray) -> float:
        """Weighted sum of ``values`` given at the nodes."""
        return float(np.dot(self.weights, values))

    @property
    def size(self) -> int:
        return int(self.nodes.shape[0])


def gauss_jacobi(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Jacobi nodes and normalized weights on ``[-1, 1]``.

    Weight function ``(1 - x)^alpha (1 + x)^beta``. Weights are returned
    divided by the total mass, so they sum to one.

    Args:
        n: Number of nodes.
        alpha: Exponent on ``(1 - x)``, greater than -1.
        beta: Exponent on ``(1 + x)``, greater than -1.

    Returns:
        (nodes, weights): ascending nodes and their probability weights.
    """
    if n < 1:
        raise InvalidParameterError(f"node count must be positive, got {n}")
    if alpha <= -1 or beta <= -1:
        raise InvalidParameterError(
            f"Jacobi exponents must exceed -1, got alpha={alpha}, beta={beta}"
        )
    ab = alpha + beta
    i = np.arange(n, dtype=np.float64)
    denom = (2 * i + ab) * (2 * i + ab + 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = np.where(denom == 0, 0.0, (beta**2 - alpha**2) / denom)
    diag[0] = (beta - alpha) / (ab + 2)

    j = np.arange(1, n, dtype=np.float64)
    s = 2 * j + ab
    with np.errstate(divide="ignore", invalid="ignore"):
        off_sq = 4 * j * (j + alpha) * (j + beta) * (j + ab) / (s**2 * (s**2 - 1))
    if n > 1:
        # closed form at j = 1 avoids 0/0 when alpha + beta = -1
        off_sq[0] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
    nodes, vecs = eigh_tridiagonal(diag, np.sqrt(off_sq))
    weights = vecs[0, :] ** 2
    return nodes, weights / weights.sum()


def _log_jacobi_mass(alpha: float, beta: float) -> float:
    return float((alpha + beta + 1) * np.log(2.0) + betaln(alpha + 1, beta + 1))


def _check_moments(measure: OverlapMeasure, tolerance: float) -> None:
    d = measure.d
    t2 = measure.expect(measure.nodes**2)
    t4 = measure.expect(measure.nodes**4)
    expected_t4 = 3.0 / (d * (d + 2)) if d > 1 else 1.0
    if abs(t2 - 1.0 / d) > tolerance or abs(t4 - expected_t4) > tolerance:
        raise QuadratureError(
            f"overlap measure for d={d} with {measure.size} nodes fails the "
            f"moment check: E[T^2]={t2!r} (want {1.0 / d!r}), "
            f"E[T^4]={t4!r} (want {expected_t4!r})"
        )


def _composite(
    d: float, n_nodes: int, breakpoints: tuple[float, ...]
) -> tuple[np.ndarray, np.ndarray]:
    a = (d - 3.0) / 2.0
    log_norm = float(betaln(0.5, (d - 1.0) / 2.0))
    edges = (-1.0, *breakpoints, 1.0)
    all_nodes: list[np.ndarray] = []
    all_log_w: list[np.ndarray] = []
    for lo, hi in zip(edges[:-1], edges[1:], strict=True):
        touches_left = lo == -1.0
        touches_right = hi == 1.0
        alpha = a if touches_right else 0.0
        beta = a if touches_left else 0.0
        s, w = gauss_jacobi(n_nodes, alpha, beta)
        h = (hi - lo) / 2.0
        t = lo + h * (s + 1.0)
        log_w = np.log(w) + _log_jacobi_mass(alpha, beta) + np.log(h)
        log_w += a * np.log(h) if touches_left else a * np.log1p(t)
        log_w += a * np.log(h) if touches_right else a * np.log1p(-t)
        all_nodes.append(t)
        all_log_w.append(log_w - log_norm)
    nodes = np.concatenate(all_nodes)
    weights = np.exp(np.concatenate(all_log_w))
    return nodes, weights / weights.sum()


@lru_cache(maxsize=256)
def overlap_measure(
    d: float,
    n_nodes: int,
    breakpoints: tuple[float, ...] = (),
    moment_tolerance: float = 1e-8,
) -> OverlapMeasure:
    """Build (and cache) the quadrature rule for the overlap law.

    Args:
        d: Dimension, >= 1.
        n_nodes: Nodes per piece.
        breakpoints: Sorted jump points strictly inside ``(-1, 1)``.
        moment_tolerance: Allowed error on ``E[T^2]`` and ``E[T^4]``.

    Returns:
        OverlapMeasure: rule with read-only arrays.

    Raises:
        QuadratureError: If the rule misses the exact moments.
    """
    if d < 1:
        raise InvalidParameterError(f"dimension must be >= 1, got {d}")
    inner = tuple(sorted(b for b in breakpoints if -1.0 < b < 1.0))
    if d == 1:
        # S^0 = {-1, +1}: the overlap is a fair sign
        nodes = np.array([-1.0, 1.0])
        weights = np.array([0.5, 0.5])
    elif d == 2 and not inner:
        k = np.arange(1, n_nodes + 1, dtype=np.float64)
        nodes = np.sort(np.cos((2 * k - 1) * np.pi / (2 * n_nodes)))
        weights = np.full(n_nodes, 1.0 / n_nodes)
    elif not inner:
        a = (d - 3.0) / 2.0
        nodes, weights = gauss_jacobi(n_nodes, a, a)
    else:
        nodes, weights = _composite(float(d), n_nodes, inner)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    measure = OverlapMeasure(d=float(d), nodes=nodes, weights=weights)
    _check_moments(measure, moment_tolerance)
    logger.debug(
        f"Built overlap measure d={d} nodes={measure.size} breakpoints={inner}"
    )
    return measure


def node_count(degree: int, settings: QuadratureSettings | None = None) -> int:
    """Node count ``max(min_nodes, 4 * degree + 16)``."""
    settings = settings or get_settings().quadrature
    return max(settings.min_nodes, 4 * degree + 16)


def expect(
    f: Callable[[np.ndarray], np.ndarray],
    d: float,
    *,
    degree: int = 0,
    breakpoints: Sequence[float] = (),
    settings: QuadratureSettings | None = None,
) -> float:
    """``E[f(T)]`` under the overlap law, checked by node doubling.

    Args:
        f: Vectorized integrand on ``[-1, 1]``.
        d: Dimension.
        degree: Largest polynomial degree the integrand is known to carry.
        breakpoints: Jump points of ``f``.
        settings: Quadrature settings; defaults to the global settings.

    Raises:
        QuadratureError: If doubling the node count moves the value by more
            than the doubling tolerance.
    """
    return float(
        expect_many(
            lambda t: np.atleast_2d(f(t)),
            d,
            degree=degree,
            breakpoints=breakpoints,
            settings=settings,
        )[0]
    )


def expect_many(
    f: Callable[[np.ndarray], np.ndarray],
    d: float,
    *,
    degree: int = 0,
    breakpoints: Sequence[float] = (),
    settings: QuadratureSettings | None = None,
) -> np.ndarray:
    """Row-wise ``E[f(T)]`` for an integrand returning a ``(rows, nodes)`` array."""
    settings = settings or get_settings().quadrature
    n = node_count(degree, settings)
    bp = tuple(float(b) for b in breakpoints)
    coarse = overlap_measure(d, n, bp, settings.moment_tolerance)
    fine = overlap_measure(d, 2 * n, bp, settings.moment_tolerance)
    v_coarse = np.asarray(f(coarse.nodes)) @ coarse.weights
    v_fine = np.asarray(f(fine.nodes)) @ fine.weights
    drift = float(np.max(np.abs(v_fine - v_coarse))) if v_fine.size else 0.0
    if drift > settings.doubling_tolerance:
        raise QuadratureError(
            f"quadrature at d={d} did not converge: doubling {n} -> {2 * n} "
            f"nodes moved the result by {drift:.3e}"
        )
    return np.asarray(v_fine, dtype=np.float64)
