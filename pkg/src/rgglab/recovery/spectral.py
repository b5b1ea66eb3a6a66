"""Spectral estimation of the latent Gram matrix."""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from ..core.errors import InvalidParameterError
from ..geometry.points import DiagMode, GramMatrix
from ..graphs.model import StandardizedAdjacency

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecoveryResult:
    """Rank-``d`` Gram estimate with the eigen-gap diagnostics.

    ``eigenvalues`` holds the full spectrum of the standardized adjacency
    ordered by decreasing magnitude; ``gap_d`` and ``gap_d1`` are the
    ``d``-th and ``(d+1)``-th largest magnitudes.
    """

    estimate: np.ndarray
    d: int
    eigenvalues: np.ndarray
    gap_d: float
    gap_d1: float

    @property
    def off_diagonal(self) -> np.ndarray:
        """The estimate with its diagonal set to zero."""
        view = self.estimate.copy()
        np.fill_diagonal(view, 0.0)
        return view

    @property
    def gap_ratio(self) -> float:
        return self.gap_d / self.gap_d1 if self.gap_d1 > 0 else float("inf")


def _spectrum_by_magnitude(entries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values, vectors = eigh(entries, driver="evd")
    order = np.argsort(-np.abs(values), kind="stable")
    return values[order], vectors[:, order]


def spectral_recover(abar: StandardizedAdjacency, d: int) -> RecoveryResult:
    """``X_hat = (n / d) U U^T`` from the ``d`` largest-magnitude eigenvectors.

    Raises:
        InvalidParameterError: If ``d`` is not in ``[1, n)``.
    """
    n = abar.n
    if not 1 <= d < n:
        raise InvalidParameterError(f"d must lie in [1, {n}), got {d}")
    values, vectors = _spectrum_by_magnitude(abar.entries)
    top = vectors[:, :d]
    estimate = (n / d) * (top @ top.T)
    estimate = 0.5 * (estimate + estimate.T)
    magnitudes = np.abs(values)
    return RecoveryResult(
        estimate=estimate,
        d=d,
        eigenvalues=values,
        gap_d=float(magnitudes[d - 1]),
        gap_d1=float(magnitudes[d]),
    )


def relative_mse(estimate: np.ndarray, truth: GramMatrix) -> float:
    """Off-diagonal squared error over the trivial risk ``n (n - 1) / d``.

    Raises:
        InvalidParameterError: On a shape mismatch or a unit-diagonal truth.
    """
    if truth.diag_mode is not DiagMode.ZERO:
        raise InvalidParameterError("relative_mse scores against zero-diagonal Gram")
    if estimate.shape != truth.entries.shape:
        raise InvalidParameterError(
            f"estimate shape {estimate.shape} != truth shape {truth.entries.shape}"
        )
    n = truth.n
    diff = estimate - truth.entries
    np.fill_diagonal(diff, 0.0)
    return float(np.sum(diff * diff) / (n * (n - 1) / truth.d))


def estimate_dimension_by_gap(abar: StandardizedAdjacency, d_max: int) -> int:
    """Pick the ``d <= d_max`` maximizing ``|lambda_d| / |lambda_{d+1}|``.

    Raises:
        InvalidParameterError: If ``d_max`` is not in ``[1, n)``.
    """
    n = abar.n
    if not 1 <= d_max < n:
        raise InvalidParameterError(f"d_max must lie in [1, {n}), got {d_max}")
    values, _ = _spectrum_by_magnitude(abar.entries)
    magnitudes = np.abs(values[: d_max + 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(
            magnitudes[1:] > 0, magnitudes[:-1] / magnitudes[1:], np.inf
        )
    ratios = np.nan_to_num(ratios, nan=1.0)
    d_hat = int(np.argmax(ratios)) + 1
    logger.debug(f"Gap-selected dimension {d_hat} (ratio {ratios[d_hat - 1]:.3g})")
    return d_hat
