"""Gegenbauer polynomials and spherical-harmonic dimensions."""

import math

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import gammaln

from ..core.errors import InvalidParameterError


def gegenbauer_eval(k: int, lam: float, t: ArrayLike) -> np.ndarray:
    """``C_k^lam(t)`` by the three-term recurrence.

    ``C_0 = 1``, ``C_1 = 2 lam t`` and
    ``k C_k = 2 t (k + lam - 1) C_{k-1} - (k + 2 lam - 2) C_{k-2}``.
    """
    if k < 0:
        raise InvalidParameterError(f"degree must be >= 0, got {k}")
    if lam <= 0:
        raise InvalidParameterError(f"lambda must be positive, got {lam}")
    t = np.asarray(t, dtype=np.float64)
    prev = np.ones_like(t)
    if k == 0:
        return prev
    curr = 2.0 * lam * t
    for j in range(2, k + 1):
        nxt = (2.0 * t * (j + lam - 1) * curr - (j + 2 * lam - 2) * prev) / j
        prev, curr = curr, nxt
    return curr


def normalized_gegenbauer_table(kmax: int, d: float, t: np.ndarray) -> np.ndarray:
    """Rows ``P_0 .. P_kmax`` of ``P_k = C_k^lam / C_k^lam(1)`` at ``t``.

    ``lam = (d - 2) / 2``; for ``d = 2`` the rows are Chebyshev polynomials,
    the ``lam -> 0`` limit. ``P_k(1) = 1`` and ``E[P_k(T)^2] = 1 / m_k``.
    """
    lam = (d - 2.0) / 2.0
    t = np.asarray(t, dtype=np.float64)
    table = np.empty((kmax + 1, t.size), dtype=np.float64)
    table[0] = 1.0
    if kmax >= 1:
        table[1] = t
    for k in range(2, kmax + 1):
        den = 2 * lam + k - 1
        table[k] = (2 * (k + lam - 1) / den) * t * table[k - 1] - (
            (k - 1) / den
        ) * table[k - 2]
    return table


def harmonic_dim(d: int, k: int) -> int:
    """``dim H_k^d``, exact: ``C(d-1+k, d-1) - C(d-3+k, d-1)``.

    ``d = 2`` follows the limit convention: 1 for ``k = 0``, else 2.
    """
    if d < 2:
        raise InvalidParameterError(f"d must be >= 2, got {d}")
    if k < 0:
        raise InvalidParameterError(f"k must be >= 0, got {k}")
    if d == 2:
        return 1 if k == 0 else 2
    return math.comb(d - 1 + k, d - 1) - math.comb(d - 3 + k, d - 1)


def log_harmonic_dim(d: float, k: int) -> float:
    """Log of ``dim H_k^d`` through log-gamma, valid for real ``d > 2``."""
    if k == 0:
        return 0.0
    if d == 2:
        return math.log(2.0)
    return float(
        math.log(2 * k + d - 2)
        - math.log(d - 2)
        + gammaln(d - 2 + k)
        - gammaln(d - 2)
        - gammaln(k + 1)
    )


def gegenbauer_at_one(d: int, k: int) -> int:
    """``C_k^{(d-2)/2}(1) = C(d - 3 + k, k)``."""
    return math.comb(d - 3 + k, k)
