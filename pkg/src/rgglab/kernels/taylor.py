"""Polynomial approximation of smooth kernels."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..core.errors import InvalidParameterError, KernelDomainError
from ..core.settings import QuadratureSettings
from .density import l2_mu_distance
from .zoo import VALIDITY_MARGIN, KernelSpec, Polynomial, chebyshev_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TaylorApproximation:
    """A degree-``degree`` Taylor polynomial and its validity verdict.

    ``valid`` is True when the polynomial stays inside
    ``[margin, 1 - margin]`` on the checked domain; the observed extremes
    are kept either way.
    """

    kernel: Polynomial
    degree: int
    valid: bool
    observed_min: float
    observed_max: float


def taylor_kernel(
    kernel: KernelSpec,
    degree: int,
    domain: tuple[float, float] = (-1.0, 1.0),
    margin: float = VALIDITY_MARGIN,
) -> TaylorApproximation:
    """Degree-``degree`` Taylor approximant of ``kernel`` at ``t = 0``.

    Invalid approximants are flagged, never clamped.

    Args:
        kernel: A kernel with a Taylor expansion at 0.
        degree: Truncation degree ``L``.
        domain: Interval on which validity is checked.
        margin: Required distance from 0 and 1.

    Raises:
        KernelDomainError: If the kernel has no expansion at 0.
    """
    if degree < 0:
        raise InvalidParameterError(f"degree must be >= 0, got {degree}")
    if isinstance(kernel, Polynomial) and degree >= kernel.degree:
        approx = kernel
    else:
        coeffs = kernel.taylor_coefficients(degree)
        approx = Polynomial(coeffs=tuple(float(c) for c in coeffs), check_range=False)
    values = approx(chebyshev_grid(*domain))
    lo, hi = float(np.min(values)), float(np.max(values))
    valid = lo >= margin and hi <= 1.0 - margin
    if not valid:
        logger.warning(
            f"Taylor approximant of {kernel.kernel_id} at degree {degree} is not a "
            f"valid kernel on {domain}: min={lo:.6g}, max={hi:.6g}"
        )
    return TaylorApproximation(
        kernel=approx, degree=degree, valid=valid, observed_min=lo, observed_max=hi
    )


def taylor_coefficient_profile(
    kernel: KernelSpec, degree: int
) -> tuple[np.ndarray, float]:
    """Decay profile ``|a_l| sqrt(l!)`` of the Taylor coefficients.

    For the CDF kernels the profile is bounded by ``C0^l``; the returned
    constant is the smallest such ``C0`` for ``1 <= l <= degree``.

    Returns:
        (profile, c0): profile for ``l = 0 .. degree`` and the fitted constant.
    """
    coeffs = kernel.taylor_coefficients(degree)
    roots = np.sqrt([float(math.factorial(i)) for i in range(degree + 1)])
    profile = np.abs(coeffs) * roots
    ell = np.arange(1, degree + 1)
    nonzero = profile[1:] > 0
    if not np.any(nonzero):
        return profile, 0.0
    c0 = float(np.max(profile[1:][nonzero] ** (1.0 / ell[nonzero])))
    return profile, c0


def approximation_tv_bound(
    kernel: KernelSpec,
    approx: KernelSpec,
    n: int,
    d: float,
    settings: QuadratureSettings | None = None,
) -> float:
    """Budget ``2 C(n, 2) ||K - K~||`` for swapping a kernel by an approximant.

    Raises:
        KernelDomainError: If the approximant is not a valid kernel.
    """
    if isinstance(approx, Polynomial) and not approx.check_range:
        values = approx(chebyshev_grid())
        if np.min(values) < 0.0 or np.max(values) > 1.0:
            raise KernelDomainError(
                f"{approx.kernel_id} is not a probability kernel on [-1, 1]"
            )
    return 2.0 * math.comb(n, 2) * l2_mu_distance(kernel, approx, d, settings)
