"""Edge density, standardization and L2(mu_d) distances of kernels."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import betainc

from ..core.errors import InvalidParameterError
from ..core.quadrature import expect
from ..core.settings import QuadratureSettings
from .zoo import Constant, HardThreshold, KernelSpec, Linear

logger = logging.getLogger(__name__)


def edge_density(
    kernel: KernelSpec, d: float, settings: QuadratureSettings | None = None
) -> float:
    """``p = E[K(<x1, x2>)]`` for independent uniform points on ``S^{d-1}``.

    Constant and linear kernels are exact; the hard threshold uses the
    regularized incomplete Beta function; everything else is Gauss-Jacobi
    quadrature with a node-doubling convergence check.

    Raises:
        QuadratureError: If the quadrature does not converge.
    """
    if d < 1:
        raise InvalidParameterError(f"d must be >= 1, got {d}")
    if isinstance(kernel, Constant | Linear):
        return float(kernel.p)
    if isinstance(kernel, HardThreshold):
        return hard_threshold_density(kernel.tau, d)
    return expect(
        kernel,
        d,
        degree=kernel.degree,
        breakpoints=kernel.breakpoints,
        settings=settings,
    )


def hard_threshold_density(tau: float, d: float) -> float:
    """``P(T >= tau)`` under the overlap law."""
    if d == 1:
        return 0.5 * (tau <= 1.0) + 0.5 * (tau <= -1.0)
    a = (d - 1.0) / 2.0
    # T = 2B - 1 with B ~ Beta(a, a), and I_x(a, a) = 1 - I_{1-x}(a, a)
    return float(betainc(a, a, min(max((1.0 - tau) / 2.0, 0.0), 1.0)))


@dataclass(frozen=True)
class StandardizedKernel:
    """``kappa(t) = (K(t) - p) / sqrt(p (1 - p))`` in dimension ``d``."""

    base: KernelSpec
    d: float
    p: float

    @property
    def scale(self) -> float:
        return math.sqrt(self.p * (1.0 - self.p))

    def __call__(self, t: ArrayLike) -> np.ndarray:
        return (self.base(t) - self.p) / self.scale

    def extended(self, t: ArrayLike) -> np.ndarray:
        """Standardized values of the clamped real-line extension."""
        values, _ = self.base.extended(t)
        return (values - self.p) / self.scale

    @property
    def is_zero(self) -> bool:
        return isinstance(self.base, Constant)

    def mean(self, settings: QuadratureSettings | None = None) -> float:
        """Quadrature mean of kappa, zero up to rounding."""
        return expect(
            self,
            self.d,
            degree=self.base.degree,
            breakpoints=self.base.breakpoints,
            settings=settings,
        )

    def norm_squared(self, settings: QuadratureSettings | None = None) -> float:
        """``||kappa||^2`` in ``L2(mu_d)``, equal to ``tr(kappa^2)``."""
        return expect(
            lambda t: self(t) ** 2,
            self.d,
            degree=2 * self.base.degree,
            breakpoints=self.base.breakpoints,
            settings=settings,
        )


def standardize(
    kernel: KernelSpec, d: float, settings: QuadratureSettings | None = None
) -> StandardizedKernel:
    """Center and scale a kernel by its edge density in dimension ``d``.

    Raises:
        InvalidParameterError: If the edge density is 0 or 1.
    """
    p = edge_density(kernel, d, settings)
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(
            f"{kernel.kernel_id} has degenerate edge density p={p} at d={d}"
        )
    return StandardizedKernel(base=kernel, d=d, p=p)


def l2_mu_distance(
    first: KernelSpec,
    second: KernelSpec,
    d: float,
    settings: QuadratureSettings | None = None,
) -> float:
    """``||K1 - K2||`` in ``L2(mu_d)``.

    Jump points of either kernel split the quadrature, so discontinuous
    pairs are integrated piecewise.
    """
    if isinstance(first, Constant) and isinstance(second, Constant):
        return abs(first.p - second.p)
    breakpoints = tuple(sorted({*first.breakpoints, *second.breakpoints}))
    value = expect(
        lambda t: (first(t) - second(t)) ** 2,
        d,
        degree=2 * max(first.degree, second.degree),
        breakpoints=breakpoints,
        settings=settings,
    )
    return math.sqrt(max(value, 0.0))
