"""Inner-product kernel variants.

Each kernel maps an overlap ``t`` in ``[-1, 1]`` to a connection probability.
Variants are frozen pydantic models so they hash, compare and print stably;
``kernel_id`` is the canonical grammar string (see :mod:`.grammar`).
"""

import logging
import math
from typing import Literal

import numpy as np
from numpy.polynomial import Polynomial as NpPolynomial
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import eval_hermitenorm, expit, ndtr

from ..core.errors import KernelDomainError

logger = logging.getLogger(__name__)

VALIDITY_GRID_SIZE = 10_000
VALIDITY_MARGIN = 1e-6
MAX_TAYLOR_DEGREE = 150


def chebyshev_grid(lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    """Chebyshev points of the first kind mapped to ``[lo, hi]``, endpoints added."""
    k = np.arange(1, VALIDITY_GRID_SIZE - 1, dtype=np.float64)
    x = np.cos((2 * k - 1) * np.pi / (2 * (VALIDITY_GRID_SIZE - 2)))
    x = np.concatenate(([-1.0], np.sort(x), [1.0]))
    return lo + (hi - lo) * (x + 1.0) / 2.0


def _fmt(value: float) -> str:
    value = float(value)
    return str(int(value)) if value.is_integer() else repr(value)


class KernelBase(BaseModel):
    """Shared behaviour of every inner-product kernel."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    def raw(self, t: np.ndarray) -> np.ndarray:
        """Natural formula, possibly outside ``[0, 1]`` off ``[-1, 1]``."""
        raise NotImplementedError

    def __call__(self, t: ArrayLike) -> np.ndarray:
        return self.raw(np.asarray(t, dtype=np.float64))

    @property
    def kernel_id(self) -> str:
        raise NotImplementedError

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return ()

    @property
    def degree(self) -> int:
        """Polynomial degree, or 0 when the kernel is not a polynomial."""
        return 0

    @property
    def smooth(self) -> bool:
        return True

    @property
    def extends_to_real_line(self) -> bool:
        return True

    def extended(self, t: ArrayLike) -> tuple[np.ndarray, int]:
        """Evaluate on arbitrary real ``t``, clamping into ``[0, 1]``.

        Returns:
            (values, clamped): probabilities and how many were clamped.
        """
        t = np.asarray(t, dtype=np.float64)
        if not self.extends_to_real_line and np.any(np.abs(t) > 1.0):
            raise KernelDomainError(
                f"{self.kernel_id} is only defined on [-1, 1], "
                f"got overlaps up to {float(np.max(np.abs(t))):.4g}"
            )
        values = self.raw(t)
        outside = (values < 0.0) | (values > 1.0)
        clamped = int(np.count_nonzero(outside))
        if clamped:
            values = np.clip(values, 0.0, 1.0)
        return values, clamped

    def taylor_coefficients(self, degree: int) -> np.ndarray:
        """Coefficients ``a_0 .. a_degree`` of the expansion at ``t = 0``."""
        raise KernelDomainError(f"{self.kernel_id} has no Taylor expansion at 0")

    def _check_range(self) -> None:
        grid = chebyshev_grid()
        values = self.raw(grid)
        lo, hi = float(np.min(values)), float(np.max(values))
        if lo < 0.0 or hi > 1.0 or not np.all(np.isfinite(values)):
            raise KernelDomainError(
                f"{self.kernel_id} leaves [0, 1] on [-1, 1]: "
                f"observed min={lo:.6g}, max={hi:.6g}"
            )


def _check_degree(degree: int) -> None:
    if degree < 0 or degree > MAX_TAYLOR_DEGREE:
        raise KernelDomainError(
            f"Taylor degree must lie in [0, {MAX_TAYLOR_DEGREE}], got {degree}"
        )


class Linear(KernelBase):
    """``K(t) = p + r t``; requires ``0 < r <= p < 1/2`` unless ``override``."""

    kind: Literal["linear"] = "linear"
    p: float
    r: float
    override: bool = False

    @model_validator(mode="after")
    def _validate(self) -> "Linear":
        if not self.override and not (0.0 < self.r <= self.p < 0.5):
            raise KernelDomainError(
                f"linear kernel needs 0 < r <= p < 1/2 (got p={self.p}, r={self.r}); "
                "pass override=1 to accept other values"
            )
        self._check_range()
        return self

    def raw(self, t: np.ndarray) -> np.ndarray:
        return self.p + self.r * t

    @property
    def kernel_id(self) -> str:
        suffix = ",override=1" if self.override else ""
        return f"linear(p={_fmt(self.p)},r={_fmt(self.r)}{suffix})"

    @property
    def degree(self) -> int:
        return 1

    def taylor_coefficients(self, degree: int) -> np.ndarray:
        _check_degree(degree)
        coeffs = np.zeros(degree + 1)
        coeffs[0] = self.p
        if degree >= 1:
            coeffs[1] = self.r
        return coeffs


class Polynomial(KernelBase):
    """``K(t) = sum_l coeffs[l] t^l``, defined on ``[-1, 1]`` only.

    ``check_range=False`` skips the construction-time validity check; Taylor
    approximants use it and report validity separately.
    """

    kind: Literal["poly"] = "poly"
    coeffs: tuple[float, ...] = Field(min_length=1)
    check_range: bool = True

    @model_validator(mode="after")
    def _validate(self) -> "Polynomial":
        if self.check_range:
            self._check_range()
        return self

    def raw(self, t: np.ndarray) -> np.ndarray:
        return NpPolynomial(self.coeffs)(t)

    @property
    def kernel_id(self) -> str:
        return "poly(" + ",".join(_fmt(c) for c in self.coeffs) + ")"

    @property
    def degree(self) -> int:
        nonzero = np.flatnonzero(np.asarray(self.coeffs))
        return int(nonzero[-1]) if nonzero.size else 0

    @property
    def extends_to_real_line(self) -> bool:
        return self.degree <= 1

    def taylor_coefficients(self, degree: int) -> np.ndarray:
        _check_degree(degree)
        coeffs = np.zeros(degree + 1)
        kept = self.coeffs[: degree + 1]
        coeffs[: len(kept)] = kept
        return coeffs

    def derivative(self, order: int) -> NpPolynomial:
        return NpPolynomial(self.coeffs).deriv(order)


class ScaledCDF(KernelBase):
    """``K(t) = F(r t)`` for the standard Gaussian or logistic CDF ``F``."""

    kind: Literal["cdf"] = "cdf"
    base: Literal["gauss", "logistic"]
    r: float = 1.0

    @model_validator(mode="after")
    def _validate(self) -> "ScaledCDF":
        if not math.isfinite(self.r):
            raise KernelDomainError(f"scale must be finite, got {self.r}")
        return self

    def raw(self, t: np.ndarray) -> np.ndarray:
        x = self.r * t
        return ndtr(x) if self.base == "gauss" else expit(x)

    @property
    def kernel_id(self) -> str:
        return f"{self.base}(r={_fmt(self.r)})"

    def density_at_zero(self) -> float:
        """``F'(0)``: ``1/sqrt(2 pi)`` or ``1/4``."""
        return 1.0 / math.sqrt(2.0 * math.pi) if self.base == "gauss" else 0.25

    def taylor_coefficients(self, degree: int) -> np.ndarray:
        _check_degree(degree)
        derivs = np.zeros(degree + 1)
        derivs[0] = 0.5
        if self.base == "gauss":
            phi0 = 1.0 / math.sqrt(2.0 * math.pi)
            # Phi^(k)(0) = phi^(k-1)(0) = (-1)^(k-1) He_{k-1}(0) phi(0)
            for k in range(1, degree + 1):
                derivs[k] = (-1) ** (k - 1) * eval_hermitenorm(k - 1, 0.0) * phi0
        else:
            # sigma' = sigma (1 - sigma): d/dx P(sigma) = P'(sigma) sigma (1 - sigma)
            poly = NpPolynomial([0.0, 1.0])
            logistic_step = NpPolynomial([0.0, 1.0, -1.0])
            for k in range(1, degree + 1):
                poly = poly.deriv() * logistic_step
                derivs[k] = poly(0.5)
        k = np.arange(degree + 1)
        factorials = np.array([math.factorial(int(i)) for i in k], dtype=np.float64)
        return derivs * self.r**k / factorials


class HardThreshold(KernelBase):
    """``K(t) = 1{t >= tau}``."""

    kind: Literal["hard"] = "hard"
    tau: float = 0.0

    @model_validator(mode="after")
    def _validate(self) -> "HardThreshold":
        if not -1.0 <= self.tau <= 1.0:
            raise KernelDomainError(f"tau must lie in [-1, 1], got {self.tau}")
        return self

    def raw(self, t: np.ndarray) -> np.ndarray:
        return (t >= self.tau).astype(np.float64)

    @property
    def kernel_id(self) -> str:
        return f"hard(tau={_fmt(self.tau)})"

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return (self.tau,) if -1.0 < self.tau < 1.0 else ()

    @property
    def smooth(self) -> bool:
        return False


class Constant(KernelBase):
    """``K(t) = p``; the RGG with this kernel is ``G(n, p)``."""

    kind: Literal["const"] = "const"
    p: float = Field(ge=0.0, le=1.0)

    def raw(self, t: np.ndarray) -> np.ndarray:
        return np.full(np.shape(t), self.p, dtype=np.float64)

    @property
    def kernel_id(self) -> str:
        return f"const(p={_fmt(self.p)})"

    def taylor_coefficients(self, degree: int) -> np.ndarray:
        _check_degree(degree)
        coeffs = np.zeros(degree + 1)
        coeffs[0] = self.p
        return coeffs


class ExpInner(KernelBase):
    """``K(t) = gamma exp(-beta (1 - t))``.

    On the sphere ``||x - y||^2 = 2 - 2t``, so this is the distance kernel
    ``gamma exp(-beta ||x - y||^2 / 2)`` written in the overlap.
    """

    kind: Literal["exp"] = "exp"
    gamma: float = Field(gt=0.0, le=1.0)
    beta: float = Field(gt=0.0)

    def raw(self, t: np.ndarray) -> np.ndarray:
        return self.gamma * np.exp(-self.beta * (1.0 - t))

    @property
    def kernel_id(self) -> str:
        return f"exp(gamma={_fmt(self.gamma)},beta={_fmt(self.beta)})"

    def taylor_coefficients(self, degree: int) -> np.ndarray:
        _check_degree(degree)
        k = np.arange(degree + 1)
        factorials = np.array([math.factorial(int(i)) for i in k], dtype=np.float64)
        return self.gamma * math.exp(-self.beta) * self.beta**k / factorials


KernelSpec = Linear | Polynomial | ScaledCDF | HardThreshold | Constant | ExpInner
