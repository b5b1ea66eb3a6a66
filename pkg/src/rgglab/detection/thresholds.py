"""Predicted critical dimensions for detection and estimation."""

import logging
import math
from dataclasses import dataclass

from scipy.optimize import bisect

from ..core.errors import InvalidParameterError
from ..core.settings import QuadratureSettings, SpectrumSettings
from ..kernels.density import standardize
from ..kernels.zoo import KernelSpec, Linear
from ..spectra.spectrum import KernelSpectrum, gegenbauer_coefficients, trace_power

logger = logging.getLogger(__name__)

D_LOW = 3.0
D_HIGH = 1e8
REFERENCE_D = 1e4


@dataclass(frozen=True)
class ThresholdPrediction:
    """Conjectured thresholds for one kernel at one ``n``.

    ``d_test`` solves ``n^3 tr(kappa^3)^2 = 1``; it is ``None`` when the
    search interval holds no crossing. The closed forms use the scaled
    eigenvalue ``b_1`` taken at ``reference_d`` (``d_test`` when found).
    """

    kernel_id: str
    n: int
    d_test: float | None
    crossed: bool
    reference_d: float
    b1: float
    d_test_closed: float | None
    d_est: float | None
    k0: int | None
    b_k0: float | None
    d_test_general: float | None
    d_test_linear: float | None


def spectrum_at(
    kernel: KernelSpec,
    d: float,
    spectrum_settings: SpectrumSettings | None = None,
    quadrature_settings: QuadratureSettings | None = None,
) -> KernelSpectrum:
    sk = standardize(kernel, d, quadrature_settings)
    return gegenbauer_coefficients(
        sk,
        spectrum_settings=spectrum_settings,
        quadrature_settings=quadrature_settings,
    )


def _detection_gap(
    kernel: KernelSpec,
    n: int,
    log_d: float,
    spectrum_settings: SpectrumSettings | None,
    quadrature_settings: QuadratureSettings | None,
) -> float:
    spec = spectrum_at(kernel, math.exp(log_d), spectrum_settings, quadrature_settings)
    tr3 = trace_power(spec, 3)
    if tr3 == 0.0:
        return -math.inf
    return 3.0 * math.log(n) + 2.0 * math.log(abs(tr3))


def predicted_thresholds(
    kernel: KernelSpec,
    n: int,
    *,
    d_low: float = D_LOW,
    d_high: float = D_HIGH,
    spectrum_settings: SpectrumSettings | None = None,
    quadrature_settings: QuadratureSettings | None = None,
) -> ThresholdPrediction:
    """Solve ``n^3 tr(kappa^3)^2 = 1`` for ``d`` and report the closed forms.

    The search bisects ``3 log n + 2 log|tr(kappa^3)|`` in ``log d`` over
    ``[d_low, d_high]``, recomputing the spectrum at every step. Alongside
    come ``b_1^{3/2} n^{3/4}`` for detection, ``b_1 n^{1/2}`` for estimation,
    ``b_k0^{3/(2 k0)} n^{3/(4 k0)}`` with ``k0`` the first nonvanishing
    degree, and ``(n r^2 / p)^{3/4}`` for the linear kernel.

    Raises:
        InvalidParameterError: If ``n < 3`` or the interval is empty.
    """
    if n < 3:
        raise InvalidParameterError(f"n must be >= 3, got {n}")
    if not 2.0 < d_low < d_high:
        raise InvalidParameterError(f"bad search interval [{d_low}, {d_high}]")

    def gap(log_d: float) -> float:
        return _detection_gap(
            kernel, n, log_d, spectrum_settings, quadrature_settings
        )

    lo, hi = math.log(d_low), math.log(d_high)
    gap_lo, gap_hi = gap(lo), gap(hi)
    d_test: float | None = None
    if gap_lo > 0.0 > gap_hi:
        d_test = math.exp(bisect(gap, lo, hi, xtol=1e-10))
    else:
        logger.info(
            f"No detection crossing for {kernel.kernel_id} at n={n} on "
            f"[{d_low:g}, {d_high:g}] (gap {gap_lo:.3g} .. {gap_hi:.3g})"
        )

    reference_d = d_test if d_test is not None else REFERENCE_D
    spec = spectrum_at(kernel, reference_d, spectrum_settings, quadrature_settings)
    b1 = spec.scaled_eigenvalue(1)
    k0 = next((k for k in range(1, spec.kmax + 1) if spec.eigenvalues[k]), None)
    b_k0 = spec.scaled_eigenvalue(k0) if k0 is not None else None
    d_test_linear = None
    if isinstance(kernel, Linear):
        d_test_linear = (n * kernel.r**2 / kernel.p) ** 0.75

    return ThresholdPrediction(
        kernel_id=kernel.kernel_id,
        n=n,
        d_test=d_test,
        crossed=d_test is not None,
        reference_d=reference_d,
        b1=b1,
        d_test_closed=abs(b1) ** 1.5 * n**0.75 if b1 else None,
        d_est=abs(b1) * math.sqrt(n) if b1 else None,
        k0=k0,
        b_k0=b_k0,
        d_test_general=(
            abs(b_k0) ** (1.5 / k0) * n ** (0.75 / k0) if k0 and b_k0 else None
        ),
        d_test_linear=d_test_linear,
    )
