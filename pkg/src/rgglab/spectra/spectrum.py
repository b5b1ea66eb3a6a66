"""Eigenvalues of the standardized kernel operator and its trace powers."""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from ..core.errors import InvalidParameterError, KernelDomainError, QuadratureError
from ..core.quadrature import expect, expect_many
from ..core.rng import generator
from ..core.settings import QuadratureSettings, SpectrumSettings, get_settings
from ..kernels.density import StandardizedKernel
from ..kernels.zoo import Constant, Linear, Polynomial, chebyshev_grid
from .gegenbauer import harmonic_dim, log_harmonic_dim, normalized_gegenbauer_table

logger = logging.getLogger(__name__)

# Coefficients below this multiple of sup|kappa| are quadrature rounding noise.
NOISE_FLOOR = 1e-13
_BESSEL_SLACK = 1e-8


@dataclass(frozen=True)
class SpectrumRow:
    k: int
    alpha: float
    eigenvalue: float
    multiplicity: int | float
    cumulative_cube: float
    scaled: float


@dataclass(frozen=True)
class KernelSpectrum:
    """Eigenvalues ``lambda_k`` of ``kappa`` with their multiplicities.

    ``eigenvalues[k] = E[kappa(T) P_k(T)]``, which equals
    ``(lam / (k + lam)) alpha_k`` with ``alpha_k`` the coefficient on the
    unnormalized Gegenbauer polynomial and ``lam = (d - 2) / 2``.
    Multiplicities are exact integers for integer ``d``; ``log_multiplicities``
    is filled for every ``d``.
    """

    d: float
    p: float
    kernel_id: str
    eigenvalues: np.ndarray
    alphas: np.ndarray
    log_multiplicities: np.ndarray
    multiplicities: tuple[int, ...] | None
    norm_squared: float
    tail_mass: float

    @property
    def kmax(self) -> int:
        return int(self.eigenvalues.shape[0]) - 1

    def multiplicity(self, k: int) -> int | float:
        if self.multiplicities is not None:
            return self.multiplicities[k]
        return math.exp(self.log_multiplicities[k])

    def scaled_eigenvalue(self, k: int) -> float:
        """``b_k = d^k lambda_k``."""
        lam_k = float(self.eigenvalues[k])
        if lam_k == 0.0:
            return 0.0
        magnitude = math.exp(k * math.log(self.d) + math.log(abs(lam_k)))
        return math.copysign(magnitude, lam_k)

    def weighted_powers(self, m: int) -> np.ndarray:
        """Terms ``lambda_k^m m_k`` computed in log space."""
        lam = self.eigenvalues
        out = np.zeros_like(lam)
        nz = lam != 0.0
        logs = m * np.log(np.abs(lam[nz])) + self.log_multiplicities[nz]
        out[nz] = np.sign(lam[nz]) ** m * np.exp(logs)
        return out

    def table(self) -> list[SpectrumRow]:
        """Rows ordered by ``k`` with the cumulative ``sum lambda_j^3 m_j``."""
        cubes = self.weighted_powers(3)
        rows = []
        running: list[float] = []
        for k in range(self.kmax + 1):
            running.append(float(cubes[k]))
            rows.append(
                SpectrumRow(
                    k=k,
                    alpha=float(self.alphas[k]),
                    eigenvalue=float(self.eigenvalues[k]),
                    multiplicity=self.multiplicity(k),
                    cumulative_cube=math.fsum(running),
                    scaled=self.scaled_eigenvalue(k),
                )
            )
        return rows


def _alphas(eigenvalues: np.ndarray, d: float) -> np.ndarray:
    lam = (d - 2.0) / 2.0
    if lam <= 0:
        return np.full_like(eigenvalues, np.nan)
    k = np.arange(eigenvalues.shape[0])
    return eigenvalues * (k + lam) / lam


def gegenbauer_coefficients(
    sk: StandardizedKernel,
    kmax: int | None = None,
    *,
    spectrum_settings: SpectrumSettings | None = None,
    quadrature_settings: QuadratureSettings | None = None,
) -> KernelSpectrum:
    """Project ``kappa`` on the Gegenbauer basis of the overlap law.

    Starting at ``kmax`` (default from settings), the truncation degree is
    doubled until the last increment ``lambda_k^2 m_k`` falls below the
    adaptive tolerance times ``||kappa||^2`` or the hard cap is reached.
    Coefficients under the quadrature noise floor are set to zero.

    Raises:
        InvalidParameterError: If ``d < 2`` or ``kmax < 1``.
        QuadratureError: If the projections do not converge, or Bessel's
            inequality fails beyond its slack.
    """
    spec_cfg = spectrum_settings or get_settings().spectrum
    d = sk.d
    if d < 2:
        raise InvalidParameterError(f"spectra need d >= 2, got {d}")
    kmax = spec_cfg.kmax if kmax is None else kmax
    if kmax < 1:
        raise InvalidParameterError(f"kmax must be >= 1, got {kmax}")
    kmax = min(kmax, spec_cfg.kmax_cap)

    if sk.is_zero:
        eigenvalues = np.zeros(kmax + 1)
        return _assemble(sk, eigenvalues, 0.0)

    norm_sq = sk.norm_squared(quadrature_settings)
    sup = float(np.max(np.abs(sk(chebyshev_grid()))))
    floor = NOISE_FLOOR * max(sup, 1.0)

    while True:
        eigenvalues = expect_many(
            lambda t, k=kmax: sk(t)[None, :] * normalized_gegenbauer_table(k, d, t),
            d,
            degree=kmax + max(sk.base.degree, 0),
            breakpoints=sk.base.breakpoints,
            settings=quadrature_settings,
        )
        eigenvalues[np.abs(eigenvalues) < floor] = 0.0
        log_mult = np.array([log_harmonic_dim(d, k) for k in range(kmax + 1)])
        cap = np.sqrt(norm_sq * np.exp(-log_mult)) * (1.0 + 1e-6)
        noisy = np.abs(eigenvalues) > cap
        if np.any(noisy):
            logger.warning(
                f"Dropping {int(noisy.sum())} coefficients of {sk.base.kernel_id} "
                f"at d={d} that exceed the per-degree Bessel bound"
            )
            eigenvalues[noisy] = 0.0
        if isinstance(sk.base, Linear | Polynomial):
            eigenvalues[sk.base.degree + 1 :] = 0.0
        # parity: symmetric kernels have every other coefficient zero
        last = max(
            _increment(eigenvalues, d, kmax), _increment(eigenvalues, d, kmax - 1)
        )
        if last < spec_cfg.adaptive_tolerance * norm_sq or kmax >= spec_cfg.kmax_cap:
            break
        kmax = min(2 * kmax, spec_cfg.kmax_cap)
        logger.debug(f"Extending spectrum of {sk.base.kernel_id} to kmax={kmax}")

    spectrum = _assemble(sk, eigenvalues, norm_sq)
    if spectrum.tail_mass < -_BESSEL_SLACK * max(1.0, norm_sq):
        raise QuadratureError(
            f"Bessel inequality violated for {sk.base.kernel_id} at d={d}: "
            f"tail mass {spectrum.tail_mass:.3e}"
        )
    return spectrum


def _increment(eigenvalues: np.ndarray, d: float, k: int) -> float:
    lam_k = float(eigenvalues[k])
    if lam_k == 0.0:
        return 0.0
    return math.exp(2 * math.log(abs(lam_k)) + log_harmonic_dim(d, k))


def _assemble(
    sk: StandardizedKernel, eigenvalues: np.ndarray, norm_sq: float
) -> KernelSpectrum:
    d = sk.d
    kmax = eigenvalues.shape[0] - 1
    log_mult = np.array([log_harmonic_dim(d, k) for k in range(kmax + 1)])
    exact: tuple[int, ...] | None = None
    if float(d).is_integer():
        exact = tuple(harmonic_dim(int(d), k) for k in range(kmax + 1))
    eigenvalues.setflags(write=False)
    spectrum = KernelSpectrum(
        d=d,
        p=sk.p,
        kernel_id=sk.base.kernel_id,
        eigenvalues=eigenvalues,
        alphas=_alphas(eigenvalues, d),
        log_multiplicities=log_mult,
        multiplicities=exact,
        norm_squared=norm_sq,
        tail_mass=0.0,
    )
    captured = math.fsum(spectrum.weighted_powers(2))
    return replace(spectrum, tail_mass=norm_sq - captured)


def rodrigues_coefficient(sk: StandardizedKernel, k: int) -> float:
    """``alpha_k`` through the derivative formula.

    ``alpha_k = (d + 2k - 2) / ((d - 2)(d - 1)(d + 1)...(d + 2k - 3))
    * E[kappa^(k)(T) (1 - T^2)^k]``, for kernels whose ``k``-th derivative
    is known in closed form (polynomial, linear and constant kernels).
    """
    d = sk.d
    if d <= 2:
        raise InvalidParameterError(f"the derivative route needs d > 2, got {d}")
    base = sk.base
    if isinstance(base, Constant):
        coeffs: tuple[float, ...] = (base.p,)
    elif isinstance(base, Linear):
        coeffs = (base.p, base.r)
    elif isinstance(base, Polynomial):
        coeffs = base.coeffs
    else:
        raise KernelDomainError(
            f"{base.kernel_id} has no closed-form derivatives for the derivative route"
        )
    if k == 0:
        return expect(sk, d, degree=len(coeffs))
    deriv = Polynomial(coeffs=coeffs, check_range=False).derivative(k)
    moment = expect(
        lambda t: deriv(t) * (1.0 - t * t) ** k / sk.scale,
        d,
        degree=len(coeffs) + 2 * k,
    )
    log_den = math.log(d - 2) + sum(math.log(d - 1 + 2 * i) for i in range(k))
    return (d + 2 * k - 2) * math.exp(-log_den) * moment


def trace_power(spec: KernelSpectrum, m: int) -> float:
    """``tr(kappa^m) = sum_k lambda_k^m m_k`` with compensated summation.

    Warns when the unresolved tail is more than the configured fraction of
    ``||kappa||^2`` for even ``m``; :func:`trace_tail_bound` gives the error bar.
    """
    if m < 2:
        raise InvalidParameterError(f"m must be >= 2, got {m}")
    if m % 2 == 0 and spec.norm_squared > 0:
        ratio = spec.tail_mass / spec.norm_squared
        if ratio > get_settings().spectrum.bessel_warning:
            logger.warning(
                f"Spectrum of {spec.kernel_id} at d={spec.d} leaves {ratio:.2%} of "
                f"||kappa||^2 unresolved; tr(kappa^{m}) is a lower estimate"
            )
    return math.fsum(spec.weighted_powers(m))


def trace_tail_bound(spec: KernelSpectrum, m: int) -> float:
    """Bound ``tail_mass^(m/2)`` on the truncated part of ``tr(kappa^m)``."""
    if m < 2:
        raise InvalidParameterError(f"m must be >= 2, got {m}")
    return max(spec.tail_mass, 0.0) ** (m / 2)


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    se: float
    samples: int

    def within(self, value: float, sigmas: float = 4.0) -> bool:
        """Whether ``value`` lies within ``sigmas`` standard errors."""
        return abs(self.mean - value) <= sigmas * self.se + 1e-15


def trace_power_mc(
    sk: StandardizedKernel,
    m: int,
    samples: int,
    seed: int,
    chunk: int = 20_000,
) -> MonteCarloEstimate:
    """Monte Carlo ``E[kappa(<y1,y2>) ... kappa(<ym,y1>)]`` over uniform m-cycles."""
    if m < 2:
        raise InvalidParameterError(f"m must be >= 2, got {m}")
    if samples < 2:
        raise InvalidParameterError(f"samples must be >= 2, got {samples}")
    d = sk.d
    if not float(d).is_integer():
        raise InvalidParameterError(f"sampling needs an integer dimension, got {d}")
    if sk.is_zero:
        return MonteCarloEstimate(mean=0.0, se=0.0, samples=samples)
    rng = generator(seed, m, int(d))
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        y = rng.standard_normal((size, m, int(d)))
        y /= np.linalg.norm(y, axis=2, keepdims=True)
        overlaps = np.einsum("sij,sij->si", y, np.roll(y, -1, axis=1))
        values = np.prod(sk(np.clip(overlaps, -1.0, 1.0)), axis=1)
        total += math.fsum(values)
        total_sq += math.fsum(values * values)
        done += size
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return MonteCarloEstimate(mean=mean, se=math.sqrt(var / samples), samples=samples)


def eta_profile(spec: KernelSpectrum, t: np.ndarray) -> np.ndarray:
    """``eta(t) = sum_k lambda_k^2 m_k P_k(t)``, the profile of ``kappa`` squared.

    ``eta(<y, z>) = E_x[kappa(<x, y>) kappa(<x, z>)]``.
    """
    t = np.asarray(t, dtype=np.float64)
    weights = spec.weighted_powers(2)
    table = normalized_gegenbauer_table(spec.kmax, spec.d, t.ravel())
    return (weights @ table).reshape(t.shape)
