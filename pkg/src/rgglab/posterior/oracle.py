"""Closed-form single-edge posterior quantities."""

import math
from dataclasses import dataclass

from ..core.errors import InvalidParameterError
from ..core.quadrature import expect
from ..core.settings import QuadratureSettings
from ..kernels.density import StandardizedKernel
from ..spectra.spectrum import KernelSpectrum, eta_profile, trace_power


def overlap_kernel_moment(
    sk: StandardizedKernel, settings: QuadratureSettings | None = None
) -> float:
    """``E[T kappa(T)]`` under the overlap law."""
    if sk.is_zero:
        return 0.0
    return expect(
        lambda t: t * sk(t),
        sk.d,
        degree=sk.base.degree + 1,
        breakpoints=sk.base.breakpoints,
        settings=settings,
    )


def single_edge_posterior_mean(
    sk: StandardizedKernel, a: int, settings: QuadratureSettings | None = None
) -> float:
    """``E[X_12 | A_12 = a]``.

    Equals ``(-1)^(1-a) (p / (1-p))^(1/2 - a) E[X_12 kappa(X_12)]``.
    """
    if a not in (0, 1):
        raise InvalidParameterError(f"a must be 0 or 1, got {a}")
    p = sk.p
    sign = 1.0 if a == 1 else -1.0
    return sign * (p / (1.0 - p)) ** (0.5 - a) * overlap_kernel_moment(sk, settings)


def single_edge_weighted_square(
    sk: StandardizedKernel, settings: QuadratureSettings | None = None
) -> float:
    """``p f(1)^2 + (1 - p) f(0)^2`` for ``f`` the single-edge posterior mean."""
    p = sk.p
    return p * single_edge_posterior_mean(sk, 1, settings) ** 2 + (
        1.0 - p
    ) * single_edge_posterior_mean(sk, 0, settings) ** 2


@dataclass(frozen=True)
class EtaIdentity:
    lhs: float
    rhs: float
    gap: float

    @property
    def relative_gap(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs))
        return self.gap / scale if scale else 0.0


def eta_conditional_identity_check(
    spec: KernelSpectrum,
    sk: StandardizedKernel,
    settings: QuadratureSettings | None = None,
) -> EtaIdentity:
    """Check ``E[(E[eta(X_12) | A_12])^2] = tr(kappa^3)^2``.

    ``eta`` is the profile of the squared operator. The left side goes
    through the conditional means ``E[eta | A_12 = 1] = sqrt((1-p)/p) c`` and
    ``E[eta | A_12 = 0] = -sqrt(p/(1-p)) c`` with ``c = E[eta(T) kappa(T)]``
    computed by quadrature; the right side is the spectral trace.
    """
    if not math.isclose(spec.d, sk.d):
        raise InvalidParameterError(f"spectrum at d={spec.d} but kernel at d={sk.d}")
    p = sk.p
    if sk.is_zero:
        cross = 0.0
    else:
        cross = expect(
            lambda t: eta_profile(spec, t) * sk(t),
            sk.d,
            degree=spec.kmax + sk.base.degree,
            breakpoints=sk.base.breakpoints,
            settings=settings,
        )
    given_edge = math.sqrt((1.0 - p) / p) * cross
    given_gap = -math.sqrt(p / (1.0 - p)) * cross
    lhs = p * given_edge**2 + (1.0 - p) * given_gap**2
    rhs = trace_power(spec, 3) ** 2
    return EtaIdentity(lhs=lhs, rhs=rhs, gap=abs(lhs - rhs))
