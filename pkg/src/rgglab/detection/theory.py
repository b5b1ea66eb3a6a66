"""Exact null and alternative moments of the motif statistics, and the tests
built on them."""

import logging
import math
from dataclasses import dataclass
from enum import Enum

from scipy.stats import norm

from ..core.errors import InvalidParameterError
from ..spectra.spectrum import KernelSpectrum, trace_power

logger = logging.getLogger(__name__)


class Statistic(str, Enum):
    TRIANGLE = "triangle"
    WEDGE = "wedge"


class Decision(str, Enum):
    RGG = "rgg"
    ER = "er"


@dataclass(frozen=True)
class MotifTheory:
    """Moments of a signed motif count under the RGG (P) and ER (Q) models.

    ``var_p_bound`` is an upper bound, not an equality, and is ``None`` when
    no bound is available for the statistic.
    """

    statistic: Statistic
    n: int
    mean_p: float
    var_p_bound: float | None
    mean_q: float
    var_q: float


@dataclass(frozen=True)
class MotifTest:
    statistic: Statistic
    alpha: float
    z: float
    side: int
    mean_q: float
    var_q: float

    @property
    def threshold(self) -> float:
        return self.mean_q + self.side * self.z * math.sqrt(self.var_q)


@dataclass(frozen=True)
class TestOutcome:
    __test__ = False

    statistic: float
    threshold: float
    decision: Decision
    z_score: float


def _check_n(n: int) -> None:
    if n < 3:
        raise InvalidParameterError(f"motif statistics need n >= 3, got {n}")


def triangle_theory(spec: KernelSpectrum, n: int, p: float) -> MotifTheory:
    """Moments of the signed triangle count.

    ``E_P[T] = C(n,3) tr(kappa^3)`` and ``Var_Q[T] = C(n,3)``, while
    ``Var_P[T]`` is bounded by::

        6 C(n,4) tr(kappa^4) (1 + max(|1-2p|/(1-p), |1-2p|/p))
            + C(n,3) (1 + (1-2p)^3 / (p(1-p))^{3/2} tr(kappa^3))
    """
    _check_n(n)
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"p must lie in (0, 1), got {p}")
    triples = math.comb(n, 3)
    tr3 = trace_power(spec, 3)
    tr4 = trace_power(spec, 4)
    skew = abs(1.0 - 2.0 * p)
    factor = 1.0 + max(skew / (1.0 - p), skew / p)
    third = (1.0 - 2.0 * p) ** 3 / (p * (1.0 - p)) ** 1.5 * tr3
    bound = 6.0 * math.comb(n, 4) * tr4 * factor + triples * (1.0 + third)
    return MotifTheory(
        statistic=Statistic.TRIANGLE,
        n=n,
        mean_p=triples * tr3,
        var_p_bound=max(bound, 0.0),
        mean_q=0.0,
        var_q=float(triples),
    )


def wedge_theory(n: int, signed_wedge_value: float = 0.0) -> MotifTheory:
    """Moments of the signed wedge count.

    Each of the ``3 C(n,3)`` wedges has expectation ``signed_wedge_value``
    under P; it is zero for every kernel of the sphere overlap.
    """
    _check_n(n)
    wedges = 3 * math.comb(n, 3)
    return MotifTheory(
        statistic=Statistic.WEDGE,
        n=n,
        mean_p=wedges * signed_wedge_value,
        var_p_bound=None,
        mean_q=0.0,
        var_q=float(wedges),
    )


def make_test(theory: MotifTheory, alpha: float) -> MotifTest:
    """One-sided z-test calibrated on the null.

    The threshold is ``mean_q + z_alpha sqrt(var_q)`` on the side of
    ``mean_p``; ``alpha = 0.5`` puts it at the null mean.

    Raises:
        InvalidParameterError: If ``alpha`` is outside ``(0, 0.5]`` or the null
            variance is not positive.
    """
    if not 0.0 < alpha <= 0.5:
        raise InvalidParameterError(f"alpha must lie in (0, 0.5], got {alpha}")
    if theory.var_q <= 0:
        raise InvalidParameterError(f"null variance must be positive: {theory}")
    return MotifTest(
        statistic=theory.statistic,
        alpha=alpha,
        z=float(norm.isf(alpha)),
        side=-1 if theory.mean_p < 0 else 1,
        mean_q=theory.mean_q,
        var_q=theory.var_q,
    )


def decide(test: MotifTest, value: float) -> TestOutcome:
    """Apply the test; a statistic exactly at the threshold decides ER."""
    threshold = test.threshold
    rgg = test.side * value > test.side * threshold
    return TestOutcome(
        statistic=value,
        threshold=threshold,
        decision=Decision.RGG if rgg else Decision.ER,
        z_score=(value - test.mean_q) / math.sqrt(test.var_q),
    )
