"""Tests for motif moments and the z-tests built on them."""

import math
from dataclasses import replace

import pytest
from scipy.stats import norm

from rgglab.core.errors import InvalidParameterError
from rgglab.detection.theory import (
    Decision,
    Statistic,
    decide,
    make_test,
    triangle_theory,
    wedge_theory,
)
from rgglab.kernels.density import standardize
from rgglab.kernels.zoo import Constant, Linear
from rgglab.spectra.spectrum import gegenbauer_coefficients, trace_power


def test_linear_triangle_mean(linear_standardized):
    """n=100, d=20: E_P[T] = C(100,3) b1^3 / d^2."""
    spec = gegenbauer_coefficients(linear_standardized)
    theory = triangle_theory(spec, 100, linear_standardized.p)
    b1 = 0.05 / math.sqrt(0.21)
    assert theory.mean_p == pytest.approx(math.comb(100, 3) * b1**3 / 400, rel=1e-9)
    assert theory.mean_q == 0.0
    assert theory.var_q == math.comb(100, 3)
    assert theory.var_p_bound >= 0.0


def test_bound_at_half_density():
    """(1 - 2p) = 0 leaves 6 C(n,4) tr(kappa^4) + C(n,3)."""
    sk = standardize(Linear(p=0.45, r=0.2), 15)
    spec = gegenbauer_coefficients(sk)
    half = triangle_theory(spec, 50, 0.5)
    expected = 6 * math.comb(50, 4) * trace_power(spec, 4) + math.comb(50, 3)
    assert half.var_p_bound == pytest.approx(expected, rel=1e-12)


def test_zero_kernel_theory():
    """kappa = 0 gives the null moments."""
    spec = gegenbauer_coefficients(standardize(Constant(p=0.4), 10))
    theory = triangle_theory(spec, 30, 0.4)
    assert theory.mean_p == 0.0
    assert theory.var_p_bound == pytest.approx(math.comb(30, 3))


def test_wedge_theory_counts_wedges():
    """There are 3 C(n,3) wedges, each with unit null variance."""
    theory = wedge_theory(10)
    assert theory.statistic is Statistic.WEDGE
    assert theory.var_q == 360
    assert theory.mean_p == 0.0
    assert theory.var_p_bound is None


def test_median_threshold():
    """alpha = 0.5 puts the threshold at the null mean."""
    assert make_test(wedge_theory(10), 0.5).threshold == pytest.approx(0.0)


def test_three_sigma_threshold():
    """z = 3 gives 3 sqrt(C(n,3))."""
    test = make_test(wedge_theory(12), float(norm.sf(3.0)))
    assert test.threshold == pytest.approx(3 * math.sqrt(3 * math.comb(12, 3)))


def test_negative_alternative_flips_side(linear_standardized):
    """A negative E_P[T] moves the rejection region below the null mean."""
    spec = gegenbauer_coefficients(linear_standardized)
    theory = triangle_theory(spec, 20, linear_standardized.p)
    flipped = replace(theory, mean_p=-theory.mean_p)
    test = make_test(flipped, 0.05)
    assert test.side == -1
    assert test.threshold < 0
    assert decide(test, test.threshold - 1.0).decision is Decision.RGG


def test_tie_decides_er():
    """A statistic exactly at the threshold is not a rejection."""
    test = make_test(wedge_theory(10), 0.5)
    assert decide(test, test.threshold).decision is Decision.ER
    assert decide(test, 1.0).decision is Decision.RGG
    assert decide(test, -1.0).decision is Decision.ER


def test_decide_reports_z_score():
    """z = (T - mean_Q) / sqrt(var_Q)."""
    test = make_test(wedge_theory(10), 0.1)
    assert decide(test, 36.0).z_score == pytest.approx(36.0 / math.sqrt(360))


@pytest.mark.parametrize("alpha", [0.0, 0.6, -0.1])
def test_alpha_range(alpha):
    """alpha must lie in (0, 0.5]."""
    with pytest.raises(InvalidParameterError):
        make_test(wedge_theory(10), alpha)


def test_small_n_rejected():
    """Motifs need three vertices."""
    with pytest.raises(InvalidParameterError):
        wedge_theory(2)
