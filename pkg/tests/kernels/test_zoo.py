"""Tests for the inner-product kernel variants."""

import math

import numpy as np
import pytest

from rgglab.core.errors import KernelDomainError
from rgglab.kernels.zoo import (
    Constant,
    ExpInner,
    HardThreshold,
    Linear,
    Polynomial,
    ScaledCDF,
    chebyshev_grid,
)


def test_linear_values_and_id():
    """K(t) = p + r t with a canonical id."""
    k = Linear(p=0.3, r=0.05)
    np.testing.assert_allclose(k([-1.0, 0.0, 1.0]), [0.25, 0.3, 0.35])
    assert k.kernel_id == "linear(p=0.3,r=0.05)"
    assert k.degree == 1


def test_linear_requires_documented_range():
    """0 < r <= p < 1/2 unless overridden."""
    with pytest.raises(ValueError, match="0 < r <= p < 1/2"):
        Linear(p=0.3, r=0.4)
    k = Linear(p=0.6, r=0.3, override=True)
    assert k.kernel_id == "linear(p=0.6,r=0.3,override=1)"


def test_linear_override_still_checks_range():
    """An override cannot produce probabilities outside [0, 1]."""
    with pytest.raises(ValueError, match="leaves"):
        Linear(p=0.6, r=0.5, override=True)


def test_polynomial_range_check():
    """Coefficients that leave [0, 1] on [-1, 1] are rejected."""
    with pytest.raises(ValueError, match="leaves"):
        Polynomial(coeffs=(0.5, 0.8))
    k = Polynomial(coeffs=(0.5, 0.0, 0.25))
    assert k.degree == 2
    assert k.kernel_id == "poly(0.5,0,0.25)"
    assert not k.extends_to_real_line


def test_polynomial_extension_outside_interval_raises():
    """Degree >= 2 polynomials are not defined off [-1, 1]."""
    k = Polynomial(coeffs=(0.5, 0.0, 0.25))
    with pytest.raises(KernelDomainError):
        k.extended([1.5])


def test_linear_extension_clamps_and_counts():
    """Real-line evaluation clamps into [0, 1] and reports how many."""
    k = Linear(p=0.3, r=0.1)
    values, clamped = k.extended([-10.0, 0.0, 10.0])
    np.testing.assert_allclose(values, [0.0, 0.3, 1.0])
    assert clamped == 2


def test_scaled_cdf_kernels():
    """Gaussian and logistic CDFs are 1/2 at zero and increasing."""
    gauss = ScaledCDF(base="gauss", r=2.0)
    logistic = ScaledCDF(base="logistic", r=0.5)
    assert gauss(0.0) == pytest.approx(0.5)
    assert logistic(0.0) == pytest.approx(0.5)
    assert gauss.kernel_id == "gauss(r=2)"
    assert logistic.kernel_id == "logistic(r=0.5)"
    grid = chebyshev_grid()
    assert np.all(np.diff(gauss(grid)) >= 0.0)


def test_gaussian_cdf_taylor_coefficients():
    """Phi(t) = 1/2 + phi(0) (t - t^3/6 + ...)."""
    coeffs = ScaledCDF(base="gauss").taylor_coefficients(3)
    phi0 = 1.0 / math.sqrt(2.0 * math.pi)
    np.testing.assert_allclose(coeffs, [0.5, phi0, 0.0, -phi0 / 6.0], atol=1e-15)


def test_logistic_taylor_coefficients():
    """sigma(x) = 1/2 + x/4 - x^3/48 + ..."""
    coeffs = ScaledCDF(base="logistic").taylor_coefficients(3)
    np.testing.assert_allclose(coeffs, [0.5, 0.25, 0.0, -1.0 / 48.0], atol=1e-15)


def test_scaled_taylor_coefficients_scale_with_r():
    """a_l(r) = r^l a_l(1)."""
    base = ScaledCDF(base="gauss").taylor_coefficients(5)
    scaled = ScaledCDF(base="gauss", r=3.0).taylor_coefficients(5)
    np.testing.assert_allclose(scaled, base * 3.0 ** np.arange(6))


def test_hard_threshold():
    """1{t >= tau} with a breakpoint at tau."""
    k = HardThreshold(tau=0.2)
    np.testing.assert_array_equal(k([0.1, 0.2, 0.9]), [0.0, 1.0, 1.0])
    assert k.breakpoints == (0.2,)
    assert not k.smooth
    with pytest.raises(KernelDomainError):
        k.taylor_coefficients(2)
    with pytest.raises(ValueError, match="tau"):
        HardThreshold(tau=1.5)


def test_constant_kernel():
    """K(t) = p everywhere."""
    k = Constant(p=0.4)
    np.testing.assert_array_equal(k(np.zeros(3)), [0.4, 0.4, 0.4])
    assert k.kernel_id == "const(p=0.4)"


def test_exp_inner_is_distance_kernel_on_sphere():
    """gamma exp(-beta (1 - t)) equals gamma exp(-beta |x - y|^2 / 2)."""
    k = ExpInner(gamma=0.5, beta=2.0)
    x = np.array([1.0, 0.0])
    y = np.array([0.6, 0.8])
    sq = float(np.sum((x - y) ** 2))
    assert k(float(x @ y)) == pytest.approx(0.5 * math.exp(-2.0 * sq / 2.0))
    coeffs = k.taylor_coefficients(2)
    np.testing.assert_allclose(
        coeffs, 0.5 * math.exp(-2.0) * np.array([1.0, 2.0, 2.0])
    )


def test_kernels_are_frozen_and_hashable():
    """Equal parameters give equal, hashable kernels."""
    assert Linear(p=0.3, r=0.05) == Linear(p=0.3, r=0.05)
    assert len({ScaledCDF(base="gauss"), ScaledCDF(base="gauss", r=1.0)}) == 1


def test_taylor_degree_guard():
    """Degrees beyond the supported maximum are refused."""
    with pytest.raises(KernelDomainError):
        ScaledCDF(base="gauss").taylor_coefficients(1000)
