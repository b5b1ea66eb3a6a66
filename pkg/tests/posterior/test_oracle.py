"""Tests for the closed-form single-edge posterior."""

import math

import pytest

from rgglab.core.errors import InvalidParameterError
from rgglab.kernels.density import standardize
from rgglab.kernels.zoo import Constant, ScaledCDF
from rgglab.posterior.oracle import (
    eta_conditional_identity_check,
    overlap_kernel_moment,
    single_edge_posterior_mean,
    single_edge_weighted_square,
)
from rgglab.spectra.spectrum import gegenbauer_coefficients

B1 = 0.05 / math.sqrt(0.21)


def test_zero_kernel_posterior_is_zero():
    """kappa = 0 carries no information about the overlap."""
    sk = standardize(Constant(p=0.4), 10)
    assert single_edge_posterior_mean(sk, 0) == 0.0
    assert single_edge_posterior_mean(sk, 1) == 0.0
    identity = eta_conditional_identity_check(gegenbauer_coefficients(sk), sk)
    assert (identity.lhs, identity.rhs, identity.gap) == (0.0, 0.0, 0.0)


def test_linear_posterior_mean(linear_standardized):
    """E[T kappa(T)] = b1 / d, so the edge mean is sqrt((1-p)/p) b1 / d."""
    assert overlap_kernel_moment(linear_standardized) == pytest.approx(B1 / 20)
    assert single_edge_posterior_mean(linear_standardized, 1) == pytest.approx(
        math.sqrt(0.7 / 0.3) * B1 / 20
    )
    assert single_edge_posterior_mean(linear_standardized, 0) == pytest.approx(
        -math.sqrt(0.3 / 0.7) * B1 / 20
    )


def test_weighted_square_is_squared_moment(linear_standardized):
    """p f(1)^2 + (1-p) f(0)^2 = E[T kappa(T)]^2."""
    moment = overlap_kernel_moment(linear_standardized)
    assert single_edge_weighted_square(linear_standardized) == pytest.approx(
        moment**2, abs=1e-10
    )


def test_eta_identity_linear(linear_standardized):
    """Both sides equal b1^6 / d^4."""
    spec = gegenbauer_coefficients(linear_standardized)
    identity = eta_conditional_identity_check(spec, linear_standardized)
    expected = B1**6 / 20**4
    assert identity.lhs == pytest.approx(expected, rel=1e-10)
    assert identity.rhs == pytest.approx(expected, rel=1e-10)


def test_eta_identity_gaussian_cdf():
    """The quadrature and spectral routes agree for Phi(t) at d=30."""
    sk = standardize(ScaledCDF(base="gauss", r=1.0), 30)
    identity = eta_conditional_identity_check(gegenbauer_coefficients(sk), sk)
    assert identity.relative_gap < 1e-6


def test_eta_identity_dimension_mismatch(linear_kernel):
    """Spectrum and kernel must share d."""
    spec = gegenbauer_coefficients(standardize(linear_kernel, 10))
    with pytest.raises(InvalidParameterError):
        eta_conditional_identity_check(spec, standardize(linear_kernel, 12))


def test_bad_edge_bit(linear_standardized):
    """a is a single adjacency bit."""
    with pytest.raises(InvalidParameterError):
        single_edge_posterior_mean(linear_standardized, 2)
