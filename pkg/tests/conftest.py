"""Test configuration and fixtures."""

import pytest

from rgglab.core.settings import (
    ApiSettings,
    QuadratureSettings,
    Settings,
    SpectrumSettings,
)
from rgglab.kernels.density import StandardizedKernel, standardize
from rgglab.kernels.zoo import Constant, HardThreshold, Linear, ScaledCDF


@pytest.fixture
def settings() -> Settings:
    """Default settings, built fresh so tests never share the cached instance."""
    return Settings()


@pytest.fixture
def api_settings() -> Settings:
    """Settings with the HTTP surface enabled."""
    return Settings(api=ApiSettings(max_n=64, max_trials=60))


@pytest.fixture
def quadrature() -> QuadratureSettings:
    return QuadratureSettings()


@pytest.fixture
def spectrum_settings() -> SpectrumSettings:
    return SpectrumSettings()


@pytest.fixture
def gauss_kernel() -> ScaledCDF:
    """The fixed Gaussian CDF kernel ``Phi(t)``."""
    return ScaledCDF(base="gauss", r=1.0)


@pytest.fixture
def linear_kernel() -> Linear:
    return Linear(p=0.3, r=0.05)


@pytest.fixture
def constant_kernel() -> Constant:
    return Constant(p=0.4)


@pytest.fixture
def hard_kernel() -> HardThreshold:
    return HardThreshold(tau=0.0)


@pytest.fixture
def linear_standardized(linear_kernel: Linear) -> StandardizedKernel:
    """Standardized linear kernel at ``d = 20``."""
    return standardize(linear_kernel, 20)
