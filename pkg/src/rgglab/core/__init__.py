"""Settings, errors, counter-based randomness and overlap quadrature."""

from .errors import (
    ConfigError,
    InvalidParameterError,
    KernelDomainError,
    NoCrossingError,
    QuadratureError,
    RgglabError,
    SizeGuardError,
)
from .quadrature import OverlapMeasure, expect, expect_many, overlap_measure
from .rng import generator, mix, text_hash
from .settings import (
    ApiSettings,
    QuadratureSettings,
    RunSettings,
    Settings,
    SpectrumSettings,
    get_settings,
)

__all__ = [
    "ApiSettings",
    "ConfigError",
    "InvalidParameterError",
    "KernelDomainError",
    "NoCrossingError",
    "OverlapMeasure",
    "QuadratureError",
    "QuadratureSettings",
    "RgglabError",
    "RunSettings",
    "Settings",
    "SizeGuardError",
    "SpectrumSettings",
    "expect",
    "expect_many",
    "generator",
    "get_settings",
    "mix",
    "overlap_measure",
    "text_hash",
]
