"""rgglab - numerical laboratory for random geometric graphs on the sphere."""

__version__ = "0.1.0"

from .core.errors import (
    ConfigError,
    InvalidParameterError,
    KernelDomainError,
    NoCrossingError,
    QuadratureError,
    RgglabError,
    SizeGuardError,
)
from .core.settings import Settings, get_settings
from .detection import power_experiment, predicted_thresholds
from .geometry import sample_gaussian_points, sample_sphere_points
from .graphs import sample_er, sample_rgg
from .harness import fit_threshold, parse_config, run_sweep
from .kernels import parse_kernel, standardize
from .spectra import gegenbauer_coefficients

__all__ = [
    "ConfigError",
    "InvalidParameterError",
    "KernelDomainError",
    "NoCrossingError",
    "QuadratureError",
    "RgglabError",
    "Settings",
    "SizeGuardError",
    "__version__",
    "fit_threshold",
    "gegenbauer_coefficients",
    "get_settings",
    "parse_config",
    "parse_kernel",
    "power_experiment",
    "predicted_thresholds",
    "run_sweep",
    "sample_er",
    "sample_gaussian_points",
    "sample_rgg",
    "sample_sphere_points",
    "standardize",
]
