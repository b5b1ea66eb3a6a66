"""Inner-product kernels, edge density and polynomial approximation."""

from .density import (
    StandardizedKernel,
    edge_density,
    hard_threshold_density,
    l2_mu_distance,
    standardize,
)
from .grammar import parse_kernel
from .taylor import (
    TaylorApproximation,
    approximation_tv_bound,
    taylor_coefficient_profile,
    taylor_kernel,
)
from .zoo import (
    Constant,
    ExpInner,
    HardThreshold,
    KernelSpec,
    Linear,
    Polynomial,
    ScaledCDF,
)

__all__ = [
    "Constant",
    "ExpInner",
    "HardThreshold",
    "KernelSpec",
    "Linear",
    "Polynomial",
    "ScaledCDF",
    "StandardizedKernel",
    "TaylorApproximation",
    "approximation_tv_bound",
    "edge_density",
    "hard_threshold_density",
    "l2_mu_distance",
    "parse_kernel",
    "standardize",
    "taylor_coefficient_profile",
    "taylor_kernel",
]
