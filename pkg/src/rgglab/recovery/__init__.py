"""Spectral recovery of the latent Gram matrix."""

from .spectral import (
    RecoveryResult,
    estimate_dimension_by_gap,
    relative_mse,
    spectral_recover,
)
from .sweep import (
    RecoveryCurve,
    RecoveryPoint,
    RecoveryTrial,
    recovery_point,
    recovery_sweep,
    recovery_trial,
)

__all__ = [
    "RecoveryCurve",
    "RecoveryPoint",
    "RecoveryResult",
    "RecoveryTrial",
    "estimate_dimension_by_gap",
    "recovery_point",
    "recovery_sweep",
    "recovery_trial",
    "relative_mse",
    "spectral_recover",
]
