"""Posterior oracles at small ``(n, d)``."""

from .ensemble import (
    G2Estimate,
    WeightedEnsemble,
    g2_estimate,
    posterior_ensemble,
    posterior_mean_overlap,
    posterior_overlap,
    replica_square,
)
from .oracle import (
    EtaIdentity,
    eta_conditional_identity_check,
    overlap_kernel_moment,
    single_edge_posterior_mean,
    single_edge_weighted_square,
)

__all__ = [
    "EtaIdentity",
    "G2Estimate",
    "WeightedEnsemble",
    "eta_conditional_identity_check",
    "g2_estimate",
    "overlap_kernel_moment",
    "posterior_ensemble",
    "posterior_mean_overlap",
    "posterior_overlap",
    "replica_square",
    "single_edge_posterior_mean",
    "single_edge_weighted_square",
]
