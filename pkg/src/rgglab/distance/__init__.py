"""Distance kernels on Gaussian latent points and their exact subgraph moments."""

from .experiment import (
    DistanceTrial,
    NonuniversalityResult,
    distance_theories,
    distance_trial,
    standardized_motif_value,
    wedge_nonuniversality_experiment,
)
from .kernel import DistanceKernelSpec
from .subgraphs import (
    SimpleSubgraph,
    laplacian_subgraph_expectation,
    laplacian_subgraph_mc,
    signed_subgraph_expectation,
)

__all__ = [
    "DistanceKernelSpec",
    "DistanceTrial",
    "NonuniversalityResult",
    "SimpleSubgraph",
    "distance_theories",
    "distance_trial",
    "laplacian_subgraph_expectation",
    "laplacian_subgraph_mc",
    "signed_subgraph_expectation",
    "standardized_motif_value",
    "wedge_nonuniversality_experiment",
]
