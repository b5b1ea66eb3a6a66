"""Graph sampling, standardization and file formats."""

from .io import (
    format_edge_list,
    pack_bits,
    parse_edge_list,
    read_graph,
    unpack_bits,
    write_graph,
)
from .model import (
    MAX_VERTICES,
    ErProvenance,
    Graph,
    PairKernel,
    RggProvenance,
    StandardizedAdjacency,
    edge_uniforms,
    sample_er,
    sample_rgg,
    standardize_adjacency,
)

__all__ = [
    "MAX_VERTICES",
    "ErProvenance",
    "Graph",
    "PairKernel",
    "RggProvenance",
    "StandardizedAdjacency",
    "edge_uniforms",
    "format_edge_list",
    "pack_bits",
    "parse_edge_list",
    "read_graph",
    "sample_er",
    "sample_rgg",
    "standardize_adjacency",
    "unpack_bits",
    "write_graph",
]
