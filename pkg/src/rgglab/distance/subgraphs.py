"""Exact subgraph moments of distance-kernel graphs through Laplacian spectra."""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
import numpy as np

from ..core.errors import InvalidParameterError, SizeGuardError
from ..core.rng import generator
from ..spectra.spectrum import MonteCarloEstimate

logger = logging.getLogger(__name__)

MAX_SIGNED_EDGES = 16
MAX_LAPLACIAN_VERTICES = 12


@dataclass(frozen=True)
class SimpleSubgraph:
    """Simple graph on vertices ``0 .. v-1`` with edges ``(i, j)``, ``i < j``."""

    v: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.v < 1:
            raise InvalidParameterError(f"v must be >= 1, got {self.v}")
        normalized = tuple(sorted((min(e), max(e)) for e in self.edges))
        for i, j in normalized:
            if i == j or not 0 <= i < j < self.v:
                raise InvalidParameterError(f"invalid edge ({i}, {j}) for v={self.v}")
        if len(set(normalized)) != len(normalized):
            raise InvalidParameterError("simple subgraphs have no repeated edges")
        object.__setattr__(self, "edges", normalized)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "SimpleSubgraph":
        mapping = {node: idx for idx, node in enumerate(sorted(graph.nodes))}
        edges = tuple((mapping[u], mapping[w]) for u, w in graph.edges)
        return cls(v=len(mapping), edges=edges)

    @classmethod
    def edge(cls) -> "SimpleSubgraph":
        return cls(v=2, edges=((0, 1),))

    @classmethod
    def wedge(cls) -> "SimpleSubgraph":
        return cls(v=3, edges=((0, 1), (1, 2)))

    @classmethod
    def triangle(cls) -> "SimpleSubgraph":
        return cls.from_networkx(nx.cycle_graph(3))

    @classmethod
    def cycle(cls, k: int) -> "SimpleSubgraph":
        return cls.from_networkx(nx.cycle_graph(k))

    @property
    def size(self) -> int:
        return len(self.edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.v))
        graph.add_edges_from(self.edges)
        return graph

    def sub(self, edges: tuple[tuple[int, int], ...]) -> "SimpleSubgraph":
        """Spanning subgraph with the given edge subset."""
        return SimpleSubgraph(v=self.v, edges=edges)

    @cached_property
    def laplacian_eigenvalues(self) -> np.ndarray:
        if self.v > MAX_LAPLACIAN_VERTICES:
            raise SizeGuardError(
                f"Laplacian spectra are limited to {MAX_LAPLACIAN_VERTICES} "
                f"vertices, got {self.v}"
            )
        values = np.sort(nx.laplacian_spectrum(self.to_networkx()))
        values = np.maximum(values, 0.0)
        values.setflags(write=False)
        return values


def laplacian_subgraph_expectation(
    h: SimpleSubgraph, gamma: float, beta: float, d: int
) -> float:
    """``E[prod_{e in H} A_e] = gamma^|H| prod_i (1 + beta lambda_i / d)^(-d/2)``.

    ``lambda_i`` are the Laplacian eigenvalues of ``H`` and the latent points
    are ``N(0, I_d / d)``.
    """
    if d < 1:
        raise InvalidParameterError(f"d must be >= 1, got {d}")
    log_value = -0.5 * d * float(np.sum(np.log1p(beta * h.laplacian_eigenvalues / d)))
    return gamma**h.size * math.exp(log_value)


def signed_subgraph_expectation(
    h: SimpleSubgraph, gamma: float, beta: float, d: int
) -> float:
    """``E[prod_{e in H} (A_e - p)]`` by inclusion-exclusion over ``F <= H``.

    Exact at every ``d``: ``sum_F (-p)^{|H \\ F|} E[prod_{e in F} A_e]``.

    Raises:
        SizeGuardError: If ``H`` has more than 16 edges.
    """
    if h.size > MAX_SIGNED_EDGES:
        raise SizeGuardError(
            f"inclusion-exclusion is limited to {MAX_SIGNED_EDGES} edges, "
            f"got {h.size}"
        )
    p = laplacian_subgraph_expectation(SimpleSubgraph.edge(), gamma, beta, d)
    terms = []
    for k in range(h.size + 1):
        for subset in itertools.combinations(h.edges, k):
            moment = laplacian_subgraph_expectation(h.sub(subset), gamma, beta, d)
            terms.append((-p) ** (h.size - k) * moment)
    return math.fsum(terms)


def laplacian_subgraph_mc(
    h: SimpleSubgraph,
    gamma: float,
    beta: float,
    d: int,
    samples: int,
    seed: int,
    chunk: int = 50_000,
) -> MonteCarloEstimate:
    """Monte Carlo ``E[prod_{e in H} K(x_i, x_j)]`` over Gaussian clouds."""
    if samples < 2:
        raise InvalidParameterError(f"samples must be >= 2, got {samples}")
    rng = generator(seed, h.v, d)
    heads = np.array([e[0] for e in h.edges], dtype=np.int64)
    tails = np.array([e[1] for e in h.edges], dtype=np.int64)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        x = rng.standard_normal((size, h.v, d)) / math.sqrt(d)
        diff = x[:, heads, :] - x[:, tails, :]
        sq = np.einsum("sed,sed->s", diff, diff)
        values = gamma**h.size * np.exp(-0.5 * beta * sq)
        total += math.fsum(values)
        total_sq += math.fsum(values * values)
        done += size
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return MonteCarloEstimate(mean=mean, se=math.sqrt(var / samples), samples=samples)
