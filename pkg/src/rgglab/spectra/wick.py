"""Exact moments of inner-product products over a multigraph.

For i.i.d. standard Gaussian vectors ``g_1 .. g_k`` in ``R^d`` and a
multigraph ``H`` on ``[k]``::

    E[prod_{(i,j) in E(H)} <g_i, g_j>]
        = sum_{pi partition of E(H)} (d)_{|pi|} prod_{B in pi} prod_i mu_{deg_B(i)}

where ``(d)_m`` is the falling factorial and ``mu_m`` the m-th standard
Gaussian moment. Blocks of the partition are edges sharing one coordinate.
"""

import logging
import math
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..core.errors import InvalidParameterError, SizeGuardError

logger = logging.getLogger(__name__)

MAX_EDGES = 12


@dataclass(frozen=True)
class Multigraph:
    """Loop-free multigraph on vertices ``0 .. k-1``.

    ``edges`` lists every edge once per unit of multiplicity, as ``(i, j)``
    with ``i < j``, sorted.
    """

    k: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for i, j in self.edges:
            if i == j:
                raise InvalidParameterError(f"self-loop at vertex {i}")
            if not (0 <= i < self.k and 0 <= j < self.k):
                raise InvalidParameterError(f"edge ({i}, {j}) outside [0, {self.k})")
        normalized = tuple(sorted((min(e), max(e)) for e in self.edges))
        object.__setattr__(self, "edges", normalized)

    @classmethod
    def from_multiplicities(
        cls, k: int, multiplicities: dict[tuple[int, int], int]
    ) -> "Multigraph":
        """Build from ``{(i, j): multiplicity}``; multiplicities must be >= 1."""
        edges: list[tuple[int, int]] = []
        for edge, mult in multiplicities.items():
            if mult < 1:
                raise InvalidParameterError(f"multiplicity of {edge} must be >= 1")
            edges.extend([edge] * mult)
        return cls(k=k, edges=tuple(edges))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        counts = Counter(v for edge in self.edges for v in edge)
        return tuple(counts.get(v, 0) for v in range(self.k))

    @property
    def multiplicities(self) -> dict[tuple[int, int], int]:
        return dict(Counter(self.edges))

    @property
    def size(self) -> int:
        return len(self.edges)


def gaussian_moment(m: int) -> int:
    """``E[g^m]`` for standard Gaussian ``g``: ``(m-1)!!`` or 0."""
    if m % 2:
        return 0
    return math.prod(range(m - 1, 0, -2))


def falling_factorial(d: int, m: int) -> int:
    return math.prod(range(d, d - m, -1))


def _restricted_growth(
    edges: tuple[tuple[int, int], ...], k: int
) -> Iterator[list[list[int]]]:
    """Set partitions of the edge list as per-block vertex degree vectors.

    Partitions in which more blocks carry an odd degree than edges remain
    are pruned, since each remaining edge closes at most one such block.
    """
    n_edges = len(edges)
    blocks: list[list[int]] = []

    def odd_blocks() -> int:
        return sum(1 for block in blocks if any(deg % 2 for deg in block))

    def place(pos: int) -> Iterator[list[list[int]]]:
        if pos == n_edges:
            yield blocks
            return
        if odd_blocks() > n_edges - pos:
            return
        i, j = edges[pos]
        for block in blocks:
            block[i] += 1
            block[j] += 1
            yield from place(pos + 1)
            block[i] -= 1
            block[j] -= 1
        fresh = [0] * k
        fresh[i] = fresh[j] = 1
        blocks.append(fresh)
        yield from place(pos + 1)
        blocks.pop()

    yield from place(0)


def _guard(h: Multigraph) -> None:
    if h.size > MAX_EDGES:
        raise SizeGuardError(
            f"multigraph has {h.size} edges; exact enumeration is limited to "
            f"{MAX_EDGES}"
        )


def wick_exact(h: Multigraph, d: int) -> int:
    """Exact integer value of the Gaussian multigraph moment."""
    _guard(h)
    if d < 1:
        raise InvalidParameterError(f"d must be >= 1, got {d}")
    if any(deg % 2 for deg in h.degrees):
        return 0
    total = 0
    for blocks in _restricted_growth(h.edges, h.k):
        weight = 1
        for block in blocks:
            for deg in block:
                weight *= gaussian_moment(deg)
                if not weight:
                    break
            if not weight:
                break
        if weight:
            total += falling_factorial(d, len(blocks)) * weight
    return total


def wick_multigraph_expectation(h: Multigraph, d: int) -> float:
    """``E[prod <g_i, g_j>]`` over the edges of ``h`` for Gaussian ``g``.

    Raises:
        SizeGuardError: If ``h`` has more than 12 edges.
    """
    return float(wick_exact(h, d))


def _sphere_norm_moment(d: int, degree: int) -> int:
    # E|g|^degree = d (d + 2) ... (d + degree - 2) for even degree
    return math.prod(range(d, d + degree - 1, 2))


def spherical_exact(h: Multigraph, d: int) -> Fraction:
    """Exact rational value of the sphere multigraph moment."""
    numerator = wick_exact(h, d)
    if numerator == 0:
        return Fraction(0)
    denominator = math.prod(_sphere_norm_moment(d, deg) for deg in h.degrees)
    return Fraction(numerator, denominator)


def spherical_multigraph_expectation(h: Multigraph, d: int) -> float:
    """``E[prod <x_i, x_j>]`` for independent uniform points on ``S^{d-1}``.

    The Gaussian moment divided by ``prod_v d (d + 2) ... (d + deg(v) - 2)``.
    """
    return float(spherical_exact(h, d))


def small_multigraphs(
    max_vertices: int = 4, max_edges: int = 8, even_only: bool = True
) -> Iterable[Multigraph]:
    """Multigraphs on ``max_vertices`` labelled vertices with few edges.

    Used by the Monte Carlo cross-checks; enumerates multiplicity vectors
    over the pairs of ``[max_vertices]`` up to the edge budget.
    """
    pairs = [(i, j) for i in range(max_vertices) for j in range(i + 1, max_vertices)]

    def extend(
        idx: int, remaining: int, chosen: dict[tuple[int, int], int]
    ) -> Iterator[Multigraph]:
        if idx == len(pairs):
            if chosen:
                yield Multigraph.from_multiplicities(max_vertices, dict(chosen))
            return
        yield from extend(idx + 1, remaining, chosen)
        for mult in range(1, remaining + 1):
            chosen[pairs[idx]] = mult
            yield from extend(idx + 1, remaining - mult, chosen)
            del chosen[pairs[idx]]

    for graph in extend(0, max_edges, {}):
        if not even_only or all(deg % 2 == 0 for deg in graph.degrees):
            yield graph
