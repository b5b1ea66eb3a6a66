"""Random geometric and Erdos-Renyi graphs."""

import logging
import math
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

from ..core.errors import InvalidParameterError, KernelDomainError, SizeGuardError
from ..core.rng import TAG_EDGE, hash_uniform, mix
from ..geometry.points import Geometry, PointCloud
from ..kernels.zoo import KernelSpec

logger = logging.getLogger(__name__)

MAX_VERTICES = 2**14
_ROW_BLOCK = 512


@runtime_checkable
class PairKernel(Protocol):
    """A kernel that turns a point cloud into edge probabilities directly.

    Inner-product kernels go through the Gram matrix instead; distance
    kernels implement this protocol.
    """

    @property
    def kernel_id(self) -> str: ...

    def pair_probabilities(self, cloud: PointCloud, rows: slice) -> np.ndarray:
        """Probabilities for ``cloud.coords[rows]`` against every point."""
        ...


@dataclass(frozen=True)
class RggProvenance:
    kernel_id: str
    cloud_seed: int | None
    edge_seed: int


@dataclass(frozen=True)
class ErProvenance:
    p: float
    edge_seed: int


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph as a dense symmetric boolean matrix."""

    adjacency: np.ndarray
    provenance: RggProvenance | ErProvenance | None = None
    clamped: int = 0

    def __post_init__(self) -> None:
        a = self.adjacency
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidParameterError(f"adjacency must be square, got {a.shape}")
        _check_size(a.shape[0])
        if a.dtype != np.bool_:
            raise InvalidParameterError("adjacency must be a boolean matrix")
        if np.any(np.diag(a)):
            raise InvalidParameterError("adjacency must have a zero diagonal")
        if not np.array_equal(a, a.T):
            raise InvalidParameterError("adjacency must be symmetric")
        a.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.adjacency)) // 2

    @property
    def density(self) -> float:
        pairs = math.comb(self.n, 2)
        return self.edge_count / pairs if pairs else 0.0

    def subgraph(self, m: int) -> "Graph":
        """Induced subgraph on vertices ``0 .. m-1``."""
        sub = self.adjacency[:m, :m].copy()
        return Graph(adjacency=sub, provenance=self.provenance)

    def edges(self) -> np.ndarray:
        """``(i, j)`` pairs with ``i < j`` in row-major order."""
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return np.stack([i, j], axis=1)


@dataclass(frozen=True)
class StandardizedAdjacency:
    """``(A - p) / sqrt(p (1 - p))`` off the diagonal, zero on it."""

    entries: np.ndarray
    p: float

    def __post_init__(self) -> None:
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @property
    def values(self) -> tuple[float, float]:
        """The two off-diagonal values ``(absent, present)``."""
        return -math.sqrt(self.p / (1 - self.p)), math.sqrt((1 - self.p) / self.p)


def _check_size(n: int) -> None:
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if n > MAX_VERTICES:
        raise SizeGuardError(
            f"dense graphs are limited to {MAX_VERTICES} vertices, got {n}"
        )


def edge_uniforms(seed: int, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Per-pair uniforms ``hash(seed, min(i, j), max(i, j))``."""
    rows = np.asarray(rows, dtype=np.int64)[:, None]
    cols = np.asarray(cols, dtype=np.int64)[None, :]
    key = mix(seed, TAG_EDGE)
    return hash_uniform(key, np.minimum(rows, cols), np.maximum(rows, cols))


def _inner_product_block(
    kernel: KernelSpec, cloud: PointCloud, rows: slice
) -> np.ndarray:
    x = cloud.coords
    overlaps = x[rows] @ x.T
    if cloud.geometry is Geometry.SPHERE_UNIFORM:
        np.clip(overlaps, -1.0, 1.0, out=overlaps)
        return kernel(overlaps)
    if not kernel.extends_to_real_line:
        outside = np.triu(np.abs(overlaps) > 1.0, 1 + rows.start)
        if np.any(outside):
            raise KernelDomainError(
                f"{kernel.kernel_id} is only defined on [-1, 1] but the "
                f"{cloud.geometry.value} cloud has overlaps up to "
                f"{float(np.max(np.abs(overlaps[outside]))):.4g}"
            )
    return kernel.raw(overlaps)


def _symmetric_from_blocks(upper: np.ndarray) -> np.ndarray:
    upper = np.triu(upper, 1)
    return upper | upper.T


def sample_rgg(
    kernel: KernelSpec | PairKernel, cloud: PointCloud, seed: int
) -> Graph:
    """Connect each pair independently with probability from the kernel.

    Pair ``(i, j)`` uses the uniform ``hash(seed, min(i, j), max(i, j))``,
    so any vertex sub-block is reproducible in isolation. Probabilities
    outside ``[0, 1]`` (real-line extensions on Gaussian clouds) are clamped
    and counted.

    Raises:
        KernelDomainError: If an inner-product kernel defined only on
            ``[-1, 1]`` meets overlaps outside it.
        SizeGuardError: If ``n`` exceeds the dense-storage limit.
    """
    n = cloud.n
    _check_size(n)
    cols = np.arange(n)
    adjacency = np.zeros((n, n), dtype=np.bool_)
    clamped = 0
    for start in range(0, n, _ROW_BLOCK):
        rows = slice(start, min(start + _ROW_BLOCK, n))
        if isinstance(kernel, PairKernel):
            probs = kernel.pair_probabilities(cloud, rows)
        else:
            probs = _inner_product_block(kernel, cloud, rows)
        upper = cols[None, :] > cols[rows][:, None]
        clamped += int(np.count_nonzero(upper & ((probs < 0.0) | (probs > 1.0))))
        adjacency[rows] = edge_uniforms(seed, cols[rows], cols) < probs
    adjacency = _symmetric_from_blocks(adjacency)
    if clamped:
        logger.warning(
            f"Clamped {clamped} kernel values into [0, 1] while sampling "
            f"{kernel.kernel_id} on a {cloud.geometry.value} cloud (n={n})"
        )
    provenance = RggProvenance(
        kernel_id=kernel.kernel_id, cloud_seed=cloud.seed, edge_seed=seed
    )
    return Graph(adjacency=adjacency, provenance=provenance, clamped=clamped)


def sample_er(n: int, p: float, seed: int) -> Graph:
    """``G(n, p)`` with the same per-pair uniform stream as :func:`sample_rgg`."""
    _check_size(n)
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"p must lie in [0, 1], got {p}")
    cols = np.arange(n)
    adjacency = np.zeros((n, n), dtype=np.bool_)
    for start in range(0, n, _ROW_BLOCK):
        rows = slice(start, min(start + _ROW_BLOCK, n))
        adjacency[rows] = edge_uniforms(seed, cols[rows], cols) < p
    adjacency = _symmetric_from_blocks(adjacency)
    return Graph(adjacency=adjacency, provenance=ErProvenance(p=p, edge_seed=seed))


def standardize_adjacency(g: Graph, p: float) -> StandardizedAdjacency:
    """Two-valued standardized adjacency with a zero diagonal.

    Raises:
        InvalidParameterError: If ``p`` is 0 or 1.
    """
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"p must lie in (0, 1), got {p}")
    absent = -math.sqrt(p / (1.0 - p))
    present = math.sqrt((1.0 - p) / p)
    entries = np.where(g.adjacency, present, absent)
    np.fill_diagonal(entries, 0.0)
    return StandardizedAdjacency(entries=entries, p=p)
