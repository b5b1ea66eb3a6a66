"""Latent point clouds and their Gram matrices."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from ..core.errors import InvalidParameterError
from ..core.rng import TAG_GAUSSIAN, TAG_SPHERE, counter_normals, mix

logger = logging.getLogger(__name__)

_MAX_REDRAWS = 64


class Geometry(str, Enum):
    SPHERE_UNIFORM = "sphere"
    GAUSSIAN_ISOTROPIC = "gaussian"


class DiagMode(str, Enum):
    ZERO = "zero"
    UNIT = "unit"


@dataclass(frozen=True)
class PointCloud:
    """``n`` latent points in ``R^d``, one per row of ``coords``."""

    coords: np.ndarray
    geometry: Geometry
    seed: int | None = None

    def __post_init__(self) -> None:
        shape = self.coords.shape
        if self.coords.ndim != 2 or shape[0] < 1 or shape[1] < 1:
            raise InvalidParameterError(
                f"coords must be a non-empty n x d matrix, got shape {shape}"
            )
        if self.geometry is Geometry.SPHERE_UNIFORM:
            norms = np.linalg.norm(self.coords, axis=1)
            if np.max(np.abs(norms - 1.0)) > 1e-12:
                raise InvalidParameterError("sphere cloud rows must have unit norm")
        self.coords.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.coords.shape[0])

    @property
    def d(self) -> int:
        return int(self.coords.shape[1])

    def rotated(self, rotation: np.ndarray) -> "PointCloud":
        """Apply an orthogonal map to every point."""
        coords = self.coords @ rotation.T
        if self.geometry is Geometry.SPHERE_UNIFORM:
            coords = coords / np.linalg.norm(coords, axis=1, keepdims=True)
        return PointCloud(coords=coords, geometry=self.geometry, seed=self.seed)


@dataclass(frozen=True)
class GramMatrix:
    """Pairwise inner products with a fixed diagonal convention."""

    entries: np.ndarray
    diag_mode: DiagMode
    d: int
    geometry: Geometry = field(default=Geometry.SPHERE_UNIFORM)

    def __post_init__(self) -> None:
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def off_diagonal_energy(self) -> float:
        """Squared Frobenius norm over ``i != j``."""
        x = self.entries
        return float(np.sum(x * x) - np.sum(np.diag(x) ** 2))


def _check_shape(n: int, d: int) -> None:
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if d < 1:
        raise InvalidParameterError(f"d must be >= 1, got {d}")


def sphere_rows(seed: int, rows: np.ndarray, d: int) -> np.ndarray:
    """Uniform sphere points for the given row indices of the ``seed`` stream.

    Row ``i`` depends only on ``(seed, i, d)``. A Gaussian row that is exactly
    zero is regenerated from the next redraw stream.
    """
    rows = np.asarray(rows, dtype=np.int64)
    out = counter_normals(mix(seed, TAG_SPHERE), rows, d)
    norms = np.linalg.norm(out, axis=1)
    attempt = 0
    while np.any(norms == 0.0):
        attempt += 1
        if attempt > _MAX_REDRAWS:
            raise InvalidParameterError("could not draw a non-zero Gaussian row")
        bad = np.flatnonzero(norms == 0.0)
        logger.debug(f"Redrawing {bad.size} zero rows (attempt {attempt})")
        out[bad] = counter_normals(mix(seed, TAG_SPHERE, attempt), rows[bad], d)
        norms = np.linalg.norm(out, axis=1)
    return out / norms[:, None]


def sample_sphere_points(n: int, d: int, seed: int) -> PointCloud:
    """Sample ``n`` independent uniform points on ``S^{d-1}``.

    Args:
        n: Number of points.
        d: Ambient dimension.
        seed: Master seed; the cloud is a deterministic function of
            ``(n, d, seed)`` and row ``i`` of ``(i, d, seed)``.

    Returns:
        PointCloud: A ``SPHERE_UNIFORM`` cloud.
    """
    _check_shape(n, d)
    coords = sphere_rows(seed, np.arange(n), d)
    return PointCloud(coords=coords, geometry=Geometry.SPHERE_UNIFORM, seed=seed)


def sample_gaussian_points(n: int, d: int, seed: int) -> PointCloud:
    """Sample ``n`` i.i.d. points from ``N(0, I_d / d)``."""
    _check_shape(n, d)
    coords = counter_normals(mix(seed, TAG_GAUSSIAN), np.arange(n), d) / math.sqrt(d)
    return PointCloud(coords=coords, geometry=Geometry.GAUSSIAN_ISOTROPIC, seed=seed)


def gram_matrix(cloud: PointCloud, diag_mode: DiagMode = DiagMode.ZERO) -> GramMatrix:
    """Inner-product matrix of a cloud with the requested diagonal."""
    x = cloud.coords @ cloud.coords.T
    x = (x + x.T) / 2.0
    if cloud.geometry is Geometry.SPHERE_UNIFORM:
        np.clip(x, -1.0, 1.0, out=x)
    np.fill_diagonal(x, 0.0 if diag_mode is DiagMode.ZERO else 1.0)
    return GramMatrix(
        entries=x, diag_mode=diag_mode, d=cloud.d, geometry=cloud.geometry
    )


def sphere_overlap_moment(d: float, k: int) -> float:
    """``E[<x1, x2>^k]`` for independent uniform points on ``S^{d-1}``.

    Zero for odd ``k``; ``(k-1)!! / (d (d+2) ... (d+k-2))`` for even ``k``.
    Exact rational arithmetic up to ``k = 60`` for integer ``d``, log space
    beyond.
    """
    if d < 1:
        raise InvalidParameterError(f"d must be >= 1, got {d}")
    if k < 0:
        raise InvalidParameterError(f"k must be >= 0, got {k}")
    if k % 2:
        return 0.0
    half = k // 2
    if k <= 60 and float(d).is_integer():
        value = Fraction(1)
        for i in range(half):
            value *= Fraction(2 * i + 1, int(d) + 2 * i)
        return float(value)
    if k <= 60:
        return math.prod((2 * i + 1) / (d + 2 * i) for i in range(half))
    log_num = gammaln(2 * half + 1) - half * math.log(2.0) - gammaln(half + 1)
    log_den = half * math.log(2.0) + gammaln(d / 2.0 + half) - gammaln(d / 2.0)
    return float(math.exp(log_num - log_den))
