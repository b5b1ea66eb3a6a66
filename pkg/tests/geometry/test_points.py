"""Tests for latent point clouds and Gram matrices."""

import math

import numpy as np
import pytest
from scipy.stats import ortho_group

from rgglab.core.errors import InvalidParameterError
from rgglab.geometry.points import (
    DiagMode,
    Geometry,
    PointCloud,
    gram_matrix,
    sample_gaussian_points,
    sample_sphere_points,
    sphere_overlap_moment,
    sphere_rows,
)


def test_single_point_on_s0():
    """S^0 = {+1, -1}."""
    cloud = sample_sphere_points(1, 1, seed=3)
    assert cloud.coords.shape == (1, 1)
    assert abs(cloud.coords[0, 0]) == 1.0


def test_sphere_points_have_unit_norm():
    """Every row is on the sphere to 1e-12."""
    cloud = sample_sphere_points(500, 17, seed=1)
    np.testing.assert_allclose(np.linalg.norm(cloud.coords, axis=1), 1.0, atol=1e-12)
    assert cloud.geometry is Geometry.SPHERE_UNIFORM


def test_sphere_mean_vector_is_small():
    """n=5000, d=3: the empirical mean has norm below 0.05."""
    cloud = sample_sphere_points(5000, 3, seed=7)
    assert np.linalg.norm(cloud.coords.mean(axis=0)) < 0.05


def test_overlaps_concentrate_in_high_dimension():
    """At d=64 overlaps above 0.5 in absolute value essentially never occur."""
    cloud = sample_sphere_points(20_000, 64, seed=11)
    overlaps = np.sum(cloud.coords[0::2] * cloud.coords[1::2], axis=1)
    assert np.mean(np.abs(overlaps) < 0.5) >= 0.999


def test_sampling_is_deterministic_and_row_addressable():
    """Row i depends on (seed, i, d) only."""
    a = sample_sphere_points(30, 5, seed=42)
    b = sample_sphere_points(30, 5, seed=42)
    np.testing.assert_array_equal(a.coords, b.coords)
    rows = sphere_rows(42, np.array([29, 3]), 5)
    np.testing.assert_array_equal(rows, a.coords[[29, 3]])
    prefix = sample_sphere_points(10, 5, seed=42)
    np.testing.assert_array_equal(prefix.coords, a.coords[:10])


def test_gaussian_norms():
    """n=10^4, d=16: mean squared norm within 3 sqrt(2/(d n)) of 1."""
    n, d = 10_000, 16
    cloud = sample_gaussian_points(n, d, seed=5)
    mean_sq = float(np.mean(np.sum(cloud.coords**2, axis=1)))
    assert abs(mean_sq - 1.0) < 3 * math.sqrt(2.0 / (d * n))


def test_gaussian_d1_is_standard_normal_scalar():
    """At d=1 the single coordinate has variance 1/d = 1."""
    cloud = sample_gaussian_points(1, 1, seed=2)
    assert cloud.coords.shape == (1, 1)
    assert np.isfinite(cloud.coords[0, 0])


def test_gaussian_overlap_variance():
    """Var(<x1, x2>) is close to 1/d."""
    d = 16
    cloud = sample_gaussian_points(2000, d, seed=9)
    gram = gram_matrix(cloud)
    off = gram.entries[np.triu_indices(cloud.n, 1)]
    assert float(np.var(off)) == pytest.approx(1.0 / d, rel=0.1)


def test_gram_of_duplicate_point():
    """A point paired with itself has overlap exactly 1."""
    x = np.array([[0.6, 0.8], [0.6, 0.8]])
    gram = gram_matrix(PointCloud(coords=x, geometry=Geometry.SPHERE_UNIFORM))
    assert gram.entries[0, 1] == 1.0
    assert gram.entries[0, 0] == 0.0


def test_gram_of_orthogonal_points_and_unit_diagonal():
    """Basis vectors are orthogonal; UNIT mode puts ones on the diagonal."""
    cloud = PointCloud(coords=np.eye(2), geometry=Geometry.SPHERE_UNIFORM)
    gram = gram_matrix(cloud, DiagMode.UNIT)
    np.testing.assert_array_equal(gram.entries, np.eye(2))
    assert gram.off_diagonal_energy() == 0.0


def test_gram_is_rotation_invariant():
    """Rotating every point leaves the Gram matrix unchanged."""
    cloud = sample_sphere_points(40, 6, seed=4)
    rotation = ortho_group.rvs(6, random_state=0)
    before = gram_matrix(cloud).entries
    after = gram_matrix(cloud.rotated(rotation)).entries
    np.testing.assert_allclose(after, before, atol=1e-12)


def test_cloud_is_read_only():
    """Clouds cannot be mutated after construction."""
    cloud = sample_sphere_points(3, 3, seed=0)
    with pytest.raises(ValueError, match="read-only"):
        cloud.coords[0, 0] = 2.0


def test_rejects_non_unit_sphere_rows():
    """Sphere clouds validate their norms."""
    with pytest.raises(InvalidParameterError):
        PointCloud(coords=np.ones((2, 2)), geometry=Geometry.SPHERE_UNIFORM)


@pytest.mark.parametrize(("n", "d"), [(0, 3), (3, 0)])
def test_rejects_empty_shapes(n, d):
    """n and d must be positive."""
    with pytest.raises(InvalidParameterError):
        sample_sphere_points(n, d, seed=0)


def test_overlap_moments():
    """Odd moments vanish, E[T^2] = 1/d and E[T^4] = 3/(d(d+2))."""
    assert sphere_overlap_moment(10, 1) == 0.0
    assert sphere_overlap_moment(10, 2) == pytest.approx(0.1)
    assert sphere_overlap_moment(10, 4) == pytest.approx(0.025)
    assert sphere_overlap_moment(7.5, 4) == pytest.approx(3 / (7.5 * 9.5))


def test_overlap_moment_log_space_branch():
    """Beyond k=60 the log-space formula continues the exact product."""
    d = 30.0
    exact = math.prod((2 * i + 1) / (d + 2 * i) for i in range(31))
    assert sphere_overlap_moment(d, 62) == pytest.approx(exact, rel=1e-9)


def test_overlap_moment_matches_monte_carlo():
    """E[T^4] at d=10 agrees with sampled overlaps."""
    cloud = sample_sphere_points(200_000, 10, seed=8)
    t = np.sum(cloud.coords[0::2] * cloud.coords[1::2], axis=1)
    values = t**4
    se = values.std() / math.sqrt(values.size)
    assert abs(values.mean() - sphere_overlap_moment(10, 4)) < 4 * se
