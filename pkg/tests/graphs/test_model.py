"""Tests for graph sampling and standardization."""

import math

import numpy as np
import pytest

from rgglab.core.errors import InvalidParameterError, KernelDomainError
from rgglab.geometry.points import sample_gaussian_points, sample_sphere_points
from rgglab.graphs.model import (
    ErProvenance,
    Graph,
    RggProvenance,
    edge_uniforms,
    sample_er,
    sample_rgg,
    standardize_adjacency,
)
from rgglab.kernels.zoo import Constant, Linear, Polynomial


def test_constant_one_is_complete():
    """K = 1 connects every pair."""
    cloud = sample_sphere_points(20, 4, seed=1)
    g = sample_rgg(Constant(p=1.0), cloud, seed=2)
    assert g.edge_count == 190
    assert g.density == 1.0


def test_constant_zero_is_empty():
    """K = 0 connects nothing."""
    cloud = sample_sphere_points(20, 4, seed=1)
    assert sample_rgg(Constant(p=0.0), cloud, seed=2).edge_count == 0


def test_er_extremes():
    """p = 0 and p = 1 give the empty and complete graphs."""
    assert sample_er(15, 0.0, seed=3).edge_count == 0
    assert sample_er(15, 1.0, seed=3).edge_count == 105


def test_linear_rgg_density():
    """Linear p=0.3, r=0.1, n=2000, d=50: density within 4 binomial SE of p."""
    n, d = 2000, 50
    kernel = Linear(p=0.3, r=0.1)
    g = sample_rgg(kernel, sample_sphere_points(n, d, seed=4), seed=5)
    p = kernel.p
    assert abs(g.density - p) < 4 * math.sqrt(p * (1 - p) / math.comb(n, 2))


def test_er_density():
    """n such that ~10^4 pairs at p = 1/2."""
    n = 142
    g = sample_er(n, 0.5, seed=6)
    assert abs(g.density - 0.5) < 4 * 0.5 / math.sqrt(math.comb(n, 2))


def test_rgg_is_deterministic_with_provenance(gauss_kernel):
    """Same cloud and seed give the same graph, tagged with its inputs."""
    cloud = sample_sphere_points(50, 6, seed=7)
    a = sample_rgg(gauss_kernel, cloud, seed=8)
    b = sample_rgg(gauss_kernel, cloud, seed=8)
    np.testing.assert_array_equal(a.adjacency, b.adjacency)
    assert a.provenance == RggProvenance(
        kernel_id="gauss(r=1)", cloud_seed=7, edge_seed=8
    )
    er = sample_er(10, 0.3, seed=9)
    assert er.provenance == ErProvenance(p=0.3, edge_seed=9)


def test_vertex_prefix_is_reproducible(gauss_kernel):
    """The first m vertices of a larger sample form the smaller sample."""
    big = sample_rgg(gauss_kernel, sample_sphere_points(700, 5, seed=1), seed=2)
    small = sample_rgg(gauss_kernel, sample_sphere_points(30, 5, seed=1), seed=2)
    np.testing.assert_array_equal(big.subgraph(30).adjacency, small.adjacency)


def test_edge_uniforms_are_symmetric():
    """hash(seed, min(i, j), max(i, j)) does not depend on orientation."""
    u = edge_uniforms(4, np.arange(6), np.arange(6))
    np.testing.assert_array_equal(u, u.T)


def test_rgg_and_er_share_pair_stream():
    """With a constant kernel the RGG and ER samplers coincide."""
    cloud = sample_sphere_points(40, 3, seed=1)
    rgg = sample_rgg(Constant(p=0.35), cloud, seed=11)
    er = sample_er(40, 0.35, seed=11)
    np.testing.assert_array_equal(rgg.adjacency, er.adjacency)


def test_gaussian_cloud_linear_kernel_clamps(caplog):
    """Real-line extension on Gaussian points clamps and counts."""
    cloud = sample_gaussian_points(200, 2, seed=3)
    g = sample_rgg(Linear(p=0.45, r=0.4), cloud, seed=4)
    assert g.clamped > 0
    assert "Clamped" in caplog.text


def test_gaussian_cloud_rejects_quadratic_kernel():
    """Kernels defined only on [-1, 1] refuse overlaps beyond it."""
    cloud = sample_gaussian_points(300, 1, seed=5)
    with pytest.raises(KernelDomainError):
        sample_rgg(Polynomial(coeffs=(0.5, 0.0, 0.25)), cloud, seed=6)


def test_graph_validation():
    """Graphs are square, boolean, symmetric and loop-free."""
    with pytest.raises(InvalidParameterError):
        Graph(adjacency=np.zeros((2, 3), dtype=bool))
    with pytest.raises(InvalidParameterError):
        Graph(adjacency=np.eye(3, dtype=bool))
    with pytest.raises(InvalidParameterError):
        Graph(adjacency=np.triu(np.ones((3, 3), dtype=bool), 1))
    with pytest.raises(InvalidParameterError):
        Graph(adjacency=np.zeros((3, 3)))


def test_standardize_empty_graph():
    """(0 - 1/2) / (1/2) = -1 off the diagonal."""
    abar = standardize_adjacency(sample_er(4, 0.0, seed=0), 0.5)
    expected = -np.ones((4, 4))
    np.fill_diagonal(expected, 0.0)
    np.testing.assert_allclose(abar.entries, expected)


def test_standardize_complete_graph():
    """(1 - 1/2) / (1/2) = +1 off the diagonal."""
    abar = standardize_adjacency(sample_er(4, 1.0, seed=0), 0.5)
    assert abar.entries[0, 1] == pytest.approx(1.0)
    assert abar.entries[2, 2] == 0.0


def test_standardize_single_edge():
    """n=3, p=1/4: the edge is sqrt(3), non-edges -1/sqrt(3)."""
    a = np.zeros((3, 3), dtype=bool)
    a[0, 1] = a[1, 0] = True
    abar = standardize_adjacency(Graph(adjacency=a), 0.25)
    assert abar.entries[0, 1] == pytest.approx(math.sqrt(3))
    assert abar.entries[0, 2] == pytest.approx(-1 / math.sqrt(3))
    assert abar.entries[1, 2] == pytest.approx(-1 / math.sqrt(3))
    absent, present = abar.values
    assert present == pytest.approx(math.sqrt(3))
    assert absent == pytest.approx(-1 / math.sqrt(3))


def test_standardize_rejects_degenerate_p():
    """p must lie strictly inside (0, 1)."""
    g = sample_er(3, 0.5, seed=0)
    for p in (0.0, 1.0):
        with pytest.raises(InvalidParameterError):
            standardize_adjacency(g, p)


def test_er_rejects_bad_p():
    """p outside [0, 1] is refused."""
    with pytest.raises(InvalidParameterError):
        sample_er(3, 1.5, seed=0)
