"""Tests for the importance-sampled posterior."""

import itertools
import math

import numpy as np
import pytest

from rgglab.core.errors import KernelDomainError, SizeGuardError
from rgglab.geometry.points import sample_sphere_points
from rgglab.graphs.model import Graph, sample_er
from rgglab.kernels.density import standardize
from rgglab.kernels.zoo import Constant, HardThreshold, Linear
from rgglab.posterior.ensemble import (
    MAX_D,
    MAX_N,
    g2_estimate,
    posterior_ensemble,
    posterior_mean_overlap,
    posterior_overlap,
)
from rgglab.posterior.oracle import (
    single_edge_posterior_mean,
    single_edge_weighted_square,
)


def _single_edge(present: bool) -> Graph:
    a = np.zeros((2, 2), dtype=bool)
    a[0, 1] = a[1, 0] = present
    return Graph(adjacency=a)


def test_constant_kernel_gives_flat_weights():
    """A flat likelihood leaves every draw with weight 1/M."""
    ens = posterior_ensemble(sample_er(4, 0.4, seed=1), Constant(p=0.4), 3, 500, 2)
    np.testing.assert_allclose(ens.weights, 1 / 500)
    assert ens.ess == pytest.approx(500)


def test_pair_index_is_row_major():
    """Pairs follow np.triu_indices(n, 1)."""
    ens = posterior_ensemble(sample_er(4, 0.4, seed=1), Constant(p=0.4), 3, 10, 2)
    expected = list(itertools.combinations(range(4), 2))
    assert [ens.pair_index(i, j) for i, j in expected] == list(range(6))
    assert ens.pair_index(3, 1) == ens.pair_index(1, 3)


def test_ensemble_does_not_depend_on_workers():
    """Chunks come from the counter stream, not the scheduler."""
    g = sample_er(3, 0.5, seed=3)
    kernel = Linear(p=0.3, r=0.2)
    one = posterior_ensemble(g, kernel, 2, 70_000, 4)
    two = posterior_ensemble(g, kernel, 2, 70_000, 4, workers=2)
    np.testing.assert_array_equal(one.log_weights, two.log_weights)


@pytest.mark.parametrize("present", [True, False])
def test_two_vertex_posterior_matches_closed_form(present):
    """With n=2 the posterior depends only on the single edge."""
    kernel = Linear(p=0.3, r=0.25)
    d = 3
    ens = posterior_ensemble(_single_edge(present), kernel, d, 200_000, 5)
    mean, se = posterior_mean_overlap(ens, 0, 1)
    expected = single_edge_posterior_mean(standardize(kernel, d), int(present))
    assert abs(mean - expected) < 4 * se


@pytest.mark.parametrize("p", [0.0, 1.0])
def test_vertex_transitive_inputs_are_symmetric(p):
    """Empty and complete graphs give the same posterior mean on every pair."""
    ens = posterior_ensemble(
        sample_er(5, p, seed=6), Linear(p=0.3, r=0.2), 3, 100_000, 7
    )
    ref, ref_se = posterior_mean_overlap(ens, 0, 1)
    for i, j in itertools.combinations(range(5), 2):
        mean, se = posterior_mean_overlap(ens, i, j)
        assert abs(mean - ref) < 4 * math.hypot(se, ref_se)


def test_posterior_overlap_under_flat_likelihood():
    """Without information the posterior draw is uncorrelated with the truth."""
    truth = sample_sphere_points(4, 3, seed=8)
    ens = posterior_ensemble(sample_er(4, 0.4, seed=9), Constant(p=0.4), 3, 20_000, 10)
    mean, se = posterior_overlap(ens, truth)
    assert abs(mean) < 4 * se


def test_size_guards():
    """Importance sampling is restricted to tiny instances."""
    kernel = Linear(p=0.3, r=0.2)
    with pytest.raises(SizeGuardError):
        posterior_ensemble(sample_er(MAX_N + 1, 0.3, seed=1), kernel, 3, 10, 1)
    with pytest.raises(SizeGuardError):
        posterior_ensemble(sample_er(4, 0.3, seed=1), kernel, MAX_D + 1, 10, 1)
    with pytest.raises(SizeGuardError):
        posterior_ensemble(sample_er(4, 0.3, seed=1), kernel, 3, 1, 1)


def test_kernel_must_avoid_zero_and_one():
    """A hard threshold has zero-likelihood draws."""
    with pytest.raises(KernelDomainError):
        posterior_ensemble(sample_er(4, 0.5, seed=1), HardThreshold(tau=0.0), 3, 50, 1)


def test_replica_split_on_constant_kernel():
    """The truth is zero: eta vanishes and the inner product form is centred."""
    est = g2_estimate(Constant(p=0.4), 3, 3, 20, 2_000, seed=11)
    assert est.mean == 0.0
    assert abs(est.inner) < 4 * est.inner_se
    assert len(est.values) == 20
    assert est.min_ess == pytest.approx(1_000)


@pytest.mark.slow
def test_linear_g2_scaling():
    """n=6, d=4, b1=0.3: single-edge dominance fixes the order of magnitude."""
    p, b1, d = 0.3, 0.3, 4
    kernel = Linear(p=p, r=b1 * math.sqrt(p * (1 - p)))
    est = g2_estimate(kernel, 6, d, 50, 1_000_000, seed=12, workers=-1)
    single = single_edge_weighted_square(standardize(kernel, d))
    assert 0.5 <= est.inner * d**2 / single <= 2.0
    assert 0.3 <= est.inner / (b1**2 / d**4) <= 3.0
    assert 0.3 <= est.mean / (b1**6 / d**4) <= 3.0
