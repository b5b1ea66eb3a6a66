"""Tests for signed triangle and wedge counts."""

import numpy as np
import pytest

from rgglab.detection.motifs import (
    signed_triangle_count,
    signed_triangle_count_bruteforce,
    signed_wedge_count,
    signed_wedge_count_bruteforce,
)
from rgglab.graphs.model import Graph, sample_er, standardize_adjacency


def _random_graph(n: int, seed: int) -> Graph:
    bits = np.random.default_rng(seed).random((n, n)) < 0.5
    upper = np.triu(bits, 1)
    return Graph(adjacency=upper | upper.T)


def test_triangle_empty_graph():
    """All entries are -1, so the single triangle is (-1)^3."""
    abar = standardize_adjacency(sample_er(3, 0.0, seed=0), 0.5)
    assert signed_triangle_count(abar) == pytest.approx(-1.0)


def test_triangle_complete_graph():
    """All entries are +1."""
    abar = standardize_adjacency(sample_er(3, 1.0, seed=0), 0.5)
    assert signed_triangle_count(abar) == pytest.approx(1.0)


def test_wedge_empty_and_complete_graph():
    """Three wedges on three vertices, each product +1."""
    for p in (0.0, 1.0):
        abar = standardize_adjacency(sample_er(3, p, seed=0), 0.5)
        assert signed_wedge_count(abar) == pytest.approx(3.0)


@pytest.mark.parametrize("seed", range(5))
def test_triangle_trace_matches_triple_loop(seed):
    """tr(A^3) / 6 equals the sum over triples."""
    abar = standardize_adjacency(_random_graph(6, seed), 0.3)
    assert signed_triangle_count(abar) == pytest.approx(
        signed_triangle_count_bruteforce(abar), abs=1e-10
    )


@pytest.mark.parametrize("seed", range(5))
def test_wedge_row_sums_match_brute_force(seed):
    """The row-sum formula equals the sum over centers and neighbour pairs."""
    abar = standardize_adjacency(_random_graph(7, seed), 0.4)
    assert signed_wedge_count(abar) == pytest.approx(
        signed_wedge_count_bruteforce(abar), abs=1e-10
    )
