"""Signed motif statistics of a standardized adjacency matrix."""

import itertools
import math

import numpy as np

from ..graphs.model import StandardizedAdjacency


def signed_triangle_count(abar: StandardizedAdjacency) -> float:
    """``T = sum_{i<j<k} A_ij A_jk A_ki`` as ``tr(A^3) / 6``.

    The zero diagonal makes the trace identity exact.
    """
    a = abar.entries
    return float(np.sum((a @ a) * a) / 6.0)


def signed_wedge_count(abar: StandardizedAdjacency) -> float:
    """``W = sum`` over paths ``i - j - k`` of ``A_ij A_jk``.

    Computed as ``1/2 sum_j [(sum_i A_ij)^2 - sum_i A_ij^2]``.
    """
    a = abar.entries
    row_sums = a.sum(axis=1)
    return float(0.5 * np.sum(row_sums**2 - np.sum(a * a, axis=1)))


def signed_triangle_count_bruteforce(abar: StandardizedAdjacency) -> float:
    """Triple loop over ``i < j < k``; reference for tests."""
    a = abar.entries
    terms = [
        a[i, j] * a[j, k] * a[k, i]
        for i, j, k in itertools.combinations(range(abar.n), 3)
    ]
    return math.fsum(terms)


def signed_wedge_count_bruteforce(abar: StandardizedAdjacency) -> float:
    """Loop over centers and unordered neighbour pairs; reference for tests."""
    a = abar.entries
    n = abar.n
    terms = [
        a[i, center] * a[center, k]
        for center in range(n)
        for i, k in itertools.combinations([v for v in range(n) if v != center], 2)
    ]
    return math.fsum(terms)
