"""Tests for graph file formats."""

import numpy as np
import pytest

from rgglab.core.errors import InvalidParameterError
from rgglab.geometry.points import sample_sphere_points
from rgglab.graphs.io import (
    MAGIC,
    format_edge_list,
    pack_bits,
    parse_edge_list,
    read_graph,
    unpack_bits,
    write_graph,
)
from rgglab.graphs.model import Graph, sample_rgg


@pytest.fixture
def graph(gauss_kernel) -> Graph:
    return sample_rgg(gauss_kernel, sample_sphere_points(23, 4, seed=1), seed=2)


def test_edge_list_layout():
    """Header n, then sorted 'i j' lines."""
    a = np.zeros((4, 4), dtype=bool)
    for i, j in [(2, 3), (0, 2)]:
        a[i, j] = a[j, i] = True
    assert format_edge_list(Graph(adjacency=a)) == "4\n0 2\n2 3\n"


def test_edge_list_round_trip(graph):
    """Parsing the emitted text restores the adjacency."""
    parsed = parse_edge_list(format_edge_list(graph))
    np.testing.assert_array_equal(parsed.adjacency, graph.adjacency)


def test_bit_packed_header_and_round_trip(graph):
    """Magic, version, n, then ceil(C(n,2)/8) bytes."""
    data = pack_bits(graph)
    assert data[:4] == MAGIC
    assert data[4] == 1
    assert int.from_bytes(data[5:13], "little") == 23
    assert len(data) == 13 + (23 * 22 // 2 + 7) // 8
    np.testing.assert_array_equal(unpack_bits(data).adjacency, graph.adjacency)


@pytest.mark.parametrize("suffix", [".txt", ".rggb"])
def test_write_and_read_by_suffix(graph, tmp_path, suffix):
    """The suffix picks the format."""
    path = tmp_path / f"graph{suffix}"
    write_graph(graph, path)
    np.testing.assert_array_equal(read_graph(path).adjacency, graph.adjacency)
    if suffix == ".rggb":
        assert path.read_bytes()[:4] == MAGIC


@pytest.mark.parametrize(
    "text", ["", "x\n", "3\n0\n", "3\n0 3\n", "3\n1 1\n"]
)
def test_edge_list_errors(text):
    """Malformed edge lists are rejected."""
    with pytest.raises(InvalidParameterError):
        parse_edge_list(text)


def test_bit_packed_errors(graph):
    """Bad magic and truncated payloads are rejected."""
    data = pack_bits(graph)
    with pytest.raises(InvalidParameterError):
        unpack_bits(b"XXXX" + data[4:])
    with pytest.raises(InvalidParameterError):
        unpack_bits(data[:-1])
    with pytest.raises(InvalidParameterError):
        unpack_bits(data[:5])
