"""Graph file formats.

Edge list (text, UTF-8)::

    n
    i j
    ...

one line per edge with ``0 <= i < j < n``, sorted row-major.

Bit-packed (binary)::

    b"RGGB" | version (1 byte, = 1) | n (uint64 little-endian) | bits

where ``bits`` is the strict upper triangle in row-major order, packed
little-endian within each byte by :func:`numpy.packbits`.
"""

import logging
import struct
from pathlib import Path

import numpy as np

from ..core.errors import InvalidParameterError
from .model import Graph

logger = logging.getLogger(__name__)

MAGIC = b"RGGB"
VERSION = 1
_HEADER = struct.Struct("<4sBQ")


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{i} {j}" for i, j in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    Raises:
        InvalidParameterError: On a missing header, malformed lines, out of
            range endpoints or self-loops.
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise InvalidParameterError("edge list is empty")
    try:
        n = int(lines[0])
    except ValueError:
        raise InvalidParameterError(f"bad header line {lines[0]!r}") from None
    adjacency = np.zeros((n, n), dtype=np.bool_)
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise InvalidParameterError(f"line {lineno}: expected 'i j', got {line!r}")
        i, j = int(parts[0]), int(parts[1])
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise InvalidParameterError(f"line {lineno}: invalid edge ({i}, {j})")
        adjacency[i, j] = adjacency[j, i] = True
    return Graph(adjacency=adjacency)


def pack_bits(g: Graph) -> bytes:
    iu = np.triu_indices(g.n, 1)
    bits = np.packbits(g.adjacency[iu], bitorder="little")
    return _HEADER.pack(MAGIC, VERSION, g.n) + bits.tobytes()


def unpack_bits(data: bytes) -> Graph:
    """Inverse of :func:`pack_bits`.

    Raises:
        InvalidParameterError: On a bad header or truncated payload.
    """
    if len(data) < _HEADER.size:
        raise InvalidParameterError("bit-packed graph is truncated")
    magic, version, n = _HEADER.unpack_from(data)
    if magic != MAGIC or version != VERSION:
        raise InvalidParameterError(f"not a bit-packed graph (magic={magic!r})")
    pairs = n * (n - 1) // 2
    payload = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
    if payload.size != (pairs + 7) // 8:
        raise InvalidParameterError(
            f"payload has {payload.size} bytes, expected {(pairs + 7) // 8}"
        )
    bits = np.unpackbits(payload, count=pairs, bitorder="little").astype(np.bool_)
    adjacency = np.zeros((n, n), dtype=np.bool_)
    adjacency[np.triu_indices(n, 1)] = bits
    return Graph(adjacency=adjacency | adjacency.T)


def write_graph(g: Graph, path: Path) -> None:
    """Write by suffix: ``.rggb`` is bit-packed, anything else is an edge list."""
    path = Path(path)
    if path.suffix == ".rggb":
        path.write_bytes(pack_bits(g))
    else:
        path.write_text(format_edge_list(g), encoding="utf-8")
    logger.info(f"Wrote graph with n={g.n}, {g.edge_count} edges to {path}")


def read_graph(path: Path) -> Graph:
    path = Path(path)
    if path.suffix == ".rggb":
        return unpack_bits(path.read_bytes())
    return parse_edge_list(path.read_text(encoding="utf-8"))
