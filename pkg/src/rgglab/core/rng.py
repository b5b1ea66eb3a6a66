"""Counter-based randomness.

Every random draw in rgglab is a pure function of a 64-bit key and integer
counters, so any sub-block of a sample can be regenerated in isolation and
parallel workers never share state.

Mixing function (stable, documented in ``docs/en/formats.md``)::

    splitmix64(x):
        z = (x + 0x9E3779B97F4A7C15) mod 2^64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2^64
        return z ^ (z >> 31)

    mix(w1, ..., wk):
        h = 0
        for w in (w1, ..., wk): h = splitmix64(h ^ (w mod 2^64))
        return h

A uniform in [0, 1) is ``(h >> 11) * 2^-53``.
"""

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_INV_2_53 = 2.0**-53

# Stream tags separating the uses of one master seed.
TAG_SPHERE = 0x5350484552450001
TAG_GAUSSIAN = 0x4741555353000002
TAG_EDGE = 0x4544474500000003
TAG_TRIAL = 0x545249414C000004
TAG_ENSEMBLE = 0x454E53454D000005


def splitmix64(x: int) -> int:
    """Apply the splitmix64 finalizer to one 64-bit word."""
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def mix(*words: int) -> int:
    """Fold integer words into one 64-bit key.

    Negative words are taken modulo 2^64.
    """
    h = 0
    for word in words:
        h = splitmix64(h ^ (word & MASK64))
    return h


def text_hash(text: str) -> int:
    """Stable 64-bit hash of a string (blake2b, 8-byte digest, big-endian)."""
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _splitmix64_array(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = x + np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
        return z ^ (z >> np.uint64(31))


def mix_array(key: int, *streams: np.ndarray | int) -> np.ndarray:
    """Vectorized :func:`mix` of ``key`` followed by broadcast counter arrays.

    ``mix_array(k, a, b)[i] == mix(k, a[i], b[i])`` for ``k`` already mixed,
    i.e. ``mix_array(mix(seed), a, b)`` agrees with ``mix(seed, a, b)``.
    """
    arrays = np.broadcast_arrays(*[np.asarray(s) for s in streams])
    shape = arrays[0].shape if arrays else ()
    h = np.full(shape, key & MASK64, dtype=np.uint64)
    for arr in arrays:
        h = _splitmix64_array(h ^ arr.astype(np.int64).view(np.uint64))
    return h


def hash_uniform(key: int, *streams: np.ndarray | int) -> np.ndarray:
    """Uniforms in [0, 1) addressed by ``(key, *streams)``."""
    h = mix_array(key, *streams)
    return (h >> np.uint64(11)).astype(np.float64) * _INV_2_53


def counter_normals(key: int, rows: np.ndarray, width: int) -> np.ndarray:
    """Standard normals of shape ``(len(rows), width)`` by Box-Muller.

    Entry ``(r, j)`` depends only on ``(key, rows[r], j)``.
    """
    rows = np.asarray(rows, dtype=np.int64)[:, None]
    cols = np.arange(width, dtype=np.int64)[None, :]
    u1 = hash_uniform(key, rows, 2 * cols)
    u2 = hash_uniform(key, rows, 2 * cols + 1)
    return np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2)


def generator(seed: int, *stream: int) -> np.random.Generator:
    """Philox-backed generator for bulk Monte Carlo keyed by ``mix(seed, *stream)``."""
    return np.random.Generator(np.random.Philox(key=mix(seed, *stream)))
