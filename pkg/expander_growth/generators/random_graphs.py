"""Erdős–Rényi G(n, p) and G(n, m) samplers.

Both samplers work on the lexicographic sequence of pairs ``u < v`` and decode
positions back to pairs, so memory is proportional to the edge count.
All randomness comes from ``numpy.random.Generator(PCG64(seed))``.
"""

from __future__ import annotations

import logging

import numpy as np

from expander_growth.errors import InvalidInputError
from expander_growth.models import Graph

logger = logging.getLogger(__name__)

_CHUNK = 1 << 20


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _pair_count(n: int) -> int:
    return n * (n - 1) // 2


def decode_pairs(n: int, positions: np.ndarray) -> np.ndarray:
    """Map positions in the lexicographic ``u < v`` pair sequence to ``(u, v)`` rows."""
    u_range = np.arange(n, dtype=np.int64)
    row_start = u_range * (2 * n - u_range - 1) // 2
    u = np.searchsorted(row_start, positions, side="right") - 1
    v = positions - row_start[u] + u + 1
    return np.column_stack([u, v])


def erdos_renyi_gnp(n: int, p: float, seed: int) -> Graph:
    if n < 0:
        raise InvalidInputError(f"n must be nonnegative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"edge probability must lie in [0, 1], got {p}")
    total = _pair_count(n)
    if p == 0.0 or total == 0:
        return Graph.from_edges(n, np.empty((0, 2), dtype=np.int64))
    if p == 1.0:
        return Graph.from_edges(n, decode_pairs(n, np.arange(total, dtype=np.int64)))

    rng = make_rng(seed)
    chunks = []
    cursor = -1
    while True:
        gaps = rng.geometric(p, size=_CHUNK)
        positions = cursor + np.cumsum(gaps)
        inside = positions[positions < total]
        chunks.append(inside)
        if inside.size < positions.size:
            break
        cursor = int(positions[-1])
    positions = np.concatenate(chunks)
    logger.info("G(%d, %.6g): %d edges", n, p, positions.size)
    return Graph.from_edges(n, decode_pairs(n, positions))


def erdos_renyi_gnm(n: int, m: int, seed: int) -> Graph:
    if n < 0 or m < 0:
        raise InvalidInputError("n and m must be nonnegative")
    total = _pair_count(n)
    if m > total:
        raise InvalidInputError(f"m={m} exceeds the {total} available pairs")
    rng = make_rng(seed)
    positions = np.sort(rng.choice(total, size=m, replace=False)) if m else np.empty(0, dtype=np.int64)
    logger.info("G(%d, %d) sampled", n, m)
    return Graph.from_edges(n, decode_pairs(n, positions.astype(np.int64)))
