"""Flip graphs of convex polygon triangulations and their symmetry quotients.

Internally a triangulation of the ``k``-gon is the sorted tuple of its diagonal
codes ``i*k + j`` (``i < j``); code order equals lexicographic pair order.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Sequence
from math import comb
from typing import Literal

import numpy as np

from expander_growth.errors import InvalidInputError
from expander_growth.models import Graph, Triangulation

logger = logging.getLogger(__name__)

Codes = tuple[int, ...]


def catalan_count(k: int) -> int:
    """Number of triangulations of the convex ``k``-gon."""
    return comb(2 * k - 4, k - 2) // (k - 1)


def fan_codes(k: int) -> Codes:
    return tuple(j for j in range(2, k - 1))


def neighbor_masks(k: int, codes: Codes) -> list[int]:
    masks = [(1 << ((v - 1) % k)) | (1 << ((v + 1) % k)) for v in range(k)]
    for code in codes:
        i, j = divmod(code, k)
        masks[i] |= 1 << j
        masks[j] |= 1 << i
    return masks


def flip_partner(k: int, masks: list[int], code: int) -> int:
    """Code of the other diagonal of the quadrilateral around ``code``."""
    i, j = divmod(code, k)
    common = masks[i] & masks[j]
    low = common & -common
    a = low.bit_length() - 1
    b = (common ^ low).bit_length() - 1
    return a * k + b


def flips(k: int, codes: Codes) -> list[tuple[int, Codes]]:
    """``(flipped diagonal, neighbour)`` for every diagonal, in diagonal order."""
    masks = neighbor_masks(k, codes)
    result = []
    for position, code in enumerate(codes):
        partner = flip_partner(k, masks, code)
        rest = codes[:position] + codes[position + 1:]
        result.append((code, tuple(sorted(rest + (partner,)))))
    return result


def flip(t: Triangulation, diagonal: tuple[int, int]) -> Triangulation:
    codes = t.codes()
    code = diagonal[0] * t.k + diagonal[1]
    if code not in codes:
        raise InvalidInputError(f"{diagonal} is not a diagonal of {t}")
    for flipped, neighbour in flips(t.k, codes):
        if flipped == code:
            return Triangulation.from_codes(t.k, neighbour)
    raise AssertionError("unreachable")


def _enumerate(k: int) -> tuple[list[Codes], np.ndarray]:
    if k < 4:
        raise InvalidInputError(f"flip graphs need k >= 4, got {k}")
    root = fan_codes(k)
    index = {root: 0}
    nodes = [root]
    capacity = catalan_count(k) * (k - 3) // 2
    edges = np.empty((capacity, 2), dtype=np.int64)
    m = 0
    queue = deque([root])
    while queue:
        current = queue.popleft()
        u = index[current]
        for _, neighbour in flips(k, current):
            v = index.get(neighbour)
            if v is None:
                v = len(nodes)
                index[neighbour] = v
                nodes.append(neighbour)
                queue.append(neighbour)
            if u < v:
                edges[m] = (u, v)
                m += 1
    logger.debug("k=%d: %d triangulations, %d flips", k, len(nodes), m)
    return nodes, edges[:m]


class TriangulationTable(Sequence[Triangulation]):
    """Index to triangulation lookup; entries are materialised on access."""

    def __init__(self, k: int, nodes: list[Codes]) -> None:
        self.k = k
        self._nodes = nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [Triangulation.from_codes(self.k, codes) for codes in self._nodes[index]]
        return Triangulation.from_codes(self.k, self._nodes[index])

    def index_of(self, t: Triangulation) -> int:
        return self._nodes.index(t.codes())


def polygon_flip_graph(k: int) -> tuple[Graph, TriangulationTable]:
    nodes, edges = _enumerate(k)
    graph = Graph.from_edges(len(nodes), edges)
    logger.info("flip graph of the %d-gon: n=%d m=%d", k, graph.n, graph.m)
    return graph, TriangulationTable(k, nodes)


def _rotate(k: int, codes: Codes, shift: int) -> Codes:
    moved = []
    for code in codes:
        i, j = divmod(code, k)
        a, b = (i + shift) % k, (j + shift) % k
        moved.append(min(a, b) * k + max(a, b))
    return tuple(sorted(moved))


def _reflect(k: int, codes: Codes) -> Codes:
    moved = []
    for code in codes:
        i, j = divmod(code, k)
        a, b = (k - 1 - i) % k, (k - 1 - j) % k
        moved.append(min(a, b) * k + max(a, b))
    return tuple(sorted(moved))


def orbit_key(k: int, codes: Codes, group: Literal["cyclic", "dihedral"]) -> Codes:
    images = [_rotate(k, codes, shift) for shift in range(k)]
    if group == "dihedral":
        mirrored = _reflect(k, codes)
        images.extend(_rotate(k, mirrored, shift) for shift in range(k))
    return min(images)


def polygon_flip_quotient(
    k: int, group: Literal["cyclic", "dihedral"], relabel: int = 0
) -> tuple[Graph, list[int]]:
    """Quotient flip graph and the orbit sizes, orbits numbered by first appearance.

    ``relabel`` rotates every triangulation before quotienting; the result
    must not depend on it.
    """
    if k < 5:
        raise InvalidInputError(f"quotient flip graphs need k >= 5, got {k}")
    if group not in ("cyclic", "dihedral"):
        raise InvalidInputError(f"group must be 'cyclic' or 'dihedral', got {group!r}")
    nodes, edges = _enumerate(k)
    orbit_of: dict[Codes, int] = {}
    labels = np.empty(len(nodes), dtype=np.int64)
    for position, codes in enumerate(nodes):
        key = orbit_key(k, _rotate(k, codes, relabel) if relabel else codes, group)
        labels[position] = orbit_of.setdefault(key, len(orbit_of))
    sizes = np.bincount(labels, minlength=len(orbit_of)).tolist()
    a, b = labels[edges[:, 0]], labels[edges[:, 1]]
    between = a != b
    pairs = np.empty((0, 2), dtype=np.int64)
    if between.any():
        pairs = np.unique(np.column_stack([np.minimum(a, b), np.maximum(a, b)])[between], axis=0)
    graph = Graph.from_edges(len(orbit_of), pairs)
    logger.info("%s quotient of the %d-gon flip graph: n=%d m=%d", group, k, graph.n, graph.m)
    return graph, sizes


def triangulation_table(triangulations: Sequence[Triangulation]) -> str:
    return "".join(f"{index}: {triangulations[index]}\n" for index in range(len(triangulations)))
