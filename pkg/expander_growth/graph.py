"""Counting primitives over :class:`Graph` and the edge-list text format.

``e(S, T)`` counts ordered incidences: an edge with both endpoints in
``S ∩ T`` contributes 2, so ``e(V, V) == 2m`` and ``e(S, V) == vol(S)``.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.sparse import csgraph

from expander_growth.errors import EdgeListParseError, GraphInvariantError, InvalidInputError
from expander_growth.models import DegreeStats, Graph, VertexSet

logger = logging.getLogger(__name__)


def _check_set(g: Graph, s: VertexSet, name: str) -> None:
    if s.n != g.n:
        raise InvalidInputError(f"{name} indexes {s.n} vertices but the graph has {g.n}")


def edge_count_between(g: Graph, s: VertexSet, t: VertexSet) -> int:
    _check_set(g, s, "S")
    _check_set(g, t, "T")
    return int(np.count_nonzero(s.mask[g.arc_sources] & t.mask[g.indices]))


def volume(g: Graph, s: VertexSet) -> int:
    _check_set(g, s, "S")
    return int(g.degrees[s.mask].sum())


def degree_stats(g: Graph) -> DegreeStats:
    if g.n < 1:
        raise InvalidInputError("degree statistics need at least one vertex")
    degrees = g.degrees
    d_min, d_max = int(degrees.min()), int(degrees.max())
    d_bar = 2.0 * g.m / g.n
    sigma2 = 0.0 if d_min == d_max else float(np.mean((degrees - d_bar) ** 2))
    return DegreeStats(d_bar=d_bar, sigma2=sigma2, d_min=d_min, d_max=d_max)


def is_connected(g: Graph) -> bool:
    if g.n < 1:
        raise InvalidInputError("connectivity needs at least one vertex")
    count, _ = csgraph.connected_components(g.adjacency, directed=False)
    return count == 1


def is_bipartite(g: Graph) -> bool:
    if g.n < 1:
        raise InvalidInputError("bipartiteness needs at least one vertex")
    _, labels = csgraph.connected_components(g.adjacency, directed=False)
    color = np.full(g.n, -1, dtype=np.int8)
    _, roots = np.unique(labels, return_index=True)
    for root in roots:
        order, predecessors = csgraph.breadth_first_order(
            g.adjacency, int(root), directed=False, return_predecessors=True
        )
        color[root] = 0
        for v in order[1:]:
            color[v] = 1 - color[predecessors[v]]
    return not np.any(color[g.arc_sources] == color[g.indices])


def component_of(g: Graph, v: int) -> np.ndarray:
    _, labels = csgraph.connected_components(g.adjacency, directed=False)
    return np.flatnonzero(labels == labels[v])


def load_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``.

    Lines starting with ``#`` are output headers and are skipped.
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    last_line = 0
    for line_number, raw in enumerate(text.splitlines(), start=1):
        last_line = line_number
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise EdgeListParseError(line_number, f"expected two integers, got {line!r}")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListParseError(line_number, f"expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListParseError(line_number, "negative vertex or edge count")
            header = (a, b)
            continue
        n, m = header
        if len(edges) == m:
            raise EdgeListParseError(line_number, f"more than the declared {m} edges")
        if a == b:
            raise GraphInvariantError(f"line {line_number}: self-loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise GraphInvariantError(f"line {line_number}: endpoint out of range 0..{n - 1}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphInvariantError(f"line {line_number}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    if header is None:
        raise EdgeListParseError(max(last_line, 1), "missing 'n m' header")
    if len(edges) != header[1]:
        raise EdgeListParseError(last_line, f"declared {header[1]} edges, found {len(edges)}")
    graph = Graph.from_edges(header[0], edges)
    logger.debug("loaded graph n=%d m=%d", graph.n, graph.m)
    return graph


def store_edge_list(g: Graph) -> str:
    edges = g.edge_array()
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in edges.tolist())
    return "\n".join(lines) + "\n"
