"""Randomised growth: repeatedly process a uniform vertex of the queue.

Processed (P), queued (Q) and unvisited (U) vertices partition the graph at
every step and no edge joins P to U.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Literal

import numpy as np

from expander_growth.errors import InvalidInputError
from expander_growth.generators.random_graphs import erdos_renyi_gnm, erdos_renyi_gnp, make_rng
from expander_growth.graph import edge_count_between
from expander_growth.models import Graph, GrowthTrajectory, VertexSet

logger = logging.getLogger(__name__)


class GrowthState:
    """Live ``(P, Q, U)`` partition of one run.

    ``queue_order`` holds Q densely with ``position`` as its inverse so a
    uniform element is removed by swapping it with the last slot.
    """

    def __init__(self, g: Graph, start: int, seed: int) -> None:
        if not 0 <= start < g.n:
            raise InvalidInputError(f"start vertex {start} outside 0..{g.n - 1}")
        self.g = g
        self.start = start
        self.seed = seed
        self.rng = make_rng(seed)
        self.p = VertexSet(g.n)
        self.q = VertexSet(g.n, [start])
        self.u = VertexSet.full(g.n)
        self.u.discard(start)
        self.queue_order = np.empty(g.n, dtype=np.int64)
        self.queue_order[0] = start
        self.queue_len = 1
        self.position = np.full(g.n, -1, dtype=np.int64)
        self.position[start] = 0
        self.parent = np.full(g.n, -1, dtype=np.int64)
        self.order: list[int] = []
        self.t = 0

    @property
    def finished(self) -> bool:
        return self.queue_len == 0

    def sizes(self) -> tuple[int, int, int, int]:
        return (self.t, self.p.size, self.q.size, self.u.size)

    def queued(self) -> np.ndarray:
        return self.queue_order[:self.queue_len]

    def _pop_uniform(self) -> int:
        slot = int(self.rng.integers(self.queue_len))
        v = int(self.queue_order[slot])
        last = int(self.queue_order[self.queue_len - 1])
        self.queue_order[slot] = last
        self.position[last] = slot
        self.position[v] = -1
        self.queue_len -= 1
        return v

    def step(self) -> int:
        v = self._pop_uniform()
        unvisited = self.u.mask
        for w in self.g.neighbors(v).tolist():
            if unvisited[w]:
                self.u.discard(w)
                self.q.add(w)
                self.queue_order[self.queue_len] = w
                self.position[w] = self.queue_len
                self.queue_len += 1
                self.parent[w] = v
        self.q.discard(v)
        self.p.add(v)
        self.order.append(v)
        self.t += 1
        return v

    def check_partition(self) -> None:
        cover = self.p.mask.astype(np.int8) + self.q.mask + self.u.mask
        if np.any(cover != 1):
            raise AssertionError("P, Q, U no longer partition the vertex set")
        if self.p.size != self.t or self.q.size != self.queue_len:
            raise AssertionError("cached set sizes disagree with the process")

    def check_invariants(self) -> None:
        self.check_partition()
        if edge_count_between(self.g, self.p, self.u) != 0:
            raise AssertionError("an edge joins P to U")


def run_growth(
    g: Graph,
    start: int,
    seed: int,
    snapshot_every: int = 1000,
    *,
    total_steps: int | None = None,
    observer: Callable[[GrowthState], None] | None = None,
    observe_every: int | None = None,
    record_sets: bool = False,
    debug: bool = False,
) -> GrowthTrajectory:
    """Run the process from ``start`` until the queue empties.

    With ``total_steps`` the snapshots continue through that step with the
    final partition frozen. ``observer`` is called with the live state at
    every multiple of ``observe_every``.
    """
    if snapshot_every < 1:
        raise InvalidInputError("snapshot_every must be positive")
    state = GrowthState(g, start, seed)
    trajectory = GrowthTrajectory(n=g.n, start=start, seed=seed)

    def snapshot() -> None:
        trajectory.snapshots.append(state.sizes())
        if record_sets:
            trajectory.set_dumps.append((state.p.indices(), state.q.indices()))

    snapshot()
    while not state.finished:
        state.step()
        if debug:
            state.check_invariants()
        if state.t % snapshot_every == 0 or state.finished:
            state.check_partition()
            snapshot()
            logger.debug("t=%d |P|=%d |Q|=%d |U|=%d", *state.sizes())
        if observer is not None and observe_every and state.t % observe_every == 0:
            observer(state)

    if total_steps is not None:
        if total_steps < state.t:
            raise InvalidInputError("total_steps is shorter than the run")
        _, processed, queued, unvisited = state.sizes()
        first = (state.t // snapshot_every + 1) * snapshot_every
        for t in range(first, total_steps + 1, snapshot_every):
            trajectory.snapshots.append((t, processed, queued, unvisited))
        if trajectory.snapshots[-1][0] != total_steps:
            trajectory.snapshots.append((total_steps, processed, queued, unvisited))

    trajectory.parent = state.parent
    trajectory.order = state.order
    logger.info("growth from %d finished after %d steps", start, state.t)
    return trajectory


def run_growth_padded(
    g: Graph, start: int, seed: int, snapshot_every: int = 1000, total_steps: int | None = None, **kwargs
) -> GrowthTrajectory:
    return run_growth(
        g, start, seed, snapshot_every, total_steps=g.n if total_steps is None else total_steps, **kwargs
    )


def boundary_edges(g: Graph, v: int, unvisited: np.ndarray) -> int:
    return int(np.count_nonzero(unvisited[g.neighbors(v)]))


def sample_boundary_estimate(state: GrowthState, g: Graph, m_samples: int, seed: int, exhaustive: bool = False) -> float:
    """Estimate ``e(U, W)`` with ``W = P ∪ Q`` from queue vertices.

    Every W-endpoint of a W-U edge lies in Q, so the average U-degree of a
    uniform queue vertex times ``|Q|`` is unbiased. ``exhaustive`` counts
    every queue vertex instead of sampling.
    """
    if state.queue_len == 0:
        raise InvalidInputError("the queue is empty")
    if m_samples < 1:
        raise InvalidInputError("m_samples must be positive")
    queued = state.queued()
    unvisited = state.u.mask
    if exhaustive:
        return float(edge_count_between(g, state.u, state.u.complement()))
    picks = make_rng(seed).integers(queued.size, size=m_samples)
    counts = [boundary_edges(g, int(queued[i]), unvisited) for i in picks]
    return float(np.mean(counts)) * queued.size


def numeric_process(
    n: int, d: float, seed: int, method: Literal["geometric", "recurrence"] = "geometric"
) -> np.ndarray:
    """Rows ``(t, u_t, q_t)`` for ``t = 0..n`` with ``u_0 = n``.

    ``recurrence`` draws ``u_t = u_{t-1} - Bin(u_{t-1}, d/n)`` step by step;
    ``geometric`` samples the same law in one pass: ``u_t`` counts vertices
    whose first selection time, geometric with rate ``d/n``, exceeds ``t``.
    ``q_t = n - t - u_t`` is reported as is, including negative values.
    """
    if n < 1:
        raise InvalidInputError("n must be positive")
    if not 0 < d < n:
        raise InvalidInputError(f"need 0 < d < n, got d={d}, n={n}")
    rng = make_rng(seed)
    rate = d / n
    if method == "recurrence":
        u = np.empty(n + 1, dtype=np.int64)
        u[0] = n
        for t in range(1, n + 1):
            u[t] = u[t - 1] - rng.binomial(u[t - 1], rate)
    else:
        first_pick = rng.geometric(rate, size=n)
        picked_by = np.cumsum(np.bincount(np.minimum(first_pick, n + 1), minlength=n + 2))[: n + 1]
        u = n - picked_by
    t = np.arange(n + 1, dtype=np.int64)
    return np.column_stack([t, u, n - t - u])


def lemma1_parents(g: Graph, order: list[int]) -> np.ndarray:
    """Tree parent of each visited vertex as its earliest-processed neighbour."""
    rank = np.full(g.n, np.iinfo(np.int64).max, dtype=np.int64)
    rank[np.asarray(order, dtype=np.int64)] = np.arange(len(order))
    parent = np.full(g.n, -1, dtype=np.int64)
    for v in order[1:]:
        neighbours = g.neighbors(v)
        earliest = neighbours[np.argmin(rank[neighbours])]
        parent[v] = earliest
    return parent


def giant_threshold(n: int) -> float:
    return n ** (2.0 / 3.0)


def is_giant_run(trajectory: GrowthTrajectory) -> bool:
    return trajectory.final_processed >= giant_threshold(trajectory.n)


def random_graph_growth(
    n: int,
    d: float,
    seed: int,
    model: Literal["gnp", "gnm"] = "gnp",
    snapshot_every: int = 1000,
) -> tuple[Graph, GrowthTrajectory]:
    """Sample ``G(n, d/n)`` (or ``G(n, round(dn/2))``), pick a uniform start and grow to step ``n``."""
    if d <= 0 or d >= n:
        raise InvalidInputError(f"need 0 < d < n, got d={d}")
    if model == "gnm":
        g = erdos_renyi_gnm(n, int(round(d * n / 2)), seed)
    else:
        g = erdos_renyi_gnp(n, d / n, seed)
    start = int(make_rng(seed + 1).integers(n))
    trajectory = run_growth_padded(g, start, seed + 2, snapshot_every)
    logger.info("random graph run: |P|=%d giant=%s", trajectory.final_processed, is_giant_run(trajectory))
    return g, trajectory


def structural_slack(trajectory: GrowthTrajectory, bound: Callable[[float], float]) -> float:
    """Smallest ``kappa - bound(pi)`` over the snapshots."""
    dens = trajectory.densities()
    return min(kappa - bound(pi) for pi, kappa, _ in dens) if len(dens) else math.inf
