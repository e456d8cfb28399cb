"""Random-probe estimation of tree size over implicitly given trees.

A probe walks from the root, choosing a uniform child at every internal node,
and returns ``1 + c1 + c1*c2 + ...`` where ``ci`` are the branching factors
seen on the way; its expectation is the number of nodes.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import partial
from typing import Hashable

import numpy as np

from expander_growth.errors import InvalidInputError, TraversalBudgetError
from expander_growth.extensions import WorkerPool
from expander_growth.generators.polygon import Codes, fan_codes, flip_partner, neighbor_masks
from expander_growth.generators.random_graphs import make_rng
from expander_growth.models import ProbeResult, TreeOracle

logger = logging.getLogger(__name__)


def hk_probe(tree: TreeOracle, seed: int) -> ProbeResult:
    rng = make_rng(seed)
    node: Hashable = tree.root
    estimate = 1
    weight = 1
    depth = 0
    while True:
        kids = tree.children(node)
        if not kids:
            break
        weight *= len(kids)
        estimate += weight
        node = kids[int(rng.integers(len(kids)))]
        depth += 1
    return ProbeResult(estimate=float(estimate), depth=depth, seed=seed)


def hk_probes(tree: TreeOracle, probes: int, seed: int, pool: WorkerPool | None = None) -> list[ProbeResult]:
    """Probes with seeds ``seed, seed + 1, ...``, returned in seed order."""
    if probes < 1:
        raise InvalidInputError(f"need at least one probe, got {probes}")
    seeds = range(seed, seed + probes)
    if pool is None:
        results = [hk_probe(tree, s) for s in seeds]
    else:
        results = pool.map(partial(hk_probe, tree), seeds)
    return sorted(results, key=lambda r: r.seed)


def summarize(results: list[ProbeResult]) -> tuple[float, float]:
    """Sample mean and standard error; the error is ``nan`` for a single probe."""
    values = np.array([r.estimate for r in results], dtype=np.float64)
    mean = float(values.mean())
    if values.size < 2:
        return mean, math.nan
    return mean, float(values.std(ddof=1) / math.sqrt(values.size))


def running_means(results: list[ProbeResult]) -> np.ndarray:
    values = np.array([r.estimate for r in results], dtype=np.float64)
    return np.cumsum(values) / np.arange(1, values.size + 1)


def hk_estimate(tree: TreeOracle, probes: int, seed: int, pool: WorkerPool | None = None) -> tuple[float, float]:
    mean, stderr = summarize(hk_probes(tree, probes, seed, pool))
    logger.info("%d probes: mean=%.6g stderr=%.6g", probes, mean, stderr)
    return mean, stderr


def _walk(tree: TreeOracle, budget: int):
    """Depth-first ``(node, children)`` pairs; raises past ``budget`` nodes."""
    stack = [tree.root]
    seen = 0
    while stack:
        node = stack.pop()
        seen += 1
        if seen > budget:
            raise TraversalBudgetError(f"tree has more than {budget} nodes")
        kids = tree.children(node)
        yield node, kids
        stack.extend(reversed(kids))


def tree_size(tree: TreeOracle, budget: int = 1_000_000) -> int:
    return sum(1 for _ in _walk(tree, budget))


def hk_exact_expectation(tree: TreeOracle, budget: int = 1_000_000) -> Fraction:
    """Exact expectation of one probe, summed over every root-to-leaf path."""
    total = Fraction(0)
    stack: list[tuple[Hashable, Fraction, int, int]] = [(tree.root, Fraction(1), 1, 1)]
    seen = 0
    while stack:
        node, probability, weight, estimate = stack.pop()
        seen += 1
        if seen > budget:
            raise TraversalBudgetError(f"tree has more than {budget} nodes")
        kids = tree.children(node)
        if not kids:
            total += probability * estimate
            continue
        c = len(kids)
        branch = probability / c
        for kid in kids:
            stack.append((kid, branch, weight * c, estimate + weight * c))
    return total


class PolygonReverseSearch:
    """Rooted spanning tree of the flip graph of the convex ``k``-gon.

    The root is the fan at vertex 0. Any other triangulation has a triangle
    ``(0, a, b)`` whose far side ``(a, b)`` is a diagonal; flipping the first
    such side (smallest ``a``) adds a diagonal at vertex 0 and gives the
    parent. Nodes are sorted tuples of diagonal codes ``i*k + j``.
    """

    def __init__(self, k: int) -> None:
        if k < 4:
            raise InvalidInputError(f"reverse search needs k >= 4, got {k}")
        self.k = k
        self.root: Codes = fan_codes(k)

    def fan_neighbors(self, codes: Codes) -> list[int]:
        """Neighbours of vertex 0 in increasing order, polygon sides included."""
        return [1] + [code for code in codes if code < self.k] + [self.k - 1]

    def rank(self, codes: Codes) -> int:
        return sum(1 for code in codes if code < self.k)

    def parent(self, codes: Codes) -> Codes | None:
        k = self.k
        around = self.fan_neighbors(codes)
        for a, b in zip(around, around[1:]):
            if b - a >= 2:
                far = a * k + b
                partner = flip_partner(k, neighbor_masks(k, codes), far)
                return tuple(sorted([code for code in codes if code != far] + [partner]))
        return None

    def children(self, codes: Codes) -> list[Codes]:
        # a child has one diagonal fewer at vertex 0, so only those diagonals are flipped
        k = self.k
        masks = neighbor_masks(k, codes)
        kids = []
        for position, code in enumerate(codes):
            if code >= k:
                continue
            partner = flip_partner(k, masks, code)
            candidate = tuple(sorted(codes[:position] + codes[position + 1:] + (partner,)))
            if self.parent(candidate) == codes:
                kids.append(candidate)
        return kids

    def oracle(self) -> TreeOracle:
        return TreeOracle(root=self.root, children=self.children)


def reverse_search_tree(k: int) -> TreeOracle:
    return PolygonReverseSearch(k).oracle()
