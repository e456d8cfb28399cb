from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np
import scipy.sparse

from expander_growth.errors import GraphInvariantError, InvalidInputError


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph in CSR form.

    Vertices are ``0..n-1``. ``indices[indptr[v]:indptr[v + 1]]`` is the sorted
    neighbour list of ``v``; every edge appears once in each endpoint's list.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] | np.ndarray) -> "Graph":
        if n < 0:
            raise InvalidInputError(f"vertex count must be nonnegative, got {n}")
        pairs = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        pairs = pairs.reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise GraphInvariantError(f"edge endpoint out of range 0..{n - 1}")
        if np.any(pairs[:, 0] == pairs[:, 1]):
            loop = int(pairs[pairs[:, 0] == pairs[:, 1]][0, 0])
            raise GraphInvariantError(f"self-loop at vertex {loop}")
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            raise GraphInvariantError("duplicate edge")
        return cls.from_arcs(n, np.concatenate([lo, hi]), np.concatenate([hi, lo]))

    @classmethod
    def from_arcs(cls, n: int, rows: np.ndarray, cols: np.ndarray) -> "Graph":
        # arcs must already be symmetric and duplicate free
        order = np.lexsort((cols, rows))
        rows = rows[order]
        indices = np.ascontiguousarray(cols[order], dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(n=n, indptr=indptr, indices=indices)

    @property
    def m(self) -> int:
        return int(self.indices.size // 2)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def arc_sources(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)

    @cached_property
    def adjacency(self) -> scipy.sparse.csr_matrix:
        data = np.ones(self.indices.size, dtype=np.float64)
        return scipy.sparse.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` array of ``u < v`` pairs in lexicographic order."""
        keep = self.arc_sources < self.indices
        return np.column_stack([self.arc_sources[keep], self.indices[keep]])

    def validate(self) -> None:
        if self.indptr.size != self.n + 1 or self.indptr[0] != 0:
            raise GraphInvariantError("malformed row pointer")
        if self.indices.size % 2:
            raise GraphInvariantError("odd arc count: adjacency is not symmetric")
        rows, cols = self.arc_sources, self.indices
        if np.any(rows == cols):
            raise GraphInvariantError("self-loop present")
        keys = rows * self.n + cols
        if np.any(np.diff(keys) <= 0):
            raise GraphInvariantError("neighbour lists not strictly sorted")
        mirrored = np.sort(cols * self.n + rows)
        if not np.array_equal(mirrored, keys):
            raise GraphInvariantError("adjacency is not symmetric")


class VertexSet:
    """Dense indicator over ``0..n-1`` with a cached cardinality."""

    __slots__ = ("mask", "size")

    def __init__(self, n: int, members: Iterable[int] | np.ndarray = ()) -> None:
        self.mask = np.zeros(n, dtype=bool)
        idx = np.asarray(members if isinstance(members, np.ndarray) else list(members), dtype=np.int64)
        if idx.size:
            if idx.min() < 0 or idx.max() >= n:
                raise InvalidInputError(f"vertex index out of range 0..{n - 1}")
            self.mask[idx] = True
        self.size = int(self.mask.sum())

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        vs = cls(n)
        vs.mask[:] = True
        vs.size = n
        return vs

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "VertexSet":
        vs = cls(mask.size)
        vs.mask[:] = mask
        vs.size = int(vs.mask.sum())
        return vs

    @property
    def n(self) -> int:
        return self.mask.size

    def add(self, v: int) -> None:
        if not self.mask[v]:
            self.mask[v] = True
            self.size += 1

    def discard(self, v: int) -> None:
        if self.mask[v]:
            self.mask[v] = False
            self.size -= 1

    def complement(self) -> "VertexSet":
        return VertexSet.from_mask(~self.mask)

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __contains__(self, v: int) -> bool:
        return bool(self.mask[v])

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"VertexSet(n={self.n}, size={self.size})"


@dataclass(frozen=True)
class DegreeStats:
    d_bar: float
    sigma2: float
    d_min: int
    d_max: int

    @property
    def regular(self) -> bool:
        return self.d_min == self.d_max

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


@dataclass(frozen=True, order=True)
class Triangulation:
    """Triangulation of the convex ``k``-gon as its sorted diagonals."""

    k: int
    diagonals: tuple[tuple[int, int], ...]

    @classmethod
    def fan(cls, k: int, apex: int = 0) -> "Triangulation":
        diagonals = [tuple(sorted((apex, (apex + j) % k))) for j in range(2, k - 1)]
        return cls(k, tuple(sorted(diagonals)))

    @classmethod
    def from_codes(cls, k: int, codes: Sequence[int]) -> "Triangulation":
        return cls(k, tuple(divmod(code, k) for code in sorted(codes)))

    def codes(self) -> tuple[int, ...]:
        return tuple(i * self.k + j for i, j in self.diagonals)

    def validate(self) -> None:
        k = self.k
        if len(self.diagonals) != k - 3:
            raise InvalidInputError(f"a {k}-gon triangulation has {k - 3} diagonals, got {len(self.diagonals)}")
        if list(self.diagonals) != sorted(set(self.diagonals)):
            raise InvalidInputError("diagonals must be distinct and sorted")
        for i, j in self.diagonals:
            if not (0 <= i < j <= k - 1) or j - i < 2 or (i, j) == (0, k - 1):
                raise InvalidInputError(f"({i},{j}) is not a diagonal of the {k}-gon")
        for x, first in enumerate(self.diagonals):
            for second in self.diagonals[x + 1:]:
                if crosses(first, second):
                    raise InvalidInputError(f"diagonals {first} and {second} cross")

    def __str__(self) -> str:
        return "".join(f"({i},{j})" for i, j in self.diagonals)


def crosses(first: tuple[int, int], second: tuple[int, int]) -> bool:
    """Two chords cross iff exactly one endpoint of ``second`` lies strictly inside ``first``."""
    i, j = first
    a, b = second
    return (i < a < j) != (i < b < j) and a not in first and b not in first


@dataclass(frozen=True)
class ProjMatrix:
    """Canonical representative of a class of invertible 2x2 matrices mod ``q``."""

    a: int
    b: int
    c: int
    d: int
    q: int

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.q

    def scaled(self, s: int) -> "ProjMatrix":
        q = self.q
        return ProjMatrix(s * self.a % q, s * self.b % q, s * self.c % q, s * self.d % q, q)

    def canonical_pgl(self) -> "ProjMatrix":
        if self.det == 0:
            raise InvalidInputError("matrix is singular mod q")
        lead = self.a if self.a % self.q else self.b
        return self.scaled(pow(lead, -1, self.q))

    def canonical_psl(self) -> "ProjMatrix":
        q = self.q
        det = self.det
        if det == 0:
            raise InvalidInputError("matrix is singular mod q")
        if pow(det, (q - 1) // 2, q) != 1:
            raise InvalidInputError("determinant is not a square mod q; class is not in PSL")
        target = pow(det, -1, q)
        root = next(x for x in range(1, q) if x * x % q == target)
        unit = self.scaled(root)
        lead = unit.a if unit.a else unit.b
        return unit if lead < q / 2 else unit.scaled(q - 1)

    def __mul__(self, other: "ProjMatrix") -> "ProjMatrix":
        q = self.q
        return ProjMatrix(
            (self.a * other.a + self.b * other.c) % q,
            (self.a * other.b + self.b * other.d) % q,
            (self.c * other.a + self.d * other.c) % q,
            (self.c * other.b + self.d * other.d) % q,
            q,
        )

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class SpectralSummary:
    n: int
    m: int
    stats: DegreeStats
    mu: float
    tol_achieved: float
    iterations: int
    lam: float | None = None
    ramanujan: bool | None = None

    @property
    def two_sqrt_dm1(self) -> float:
        d = self.stats.d_max if self.stats.regular else self.stats.d_bar
        return 2.0 * math.sqrt(max(d - 1.0, 0.0))


@dataclass
class GrowthTrajectory:
    """Snapshot record of one growth run.

    ``snapshots`` rows are ``(t, |P|, |Q|, |U|)``; ``parent[v]`` is the tree
    parent of every visited ``v`` other than ``start`` and ``-1`` elsewhere.
    """

    n: int
    start: int
    seed: int
    snapshots: list[tuple[int, int, int, int]] = field(default_factory=list)
    parent: np.ndarray | None = None
    order: list[int] = field(default_factory=list)
    set_dumps: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)

    @property
    def final_processed(self) -> int:
        return self.snapshots[-1][1]

    def densities(self) -> np.ndarray:
        """Rows of ``(pi, kappa, upsilon)`` aligned with ``snapshots``."""
        counts = np.asarray(self.snapshots, dtype=np.float64)[:, 1:]
        return counts / self.n

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(int(p), v) for v, p in enumerate(self.parent) if p >= 0]


@dataclass(frozen=True)
class SizeInterval:
    lower: float
    upper: float
    W: int
    eUW: float
    d: float
    lam: float

    @property
    def finite(self) -> bool:
        return math.isfinite(self.upper)

    def contains(self, n: float) -> bool:
        return self.lower <= n <= self.upper

    def normalized(self, n: float) -> tuple[float, float]:
        return (self.lower / n, self.upper / n)


@dataclass(frozen=True)
class TreeOracle:
    root: Hashable
    children: Callable[[Hashable], Sequence[Hashable]]


@dataclass(frozen=True)
class ProbeResult:
    estimate: float
    depth: int
    seed: int


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved options of one CLI invocation, echoed into output headers."""

    subcommand: str
    seed: int
    command_line: str
    out: str | None = None
    snapshot_every: int | None = None
    samples: int | None = None
    lambda_policy: str | None = None
    tol: float | None = None
    max_iter: int | None = None
    columns: str | None = None
