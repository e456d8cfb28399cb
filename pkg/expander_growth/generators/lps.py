"""LPS Ramanujan Cayley graphs on PSL(2, Z/qZ) or PGL(2, Z/qZ).

Group elements are canonical matrix representatives packed as
``((a*q + b)*q + c)*q + d``; vertex ids are ranks of these keys, so the
numbering is lexicographic in ``(a, b, c, d)``.
"""

from __future__ import annotations

import logging
import math
from itertools import product

import numpy as np

from expander_growth.errors import ConstructionError, InvalidInputError
from expander_growth.models import Graph, ProjMatrix

logger = logging.getLogger(__name__)


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    if x % 2 == 0:
        return x == 2
    return all(x % f for f in range(3, math.isqrt(x) + 1, 2))


def legendre(a: int, q: int) -> int:
    r = pow(a % q, (q - 1) // 2, q)
    return -1 if r == q - 1 else r


def sqrt_minus_one(q: int) -> int:
    return next(x for x in range(1, q) if x * x % q == q - 1)


def quaternion_solutions(p: int) -> list[tuple[int, int, int, int]]:
    """All ``a0^2 + a1^2 + a2^2 + a3^2 == p`` with ``a0 > 0`` odd and the rest even."""
    limit = math.isqrt(p)
    odd = [a for a in range(1, limit + 1) if a % 2]
    even = [a for a in range(-limit, limit + 1) if a % 2 == 0]
    return [
        (a0, a1, a2, a3)
        for a0, a1, a2, a3 in product(odd, even, even, even)
        if a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p
    ]


def lps_generators(p: int, q: int) -> list[ProjMatrix]:
    i = sqrt_minus_one(q)
    projective_special = legendre(p, q) == 1
    generators = []
    for a0, a1, a2, a3 in quaternion_solutions(p):
        raw = ProjMatrix((a0 + i * a1) % q, (a2 + i * a3) % q, (-a2 + i * a3) % q, (a0 - i * a1) % q, q)
        generators.append(raw.canonical_psl() if projective_special else raw.canonical_pgl())
    if len(generators) != p + 1:
        raise ConstructionError(f"expected {p + 1} generators, found {len(generators)}")
    if len(set(generators)) != len(generators):
        raise ConstructionError("two generators coincide in the projective group")
    return generators


class _ModularTables:
    def __init__(self, q: int) -> None:
        self.q = q
        residues = np.arange(q, dtype=np.int64)
        self.inverse = np.zeros(q, dtype=np.int64)
        self.inverse[1:] = [pow(int(x), -1, q) for x in residues[1:]]
        self.root = np.zeros(q, dtype=np.int64)
        self.is_square = np.zeros(q, dtype=bool)
        squares = residues * residues % q
        self.root[squares[1:]] = residues[1:]
        self.is_square[squares[1:]] = True


def _canonical_pgl(m: np.ndarray, tables: _ModularTables) -> np.ndarray:
    q = tables.q
    lead = np.where(m[:, 0] != 0, m[:, 0], m[:, 1])
    return m * tables.inverse[lead][:, None] % q


def _canonical_psl(m: np.ndarray, tables: _ModularTables) -> np.ndarray:
    q = tables.q
    det = (m[:, 0] * m[:, 3] - m[:, 1] * m[:, 2]) % q
    scale = tables.root[tables.inverse[det]]
    unit = m * scale[:, None] % q
    lead = np.where(unit[:, 0] != 0, unit[:, 0], unit[:, 1])
    flip = lead > q // 2
    unit[flip] = (q - unit[flip]) % q
    return unit


def _pack(m: np.ndarray, q: int) -> np.ndarray:
    return ((m[:, 0] * q + m[:, 1]) * q + m[:, 2]) * q + m[:, 3]


def group_elements(q: int, projective_special: bool) -> np.ndarray:
    """Sorted canonical representatives of PSL(2, q) or PGL(2, q) as an ``(N, 4)`` array."""
    tables = _ModularTables(q)
    b, c, d = (x.ravel() for x in np.meshgrid(*(np.arange(q, dtype=np.int64),) * 3, indexing="ij"))
    lead_one = np.column_stack([np.ones_like(b), b, c, d])
    c2, d2 = (x.ravel() for x in np.meshgrid(np.arange(q, dtype=np.int64), np.arange(q, dtype=np.int64), indexing="ij"))
    lead_zero = np.column_stack([np.zeros_like(c2), np.ones_like(c2), c2, d2])
    candidates = np.concatenate([lead_one, lead_zero])
    det = (candidates[:, 0] * candidates[:, 3] - candidates[:, 1] * candidates[:, 2]) % q
    candidates = candidates[det != 0]
    if projective_special:
        det = (candidates[:, 0] * candidates[:, 3] - candidates[:, 1] * candidates[:, 2]) % q
        candidates = _canonical_psl(candidates[tables.is_square[det]], tables)
    keys = np.unique(_pack(candidates, q))
    return np.column_stack([keys // q**3, keys // q**2 % q, keys // q % q, keys % q])


def lps_graph(p: int, q: int) -> Graph:
    if not (is_prime(p) and is_prime(q)):
        raise InvalidInputError(f"p={p} and q={q} must both be prime")
    if p == q or p % 4 != 1 or q % 4 != 1:
        raise InvalidInputError("p and q must be distinct primes congruent to 1 mod 4")
    if q * q <= 4 * p:
        raise InvalidInputError(f"q={q} must exceed 2*sqrt(p) for a simple Cayley graph")

    projective_special = legendre(p, q) == 1
    tables = _ModularTables(q)
    generators = lps_generators(p, q)
    elements = group_elements(q, projective_special)
    keys = _pack(elements, q)
    n = keys.size
    expected = (q**3 - q) // 2 if projective_special else q**3 - q
    if n != expected:
        raise ConstructionError(f"group enumeration produced {n} elements, expected {expected}")
    logger.info("LPS(%d,%d): %s with %d elements", p, q, "PSL" if projective_special else "PGL", n)

    canonical = _canonical_psl if projective_special else _canonical_pgl
    a, b, c, d = elements.T
    targets = np.empty((n, len(generators)), dtype=np.int64)
    for column, s in enumerate(generators):
        product_ = np.column_stack([
            (a * s.a + b * s.c) % q,
            (a * s.b + b * s.d) % q,
            (c * s.a + d * s.c) % q,
            (c * s.b + d * s.d) % q,
        ])
        packed = _pack(canonical(product_, tables), q)
        position = np.searchsorted(keys, packed)
        if np.any(position >= n) or np.any(keys[np.minimum(position, n - 1)] != packed):
            raise ConstructionError("generator product left the group")
        targets[:, column] = position

    sources = np.repeat(np.arange(n, dtype=np.int64), len(generators))
    flat = targets.ravel()
    if np.any(sources == flat):
        raise ConstructionError("generator set produces a self-loop")
    arc_keys = sources * n + flat
    if np.unique(arc_keys).size != arc_keys.size:
        raise ConstructionError("generator set produces a duplicate edge")
    mirrored = np.sort(flat * n + sources)
    if not np.array_equal(np.sort(arc_keys), mirrored):
        raise ConstructionError("generator set is not closed under inversion")
    return Graph.from_arcs(n, sources, flat)
