"""Extreme nontrivial eigenvalues and the mixing-lemma intervals built on them.

Both solvers work on the complement of the principal eigenvector and look at
the two ends of the spectrum through shifted operators:

* ``P (M + sI) P`` whose dominant eigenvalue is ``theta_2 + s``;
* ``P (sI - M) P`` whose dominant eigenvalue is ``s - theta_n``;

with ``s = d`` for the adjacency matrix of a ``d``-regular graph and ``s = 1``
for the normalized adjacency matrix. Every returned eigenvalue comes with a
Rayleigh-quotient vector whose residual ``||Mx - theta x||`` is at most
``tol * s``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from expander_growth.errors import ConvergenceError, InvalidInputError
from expander_growth.generators.random_graphs import make_rng
from expander_growth.graph import degree_stats, is_connected
from expander_growth.models import Graph, SpectralSummary

logger = logging.getLogger(__name__)

Method = Literal["lanczos", "power"]

DENSE_LIMIT = 256
START_SEED = 0x5EED


@dataclass(frozen=True)
class Extremes:
    top: float
    bottom: float
    residual: float
    iterations: int

    @property
    def radius(self) -> float:
        return max(self.top, -self.bottom)


class _DeflatedOperator:
    def __init__(self, matrix: scipy.sparse.spmatrix, principal: np.ndarray, shift: float, sign: int) -> None:
        self.matrix = matrix
        self.principal = principal
        self.shift = shift
        self.sign = sign
        self.calls = 0

    def project(self, x: np.ndarray) -> np.ndarray:
        return x - self.principal * (self.principal @ x)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        self.calls += 1
        x = self.project(np.ravel(x))
        return self.project(self.shift * x + self.sign * (self.matrix @ x))


def _start_vector(n: int, principal: np.ndarray) -> np.ndarray:
    x = make_rng(START_SEED).random(n) - 0.5
    x -= principal * (principal @ x)
    return x / np.linalg.norm(x)


def _rayleigh(matrix, x: np.ndarray) -> tuple[float, float]:
    mx = matrix @ x
    theta = float(x @ mx)
    return theta, float(np.linalg.norm(mx - theta * x))


def _dense_extremes(matrix, principal: np.ndarray) -> Extremes:
    basis = scipy.linalg.null_space(principal[None, :])
    dense = matrix.toarray() if scipy.sparse.issparse(matrix) else np.asarray(matrix)
    values, vectors = scipy.linalg.eigh(basis.T @ dense @ basis)
    residual = max(_rayleigh(dense, basis @ vectors[:, i])[1] for i in (0, -1))
    return Extremes(top=float(values[-1]), bottom=float(values[0]), residual=residual, iterations=0)


def _power_side(op: _DeflatedOperator, start: np.ndarray, tol: float, max_iter: int) -> tuple[float, float]:
    x = start
    theta_prev = math.nan
    theta, residual = math.nan, math.inf
    for _ in range(max_iter):
        y = op.matvec(x)
        mx = op.sign * (y - op.shift * x)
        theta = float(x @ mx)
        residual = float(np.linalg.norm(mx - theta * x))
        if residual <= tol * op.shift:
            return theta, residual
        theta_prev, x = theta, op.project(y)
        x /= np.linalg.norm(x)
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} iterations",
        residual=residual,
        oscillation=abs(theta - theta_prev),
    )


def _lanczos_side(op: _DeflatedOperator, start: np.ndarray, tol: float, max_iter: int) -> tuple[float, float]:
    n = start.size
    linear = LinearOperator((n, n), matvec=op.matvec, dtype=np.float64)
    try:
        _, vectors = eigsh(
            linear, k=1, which="LA", v0=start, tol=tol / 4, maxiter=max_iter, ncv=min(n - 1, 64)
        )
    except ArpackNoConvergence as exc:
        residual = math.nan
        if exc.eigenvectors is not None and exc.eigenvectors.size:
            x = op.project(exc.eigenvectors[:, 0])
            _, residual = _rayleigh(op.matrix, x / np.linalg.norm(x))
        raise ConvergenceError("Lanczos iteration did not converge", residual=residual) from exc
    x = op.project(vectors[:, 0])
    x /= np.linalg.norm(x)
    theta, residual = _rayleigh(op.matrix, x)
    if residual > tol * op.shift:
        raise ConvergenceError("Lanczos vector fails the residual certificate", residual=residual)
    return theta, residual


def deflated_extremes(
    matrix,
    principal: np.ndarray,
    scale: float,
    tol: float = 1e-6,
    max_iter: int = 100_000,
    method: Method = "lanczos",
) -> Extremes:
    """Largest and smallest eigenvalues of ``matrix`` orthogonal to ``principal``."""
    n = principal.size
    principal = principal / np.linalg.norm(principal)
    if n < 2:
        raise InvalidInputError("the nontrivial spectrum of a single vertex is empty")
    if n <= DENSE_LIMIT:
        return _dense_extremes(matrix, principal)
    side: Callable[..., tuple[float, float]] = _power_side if method == "power" else _lanczos_side
    start = _start_vector(n, principal)
    upper = _DeflatedOperator(matrix, principal, scale, +1)
    top, top_residual = side(upper, start, tol, max_iter)
    lower = _DeflatedOperator(matrix, principal, scale, -1)
    bottom, bottom_residual = side(lower, start, tol, max_iter)
    extremes = Extremes(
        top=top,
        bottom=bottom,
        residual=max(top_residual, bottom_residual),
        iterations=upper.calls + lower.calls,
    )
    assert extremes.residual <= tol * scale
    logger.info(
        "spectral extremes top=%.6f bottom=%.6f after %d products", top, bottom, extremes.iterations
    )
    return extremes


def regular_extremes(g: Graph, tol: float = 1e-6, max_iter: int = 100_000, method: Method = "lanczos") -> Extremes:
    stats = degree_stats(g)
    if not stats.regular:
        raise InvalidInputError("lambda(G) is defined here for regular graphs only")
    if stats.d_max < 1:
        raise InvalidInputError("a 0-regular graph has no spectral gap")
    if not is_connected(g):
        raise InvalidInputError("graph must be connected")
    principal = np.full(g.n, 1.0 / math.sqrt(g.n))
    return deflated_extremes(g.adjacency, principal, float(stats.d_max), tol, max_iter, method)


def lambda_regular(g: Graph, tol: float = 1e-6, max_iter: int = 100_000, method: Method = "lanczos") -> float:
    return regular_extremes(g, tol, max_iter, method).radius


def normalized_extremes(g: Graph, tol: float = 1e-6, max_iter: int = 100_000, method: Method = "lanczos") -> Extremes:
    degrees = g.degrees.astype(np.float64)
    if np.any(degrees == 0):
        raise InvalidInputError("normalized adjacency needs a graph without isolated vertices")
    if not is_connected(g):
        raise InvalidInputError("graph must be connected")
    inv_sqrt = scipy.sparse.diags(1.0 / np.sqrt(degrees))
    normalized = (inv_sqrt @ g.adjacency @ inv_sqrt).tocsr()
    return deflated_extremes(normalized, np.sqrt(degrees), 1.0, tol, max_iter, method)


def mu_normalized(g: Graph, tol: float = 1e-6, max_iter: int = 100_000, method: Method = "lanczos") -> float:
    return normalized_extremes(g, tol, max_iter, method).radius


def ramanujan_bound(d: float) -> float:
    """``2 * sqrt(d - 1)``; accepts a real average degree."""
    if d < 1:
        raise InvalidInputError(f"the Ramanujan threshold needs d >= 1, got {d}")
    return 2.0 * math.sqrt(d - 1.0)


def ramanujan_check(g: Graph, tol: float = 1e-6, max_iter: int = 100_000) -> bool:
    d = degree_stats(g).d_max
    return lambda_regular(g, tol, max_iter) <= ramanujan_bound(d) + tol


def spectral_summary(g: Graph, tol: float = 1e-6, max_iter: int = 100_000, method: Method = "lanczos") -> SpectralSummary:
    stats = degree_stats(g)
    if stats.regular:
        extremes = regular_extremes(g, tol, max_iter, method)
        lam = extremes.radius
        d = stats.d_max
        return SpectralSummary(
            n=g.n,
            m=g.m,
            stats=stats,
            mu=lam / d,
            tol_achieved=extremes.residual,
            iterations=extremes.iterations,
            lam=lam,
            ramanujan=lam <= ramanujan_bound(d) + tol,
        )
    extremes = normalized_extremes(g, tol, max_iter, method)
    return SpectralSummary(
        n=g.n,
        m=g.m,
        stats=stats,
        mu=extremes.radius,
        tol_achieved=extremes.residual,
        iterations=extremes.iterations,
    )


def mixing_interval_regular(size_s: float, size_t: float, n: float, d: float, lam: float) -> tuple[float, float]:
    """Expander-mixing interval for ``e(S, T)`` in a ``d``-regular graph."""
    if not (0 <= size_s <= n and 0 <= size_t <= n):
        raise InvalidInputError("set sizes must lie in [0, n]")
    if d <= 0 or lam < 0:
        raise InvalidInputError("need d > 0 and lambda >= 0")
    center = d * size_s * size_t / n
    product_ = size_s * size_t * (1 - size_s / n) * (1 - size_t / n)
    radius = lam * math.sqrt(max(product_, 0.0))
    return center - radius, center + radius


def mixing_interval_nonregular(vol_s: float, vol_t: float, vol_v: float, mu: float) -> tuple[float, float]:
    """Interval for ``e(S, T)`` when ``S`` and ``T`` partition the vertex set.

    Only valid for partitions: ``vol_s + vol_t`` must equal ``vol_v``.
    """
    if vol_s <= 0 or vol_t <= 0:
        raise InvalidInputError("both sides of the partition need positive volume")
    if not math.isclose(vol_s + vol_t, vol_v, rel_tol=1e-12, abs_tol=0.0):
        raise InvalidInputError("volumes do not describe a partition of V")
    if not 0.0 <= mu <= 1.0:
        raise InvalidInputError(f"mu must lie in [0, 1], got {mu}")
    center = vol_s * vol_t / vol_v
    return center * (1 - mu), center * (1 + mu)


def mixing_lower_hybrid(
    size_s: float, size_t: float, n: float, d_bar: float, sigma: float, mu: float, clamp: bool = False
) -> float:
    """Lower bound on ``e(S, T)`` for a partition, from average degree and degree spread.

    Each factor bounds a volume from below. The raw value may be negative, and
    when both factors are negative it is positive and no longer a bound; pass
    ``clamp=True`` to floor each factor at zero.
    """
    if d_bar <= 0:
        raise InvalidInputError("average degree must be positive")
    left = d_bar * size_s - volume_deviation_bound(size_s, n, sigma)
    right = d_bar * size_t - volume_deviation_bound(size_t, n, sigma)
    if clamp:
        left, right = max(left, 0.0), max(right, 0.0)
    return (1 - mu) * left * right / (d_bar * n)


def volume_deviation_bound(size_s: float, n: float, sigma: float) -> float:
    """``sigma * sqrt(|S| n)``, bounding ``|d_bar |S| - vol(S)|``."""
    return sigma * math.sqrt(size_s * n)
