"""Closed-form bounds on queue density and on the vertex count.

All evaluators are plain double-precision functions of their arguments;
``pi`` is always the time density ``t / n``.
"""

from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np
import scipy.optimize

from expander_growth.errors import InvalidInputError
from expander_growth.models import SizeInterval

logger = logging.getLogger(__name__)

# Published summary of the dihedral quotient of the 4-cube flip graph.
CUBE4_ORBITS = 247_451
CUBE4_EDGES = 1_548_472
CUBE4_D_BAR = 2 * CUBE4_EDGES / CUBE4_ORBITS

_BISECT_FLOOR = 1e-300


def _check_pi(pi: float) -> None:
    if not 0.0 <= pi <= 1.0:
        raise InvalidInputError(f"pi must lie in [0, 1], got {pi}")


def _check_lambda(d: float, lam: float) -> None:
    if not 0.0 <= lam < d:
        raise InvalidInputError(f"need 0 <= lambda < d, got lambda={lam}, d={d}")


def ramanujan_lambda(d: float) -> float:
    if d < 1:
        raise InvalidInputError(f"2*sqrt(d - 1) needs d >= 1, got {d}")
    return 2.0 * math.sqrt(d - 1.0)


def structural_queue_lower(pi: float, d: float, lam: float) -> float:
    """Deterministic lower bound on the queue density after ``pi * n`` steps."""
    _check_pi(pi)
    _check_lambda(d, lam)
    if lam == 0.0:
        return 1.0 - pi if pi > 0 else 0.0
    rest = lam * lam * (1.0 - pi)
    return 1.0 - pi - rest / (d * d * pi + rest)


def beta(pi: float, d: float, lam: float) -> float:
    """Lower bound on the expected queue density; unclamped, may be negative."""
    if d <= 1:
        raise InvalidInputError(f"beta needs d > 1, got {d}")
    _check_pi(pi)
    _check_lambda(d, lam)
    return 1.0 - pi - math.exp(-(d - lam) * (1.0 + 1.0 / (d - 1.0)) * pi)


def unvisited_density_bounds(W: int, eUW: float, d: float, lam: float) -> tuple[float, float]:
    """Interval for ``|U| / n`` given ``|W|`` and ``e(U, W)``; the upper end may exceed 1."""
    _check_size_inputs(W, eUW, d, lam)
    lower = eUW / ((d + lam) * W)
    upper = eUW / ((d - lam) * W)
    return lower, upper


def _check_size_inputs(W: int, eUW: float, d: float, lam: float) -> None:
    if W < 1:
        raise InvalidInputError(f"|W| must be at least 1, got {W}")
    if eUW < 0:
        raise InvalidInputError(f"e(U, W) must be nonnegative, got {eUW}")
    _check_lambda(d, lam)


def vertex_count_bounds(W: int, eUW: float, d: float, lam: float) -> SizeInterval:
    """Interval for ``n`` from the mixing lemma applied to ``W = P ∪ Q``.

    The upper end is ``inf`` while ``(d - lambda) |W| <= e(U, W)``.
    """
    _check_size_inputs(W, eUW, d, lam)
    low_den = (d + lam) * W - eUW
    if low_den <= 0:
        raise InvalidInputError(
            f"e(U, W)={eUW} exceeds (d + lambda)|W|; inputs are inconsistent with a d-regular graph"
        )
    lower = (d + lam) * W * W / low_den
    up_den = (d - lam) * W - eUW
    upper = (d - lam) * W * W / up_den if up_den > 0 else math.inf
    assert lower >= W * (1 - 1e-12)
    return SizeInterval(lower=lower, upper=upper, W=W, eUW=eUW, d=d, lam=lam)


def giant_component_density(d: float, tol: float = 1e-14) -> float:
    """Root of ``1 - x = exp(-d x)`` in ``(0, 1)``."""
    if d <= 1:
        raise InvalidInputError(f"no giant component for d <= 1, got {d}")

    def f(x: float) -> float:
        return -math.expm1(-d * x) - x

    # f > 0 just above 0 since d > 1, and f(1) = -exp(-d) < 0
    root = scipy.optimize.bisect(f, _BISECT_FLOOR, 1.0, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=2000)
    logger.debug("delta0(%g) = %.15g", d, root)
    return float(root)


def er_queue_density(pi: float, d: float, delta0: float | None = None) -> float:
    """Asymptotic queue density of growth on ``G(n, d/n)``; zero from ``delta0`` on."""
    if d <= 1:
        raise InvalidInputError(f"need d > 1, got {d}")
    _check_pi(pi)
    if delta0 is None:
        delta0 = giant_component_density(d)
    if pi >= delta0:
        return 0.0
    return 1.0 - pi - math.exp(-d * pi)


def expected_unvisited_density(pi: float, d: float) -> float:
    return math.exp(-d * pi)


def grid(points: int = 1001) -> np.ndarray:
    if points < 2:
        raise InvalidInputError("a grid needs at least two points")
    return np.linspace(0.0, 1.0, points)


def curve(fn: Callable[[float], float], points: int = 1001) -> list[tuple[float, float]]:
    return [(float(pi), fn(float(pi))) for pi in grid(points)]


def cube4_beta(pi: float, lam: float | None = None) -> float:
    """``beta`` at the average degree of the 4-cube quotient flip graph."""
    return beta(pi, CUBE4_D_BAR, ramanujan_lambda(CUBE4_D_BAR) if lam is None else lam)
