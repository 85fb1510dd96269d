"""Scalar maximization on a closed interval.

:func:`maximize_concave` is a golden-section search with a fixed evaluation
budget. :func:`grid_oracle` is an exhaustive uniform-grid scan used to
validate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi, ~0.618
DEFAULT_TOL = 1e-9


class OptimizerError(ValueError):
    """Bad interval, or the objective returned a non-finite value."""


@dataclass(frozen=True)
class MaximizerResult:
    x_star: float
    f_star: float
    iterations: int  # objective evaluations
    converged: bool


def _evaluate(f: Callable[[float], float], x: float) -> float:
    value = f(x)
    if not math.isfinite(value):
        raise OptimizerError(f"objective returned {value!r} at x={x!r}")
    return value


def _check_interval(x_lo: float, x_hi: float) -> None:
    if not (math.isfinite(x_lo) and math.isfinite(x_hi)):
        raise OptimizerError(f"interval bounds must be finite, got [{x_lo!r}, {x_hi!r}]")
    if x_lo > x_hi:
        raise OptimizerError(f"empty interval: x_lo={x_lo!r} > x_hi={x_hi!r}")


def golden_section_budget(width: float, tol: float) -> int:
    """Number of contractions needed to shrink ``width`` below ``tol``."""
    if width <= tol:
        return 0
    return math.ceil(math.log(tol / width) / math.log(INVPHI))


def maximize_concave(
    f: Callable[[float], float],
    x_lo: float,
    x_hi: float,
    tol: float = DEFAULT_TOL,
) -> MaximizerResult:
    """Maximize a concave (or unimodal) ``f`` on ``[x_lo, x_hi]``.

    After the golden-section bracket has shrunk below ``tol`` its midpoint
    is compared with both endpoints, so boundary optima are returned exactly.
    Ties go to the lower endpoint first, which makes a flat objective return
    ``x_lo``.
    """
    _check_interval(x_lo, x_hi)
    if not (tol > 0.0 and math.isfinite(tol)):
        raise OptimizerError(f"tol must be positive and finite, got {tol!r}")

    if x_lo == x_hi:
        return MaximizerResult(x_lo, _evaluate(f, x_lo), 1, True)

    f_lo = _evaluate(f, x_lo)
    f_hi = _evaluate(f, x_hi)
    evals = 2

    a, b = x_lo, x_hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = _evaluate(f, c), _evaluate(f, d)
    evals += 2
    for _ in range(golden_section_budget(x_hi - x_lo, tol)):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = _evaluate(f, c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = _evaluate(f, d)
        evals += 1

    x_mid = 0.5 * (a + b)
    f_mid = _evaluate(f, x_mid)
    evals += 1

    if f_lo >= f_mid and f_lo >= f_hi:
        x_star, f_star = x_lo, f_lo
    elif f_mid >= f_hi:
        x_star, f_star = x_mid, f_mid
    else:
        x_star, f_star = x_hi, f_hi
    return MaximizerResult(x_star, f_star, evals, b - a <= tol)


def grid_oracle(
    f: Callable,
    x_lo: float,
    x_hi: float,
    n_points: int,
    vectorized: bool = False,
) -> MaximizerResult:
    """Best point of a uniform ``n_points`` grid that includes both ends.

    With ``vectorized=True`` the objective is called once on the whole grid
    (a numpy array) instead of point by point. Ties resolve to the lowest x.
    """
    _check_interval(x_lo, x_hi)
    if n_points < 2:
        raise OptimizerError(f"n_points must be >= 2, got {n_points!r}")

    xs = np.linspace(x_lo, x_hi, int(n_points))
    if vectorized:
        values = np.asarray(f(xs), dtype=float)
    else:
        values = np.array([f(float(x)) for x in xs], dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise OptimizerError(f"objective returned {values[i]!r} at x={xs[i]!r}")

    i = int(np.argmax(values))
    return MaximizerResult(float(xs[i]), float(values[i]), int(n_points), True)
