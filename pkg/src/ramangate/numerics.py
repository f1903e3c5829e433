"""Small numerical helpers shared across modules."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import NoConvergence


def simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights for a uniform grid of n points (n odd)."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"Simpson rule needs an odd point count >= 3, got {n}")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def bisect(f: Callable[[float], float], a: float, b: float,
           xtol: float = 1e-10, max_iter: int = 200) -> float:
    """Bisection root of f on [a, b]; endpoints must bracket a sign change."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise ValueError(f"interval [{a}, {b}] does not bracket a root")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0 or (b - a) < xtol:
            return m
        if fa * fm < 0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    raise NoConvergence(
        f"bisection did not reach xtol={xtol} in {max_iter} iterations")
