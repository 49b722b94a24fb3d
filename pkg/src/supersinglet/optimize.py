"""One-dimensional maximization helpers shared by detection and search."""

from __future__ import annotations

import math

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-9, max_iter: int = 200):
    """Maximize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``.

    The endpoints are evaluated too, so a monotone ``f`` returns its boundary.
    On equal values the smaller abscissa wins.
    """
    if hi < lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    candidates = [(lo, f(lo)), (x1, f1), (x2, f2), (hi, f(hi))]
    best_x, best_f = candidates[0]
    for x, fx in candidates[1:]:
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f
