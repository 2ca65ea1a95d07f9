"""Scalar maximization on an interval."""
from __future__ import annotations

import math
from typing import Callable

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-9
) -> tuple[float, float]:
    """Golden-section maximization of a unimodal function on [a, b].

    Returns (x, f(x)); the interval endpoints are always candidates, so a
    boundary maximum is never missed by more than the usual O(tol^2) value
    error.  Deterministic for deterministic f.
    """
    if not b > a:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    lo, hi = a, b
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    candidates = [(x, f(x)), (a, f(a)), (b, f(b))]
    return max(candidates, key=lambda p: p[1])
