"""Grid-then-golden-section maximization helpers shared across modules."""

from __future__ import annotations

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 0.618...
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 0.382...


def golden_max(f, lo: float, hi: float, iters: int = 80):
    """Maximize f on [lo, hi] by golden-section search.

    Endpoints are always evaluated and compared against the interior result;
    ties resolve toward the smaller abscissa. Assumes f is unimodal on the
    bracket, which callers arrange by bracketing a grid argmax.
    """
    if hi < lo:
        lo, hi = hi, lo
    cand = [(lo, f(lo))]
    if hi > lo:
        cand.append((hi, f(hi)))
        a, b = lo, hi
        h = b - a
        c = a + _INVPHI2 * h
        d = a + _INVPHI * h
        fc, fd = f(c), f(d)
        for _ in range(iters):
            if h <= 0.0:
                break
            if fc >= fd:
                b, d, fd = d, c, fc
                h = b - a
                c = a + _INVPHI2 * h
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                h = b - a
                d = a + _INVPHI * h
                fd = f(d)
        cand.append((c, fc) if fc >= fd else (d, fd))
    best_x, best_f = cand[0]
    for x, fx in cand[1:]:
        if fx > best_f or (fx == best_f and x < best_x):
            best_x, best_f = x, fx
    return best_x, best_f


def refine_grid_max(f, grid, idx: int, lo_cap: float = None, hi_cap: float = None,
                    iters: int = 80):
    """Refine a grid argmax by golden search over its neighbor bracket.

    The bracket is [grid[idx-1], grid[idx+1]] clipped to the enclosing
    component via lo_cap/hi_cap, so the refined point never leaves the set.
    """
    lo = grid[idx - 1] if idx > 0 else grid[idx]
    hi = grid[idx + 1] if idx + 1 < len(grid) else grid[idx]
    if lo_cap is not None:
        lo = max(lo, lo_cap)
    if hi_cap is not None:
        hi = min(hi, hi_cap)
    return golden_max(f, float(lo), float(hi), iters=iters)
