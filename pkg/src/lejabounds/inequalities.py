"""Elementary inequalities backing the switching-strategy estimates.

Each check returns an IneqReport whose margin is log(rhs) - log(lhs), so
"holds" means margin >= -TOL with TOL absorbing roundoff. Vectorized
*_log_margin cores take array arguments and are what the Monte Carlo
verification sweeps call; the scalar wrappers exist for interactive use.

The four facts:

1. For a, b > 0 and real x outside the open interval (-e^-lam a, e^-lam b),
   x != 0, the weighted geometric mean

       (|x + a| / |x|)^(b/(a+b)) * (|x - b| / |x|)^(a/(a+b)) <= 1.

   Inside that interval it can fail, which is exactly why the two-track
   rule switches there; the core raises on such inputs rather than
   reporting a meaningless margin.

2. For 0 < a <= A and B > 0,

       ((A-a)/a)^(B/(A+B)) * ((B+a)/a)^(A/(A+B))
           <= (A/a) * (min(A,B) / min(a,B))^(1/8).

   The 1/8 cannot be lowered: the governing exponent is
   sup_B (B-1)/(B+1)^2 = 1/8, attained at B = 3 (see tightness_scan).

3. For a, b > 0,  (a + b) / (a^(a/(a+b)) * b^(b/(a+b))) <= 2, with
   equality iff a = b.

4. The switching constant exceeds 1/5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._search import golden_max
from .bounds import switching_constant
from .compact_set import ValidationError

TOL = 1e-12


@dataclass(frozen=True)
class IneqReport:
    lhs: float
    rhs: float
    margin: float          # log(rhs) - log(lhs)
    holds: bool


def _report(log_lhs: float, log_rhs: float) -> IneqReport:
    margin = log_rhs - log_lhs
    return IneqReport(lhs=math.exp(log_lhs) if log_lhs < 700 else math.inf,
                      rhs=math.exp(log_rhs) if log_rhs < 700 else math.inf,
                      margin=margin, holds=bool(margin >= -TOL))


def ineq1_log_margin(a, b, x, lam: float = None):
    """log margin of the shifted-ratio geometric mean against 1."""
    lam = switching_constant() if lam is None else float(lam)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x = np.asarray(x, dtype=float)
    a, b, x = np.broadcast_arrays(a, b, x)
    if np.any(a <= 0) or np.any(b <= 0):
        raise ValidationError("offsets a, b must be positive")
    if np.any(x == 0):
        raise ValidationError("x = 0 is outside the domain")
    es = math.exp(-lam)
    inside = (x > -es * a) & (x < es * b)
    if np.any(inside):
        raise ValidationError("x inside the open exclusion interval "
                              "(-e^-lam a, e^-lam b); the bound can fail there")
    wa = b / (a + b)
    wb = a / (a + b)
    with np.errstate(divide="ignore"):
        log_lhs = (wa * (np.log(np.abs(x + a)) - np.log(np.abs(x)))
                   + wb * (np.log(np.abs(x - b)) - np.log(np.abs(x))))
    return -log_lhs


def ineq1(a: float, b: float, x: float, lam: float = None) -> IneqReport:
    m = float(ineq1_log_margin(a, b, x, lam))
    return _report(-m, 0.0)


def ineq2_log_margin(A, B, a):
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    a = np.asarray(a, dtype=float)
    A, B, a = np.broadcast_arrays(A, B, a)
    if np.any(a <= 0) or np.any(B <= 0) or np.any(a > A):
        raise ValidationError("need 0 < a <= A and B > 0")
    with np.errstate(divide="ignore"):
        log_lhs = (B / (A + B) * np.log((A - a) / a)
                   + A / (A + B) * np.log((B + a) / a))
    log_rhs = np.log(A / a) + 0.125 * np.log(np.minimum(A, B) / np.minimum(a, B))
    return log_rhs - log_lhs


def ineq2(A: float, B: float, a: float) -> IneqReport:
    A, B, a = float(A), float(B), float(a)
    margin = float(ineq2_log_margin(A, B, a))
    with np.errstate(divide="ignore"):
        log_lhs = float(B / (A + B) * np.log((A - a) / a)
                        + A / (A + B) * np.log((B + a) / a))
    return _report(log_lhs, log_lhs + margin)


def ineq3_log_margin(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a, b = np.broadcast_arrays(a, b)
    if np.any(a <= 0) or np.any(b <= 0):
        raise ValidationError("need a, b > 0")
    log_lhs = np.log(a + b) - (a * np.log(a) + b * np.log(b)) / (a + b)
    return math.log(2.0) - log_lhs


def ineq3(a: float, b: float) -> IneqReport:
    margin = float(ineq3_log_margin(a, b))
    return _report(math.log(2.0) - margin, math.log(2.0))


def ineq4() -> IneqReport:
    lam = switching_constant()
    # linear margin here; the claim is a strict separation, not a ratio
    return IneqReport(lhs=0.2, rhs=lam, margin=lam - 0.2, holds=bool(lam > 0.2))


@dataclass(frozen=True)
class TightnessScan:
    best_b: float
    best_value: float


def ineq2_tightness_scan(b_lo: float = 1.0, b_hi: float = 1e3,
                         grid: int = 4096) -> TightnessScan:
    """Maximize (B-1)/(B+1)^2, the exponent that makes the second
    inequality sharp. The maximum is 1/8 at B = 3."""
    def f(B):
        return (B - 1.0) / (B + 1.0) ** 2

    bs = np.geomspace(max(b_lo, 1e-6), b_hi, grid)
    vals = f(bs)
    i = int(np.argmax(vals))
    lo = bs[max(i - 1, 0)]
    hi = bs[min(i + 1, len(bs) - 1)]
    xb, vb = golden_max(f, float(lo), float(hi))
    if vals[i] > vb:
        xb, vb = float(bs[i]), float(vals[i])
    return TightnessScan(best_b=xb, best_value=vb)
