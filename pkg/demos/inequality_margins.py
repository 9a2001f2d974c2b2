"""Numeric margins of the four scalar inequalities behind the bounds.

Each check returns both sides and the log margin. Random probing over
the stated domains plus the exact tightness scan for the exponent 1/8.
"""
import numpy as np

from lejabounds import (ineq1, ineq2, ineq2_tightness_scan, ineq3, ineq4,
                        switching_constant)

lam = switching_constant()
print("switching constant lambda =", lam)
print("  defining relation exp(exp(lam)) * (exp(lam) - 1) =",
      np.exp(np.exp(lam)) * (np.exp(lam) - 1.0))

# worked points first
r = ineq1(1.0, 1.0, 2.0)
print("\ntracked-point products, a=b=1, x=2:   lhs %.6f <= 1, margin %.3e" % (r.lhs, r.margin))
r = ineq2(2.0, 2.0, 1.0)
print("interval-shrink cost, A=B=2, a=1:     %.6f <= %.6f, margin %.3e" % (r.lhs, r.rhs, r.margin))
r = ineq3(1.0, 3.0)
print("split vs pooled spread, a=1, b=3:     %.6f <= %.6f, margin %.3e" % (r.lhs, r.rhs, r.margin))
r = ineq4()
print("constant above one fifth:             %.6f >  %.6f, margin %.3e" % (r.rhs, r.lhs, r.margin))

# random sweep, keep the smallest margin seen per inequality
rng = np.random.default_rng(11)
worst = [np.inf, np.inf, np.inf]
N = 40000
for _ in range(N):
    a, b = rng.uniform(1e-3, 1e3, 2)
    # x must avoid the dead zone around the origin where neither
    # reference point is trackable
    side = rng.choice([-1.0, 1.0])
    lo = np.exp(-lam) * (a if side < 0 else b)
    x = side * rng.uniform(lo, lo * 1e3)
    worst[0] = min(worst[0], ineq1(a, b, x).margin)

    A, B = rng.uniform(1e-3, 1e3, 2)
    aa = rng.uniform(0, 1) * A
    if aa > 0:
        worst[1] = min(worst[1], ineq2(A, B, aa).margin)

    u, v = rng.uniform(1e-6, 1e6, 2)
    worst[2] = min(worst[2], ineq3(u, v).margin)

print("\nsmallest log margins over %d draws:" % N)
print("  tracked-point products :", worst[0])
print("  interval-shrink cost   :", worst[1])
print("  split vs pooled spread :", worst[2])

# where the 1/8 exponent comes from: sup of (B-1)/(B+1)^2 over B > 1
scan = ineq2_tightness_scan()
print("\nexponent tightness: sup (B-1)/(B+1)^2 = %.12f at B = %.9f" %
      (scan.best_value, scan.best_b))
print("(the sup is exactly 1/8, attained at B = 3)")
