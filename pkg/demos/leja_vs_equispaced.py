"""
Greedy nodes against equispaced and Chebyshev nodes on [-1, 1].

Interpolates the Runge function 1/(1+25x^2) at increasing degree and
prints the Lebesgue constant plus the max interpolation error for all
three node families. Equispaced nodes blow up, the greedy sequence
tracks Chebyshev closely.
"""
import numpy as np

from lejabounds import InterpolationOperator, leja_sequence, make_union


def runge(x):
    return 1.0 / (1.0 + 25.0 * x * x)


K = make_union([(-1.0, 1.0)])
seq = leja_sequence(K, 41)
xx = np.linspace(-1.0, 1.0, 4001)
fxx = runge(xx)

print("degree   equi Lambda   equi err     cheb Lambda   cheb err     greedy Lambda greedy err")
for n in [5, 9, 13, 17, 21, 25, 29, 33, 37, 41]:
    rows = []
    # equispaced
    eq = np.linspace(-1.0, 1.0, n)
    # Chebyshev (second kind, includes the endpoints)
    ch = np.cos(np.pi * np.arange(n) / (n - 1))
    # greedy prefix
    gp = seq.points[:n]
    for nodes in (eq, ch, gp):
        op = InterpolationOperator(nodes)
        lam = op.lebesgue_constant(K).lambda_n
        err = np.max(np.abs(op.interpolate(runge(op.nodes), xx) - fxx))
        rows.append((lam, err))
    print("%4d     %11.4g  %10.3e   %11.4g  %10.3e   %11.4g  %10.3e"
          % (n, rows[0][0], rows[0][1], rows[1][0], rows[1][1], rows[2][0], rows[2][1]))

# the greedy sequence is nested: the first n points stay put as n grows,
# which equispaced and Chebyshev families do not give you
print()
print("first 8 greedy points:", np.round(seq.points[:8], 6))
