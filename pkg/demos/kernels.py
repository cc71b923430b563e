"""
Heat and Riesz kernels
======================

The heat kernel has a closed form (Mehler) and an eigen-series; comparing
them shows where the series is trustworthy. The first-order Riesz
transform A L^{-1/2} has a kernel singular on the diagonal: the smooth
series refuses points that are too close, while the heat-subordinated
integral resolves any off-diagonal pair.
"""

import numpy as np

from hermite_kit.riesz import (
    DiagonalProximityError,
    LadderWord,
    RieszOp,
    min_distance,
    riesz_kernel,
    riesz_kernel_subordinated,
)
from hermite_kit.spectral import heat_kernel, mehler_kernel

x = np.linspace(-3, 3, 7)
for t in (0.1, 0.5, 2.0):
    S = heat_kernel(t, x, x, table=True)
    M = mehler_kernel(t, x, x, table=True)
    print(f"t={t}: normwise relative series error {np.max(np.abs(S - M)) / np.max(np.abs(M)):.2e}")

op = RieszOp(LadderWord((1,), ("A",)))
xs, ys = np.array([0.5, 1.0]), np.array([-0.5, 2.0])
sub = riesz_kernel_subordinated(op, xs, ys)
for level in (6, 7, 8):
    ser = riesz_kernel(op, xs, ys, level=level)
    print(f"level {level} (refuses |x-y| < {min_distance(level):g}): max gap to subordinated {np.max(np.abs(ser - sub)):.2e}")

try:
    riesz_kernel(op, [0.0], [0.1], level=7)
except DiagonalProximityError as exc:
    print("refused:", exc)
print("subordinated value at |x-y| = 0.1:", float(riesz_kernel_subordinated(op, [0.0], [0.1])[0]))
