"""
Hermite functions, quadrature and the ladder operators
======================================================

Hermite functions h_k are the eigenfunctions of L = -d^2/dt^2 + t^2 with
eigenvalues 2k + 1. This script evaluates them far into the oscillatory
region, builds a Gauss-Hermite rule, round-trips a function through its
Hermite coefficients and checks the ladder relations pointwise.
"""

import numpy as np

from hermite_kit.core.basis import BasisSpec, CoefVec
from hermite_kit.core.functions import hermite_eval_1d, hermite_table
from hermite_kit.core.grid import hermite_grid, synthesize, transform
from hermite_kit.core.ladder import ANNIHILATION, CREATION, ladder_apply
from hermite_kit.core.quadrature import gauss_hermite_rule

# The recurrence is log-rescaled, so high degrees stay finite and accurate.
for k, t in [(10, -1.3), (400, 10.0), (1000, 30.0)]:
    print(f"h_{k}({t}) = {hermite_eval_1d(k, t):.17g}")

# A 129-node rule integrates products h_j h_k exactly for j, k <= 64.
rule = gauss_hermite_rule(129)
tab = hermite_table(64, rule.nodes)
gram = (tab * rule.weights) @ tab.T
print("orthonormality residual:", np.max(np.abs(gram - np.eye(65))))

# Forward and inverse transform of a band-limited function.
basis = BasisSpec(1, 20)
c = CoefVec(basis, np.random.default_rng(0).standard_normal(basis.count))
grid = hermite_grid(20, 1)
f = synthesize(c, grid)
back = transform(f, basis)
print("coefficient round trip:", np.max(np.abs(back.values - c.values)))

# A = -d/dt + t raises the index; A* = d/dt + t lowers it.
t = np.linspace(-4, 4, 9)
vals = synthesize(c, t).values
deriv = synthesize(c, t, derivative=(1,)).values
up = synthesize(ladder_apply(CREATION, 0, c), t).values
down = synthesize(ladder_apply(ANNIHILATION, 0, c), t).values
print("A  residual:", np.max(np.abs(up - (-deriv + t * vals))))
print("A* residual:", np.max(np.abs(down - (deriv + t * vals))))
