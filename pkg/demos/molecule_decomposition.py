"""
Splitting a molecule into atoms
===============================

A molecule is concentrated on a small ball B and decays over the dyadic
annuli around it. The decomposition subtracts, annulus by annulus, the
polynomial part seen by the dual basis and moves the moments outward by
summation by parts. Every piece keeps vanishing moments and the pieces
add back to the input.
"""

from hermite_kit.hardy import Ball, SpaceParams, decompose_molecule, stability, synthetic_molecule

ball = Ball((0.0,), 1 / 16)
params = SpaceParams(p=1.0, q=2.0, omega=1.5, delta=1.5)
print("ball regime:", ball.regime, " rho_B =", ball.rho)

m = synthetic_molecule("odd-gauss", ball, params)
dec = decompose_molecule(m, ball, params)
print(f"J = {dec.J}, {len(dec.pieces_j)} annulus pieces, {len(dec.pieces_ja)} transfer pieces")
for key in ("reassembly_L2", "mol8_moment", "dual_residual", "telescoping_L2"):
    print(f"  {key}: {dec.diagnostics[key]:.2e}")
print("constants:", {k: round(v, 4) for k, v in dec.constants.items()})

# The constants should not drift when one more annulus is included.
for k, (a, b, ratio) in stability(m, ball, params, J=dec.J).items():
    print(f"  {k}: J -> J+1 ratio {ratio:.4f}")
