"""
Empirical constants for kernel estimates
========================================

An inequality |LHS| <= C RHS is checked by taking the sup of LHS/RHS over
a declared sample domain, then again at doubled density. A ratio near 1
means the constant has settled. The dyadic Riesz pieces show how the
lowest level can sit outside the asymptotic regime.
"""

from hermite_kit.verify import check_ddKj, check_QQ

for mu in (0.0, 2.0):
    print(check_QQ(mu).summary())

for mu in (0.0, 2.0):
    reps, spread = check_ddKj("riesz", 0, 0, 0, mu=mu)
    consts = ", ".join(f"{r.constant:.3g}" for r in reps)
    print(f"riesz pieces, mu={mu:g}: C_j for j=1..5 = [{consts}], spread {spread:.2f}")
