"""
Pole order spectrum of a torus curve
====================================

With only weighted homogeneous singularities the first cycle already
gives the limit, so the whole computation is a sequence of kernel
dimensions of one family of matrices.
"""

from polemono import RunConfig, run

report = run(RunConfig(input="(x^2+y^2)^4+(y^4+z^4)^2", mode="auto"))
inv = report.invariants

print("mode used:", report.mode_used)
print("eps' :", report.tables.epsprime)
print("theta:", report.tables.theta)
print("q0 =", report.spectral.q0_observed)

print("Sp_P^1 =", inv.sp_P1)
print("Sp_P^0 =", inv.sp_P0)

# the Alexander polynomial and b_2(F) come with it
print("Delta^1 =", inv.delta1.factored())
print("b1, b2 =", inv.b1, inv.b2)
