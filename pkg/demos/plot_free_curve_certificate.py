"""
A free curve with mu > tau
==========================

Here E_2 need not degenerate, so the second cycle is run and the Euler
characteristic of each eigenspace checks that E_3 has the limit sizes.
"""

from polemono import RunConfig, run

report = run(RunConfig(input="x^4*y^2+y^6-3*x*y^4*z+3*x^2*y^2*z^2-x^3*z^3"))
sp, inv = report.spectral, report.invariants

print("mu, tau =", inv.mu, inv.tau)
print("eps' =", report.tables.epsprime)
print("eps  =", report.tables.eps)

# per eigenvalue: sum of row-2 terms minus row-1 terms plus delta = chi(U)
for k, ok in sp.certificate.items():
    print(f"k={k}: {'ok' if ok else 'FAILS'}")
print("status:", inv.status)

print("Sp_P^1 =", inv.sp_P1)
print("Sp_P^0 =", inv.sp_P0)
