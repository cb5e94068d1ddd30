"""
Roots of Bernstein-Sato polynomials from pole order pieces
==========================================================

Two pairs of quintics with identical Hilbert functions and topologically
equivalent singularities still have different root sets.
"""

from polemono import RunConfig, run

pairs = [
    ("x^5+y^4*z+x^4*y", "x^5+y^4*z+x^3*y^2"),
    ("x^5+x*y^3*z+y^4*z+x*y^4", "x^5+x*y^3*z+y^4*z"),
]

for first, second in pairs:
    a = run(RunConfig(input=first)).invariants
    b = run(RunConfig(input=second)).invariants
    ra, rb = set(a.bs.values()), set(b.bs.values())
    print(first, "->", ", ".join(str(v) for v in sorted(ra)))
    print(second, "->", ", ".join(str(v) for v in sorted(rb)))
    print("only in the second:", ", ".join(str(v) for v in sorted(rb - ra)))
    print()
