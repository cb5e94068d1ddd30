"""
Hilbert functions of Milnor algebras
====================================

Compare the Milnor algebra of a singular curve with that of a smooth
curve of the same degree, and read off the thresholds ct, st and mdr.
"""

from polemono import compute_hilbert, parse

# The torus curve has eight A_3 points, so M(f) ends up with dimension 24
f = parse("(x^2+y^2)^4+(y^4+z^4)^2")
data = compute_hilbert(f)

# m(f)_j next to the smooth values m(f_s)_j
for j in range(0, 5 * f.degree + 1, 2):
    print(f"j={j:2d}  m(f)={data.milnor(j):3d}  m(f_s)={data.smooth(j):3d}")

print("tau =", data.tau)
print("ct, st, mdr =", data.ct, data.st, data.mdr)

# syzygies split into the Koszul part and H^2 of the Koszul complex
j = 12
print(f"syz_{j} = {data.syz[j]} = {data.h2[j]} + {data.kw[j]}")
