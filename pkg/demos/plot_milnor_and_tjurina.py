"""
Milnor versus Tjurina numbers
=============================

mu(C) comes from a Macaulay matrix count in an affine chart; tau(C) is
the stable value of the Hilbert function. They differ exactly when some
singularity is not weighted homogeneous.
"""

from polemono import compute_hilbert, parse, total_milnor_number

curves = {
    "nodal cubic": "y^2*z-x^3-x^2*z",
    "cusp": "y^2*z-x^3",
    "torus (2,4)": "(x^2+y^2)^4+(y^4+z^4)^2",
    "Saito f1": "x^5+y^4*z+x^4*y",
    "Saito f3": "x^5+x*y^3*z+y^4*z+x*y^4",
}

for name, text in curves.items():
    f = parse(text)
    res = total_milnor_number(f)
    tau = compute_hilbert(f).tau
    # the chart used: identity unless z = 0 was tangent or hit a singular point
    print(f"{name:12s} mu={res.mu:3d} tau={tau:3d} stable from D={res.stabilization_degree} T={res.transform}")
