"""Total Milnor number of a reduced plane curve.

After a linear change of coordinates making the line z = 0 transversal to C
(no singular point on it and not tangent to C), mu(C) equals the length of
C[x, y] / (g_x, g_y, g^2) with g(x, y) = f(x, y, 1). That length is read off
as the stable value of

    t_D = dim C[x, y]_{<=D} - rank(span of m*h, h in {g_x, g_y, g^2}, deg(m*h) <= D).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import flint

from .linalg import RankPolicy, SparseMatrix, rank_certified
from .poly import HomogPoly

Bivariate = dict[tuple[int, int], Fraction]


class RetryExhaustedError(RuntimeError):
    pass


class NotStabilizedError(RuntimeError):
    pass


@dataclass(frozen=True)
class AffineCurve:
    g: Bivariate
    transform: tuple[tuple[int, int, int], ...]
    f: HomogPoly  # f composed with the transform

    @property
    def degree(self) -> int:
        return max(i + j for i, j in self.g)


@dataclass(frozen=True)
class MilnorResult:
    mu: int
    transform: tuple[tuple[int, int, int], ...]
    stabilization_degree: int
    t_values: dict[int, int]

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "transform": [list(r) for r in self.transform],
            "stabilization_degree": self.stabilization_degree,
        }


IDENTITY = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def apply_transform(f: HomogPoly, T) -> HomogPoly:
    """Return f(T (x, y, z)^t)."""
    x, y, z = (HomogPoly.variable(v) for v in "xyz")
    forms = tuple(x * T[i][0] + y * T[i][1] + z * T[i][2] for i in range(3))
    return f.substitute(forms)


def _binary_form_at_infinity(p: HomogPoly) -> list[Fraction]:
    """Coefficients of p(x, 1, 0) indexed by the power of x."""
    coeffs = [Fraction(0)] * (p.degree + 1)
    for (a, b, c), v in p.terms.items():
        if c == 0:
            coeffs[a] += v
    return coeffs


def _have_common_root(forms: list[HomogPoly]) -> bool:
    """Whether the binary forms p(x, y, 0) share a root in P^1."""
    # forms of degree >= 1; one that vanishes identically imposes no condition
    restricted = [c for c in (_binary_form_at_infinity(p) for p in forms) if any(c)]
    if len(restricted) < 2:
        return True
    # the point (1 : 0): coefficient of x^deg
    if all(c[-1] == 0 for c in restricted):
        return True
    g = None
    for c in restricted:
        poly = flint.fmpq_poly([flint.fmpq(v.numerator, v.denominator) for v in c])
        g = poly if g is None else g.gcd(poly)
    return g.degree() > 0


def line_is_transversal(f: HomogPoly) -> bool:
    """No point of z = 0 where both f_x and f_y vanish.

    By Euler's identity such a point lies on C, and C is either singular there
    or tangent to z = 0. Either case breaks the affine count.
    """
    fx, fy, _ = f.gradient()
    return not _have_common_root([fx, fy])


def dehomogenize(f: HomogPoly) -> Bivariate:
    g: Bivariate = {}
    for (a, b, _), v in f.terms.items():
        g[(a, b)] = g.get((a, b), 0) + v
    return {m: v for m, v in g.items() if v}


def generic_line_change(f: HomogPoly, seed: int = 0, max_tries: int = 64) -> AffineCurve:
    """Coordinates in which z = 0 meets C transversally; identity first."""
    rng = random.Random(seed)
    T = IDENTITY
    for _ in range(max_tries):
        ft = f if T == IDENTITY else apply_transform(f, T)
        if line_is_transversal(ft):
            return AffineCurve(dehomogenize(ft), T, ft)
        while True:
            T = tuple(tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(3))
            if _det3(T) != 0:
                break
    raise RetryExhaustedError(f"no transversal line found after {max_tries} tries")


def _det3(T) -> int:
    (a, b, c), (d, e, f), (g, h, i) = T
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _bi_mul(p: Bivariate, q: Bivariate) -> Bivariate:
    out: Bivariate = {}
    for (a, b), u in p.items():
        for (c, d), v in q.items():
            k = (a + c, b + d)
            out[k] = out.get(k, 0) + u * v
    return {k: v for k, v in out.items() if v}


def _bi_diff(p: Bivariate, var: int) -> Bivariate:
    out: Bivariate = {}
    for m, v in p.items():
        if m[var]:
            k = (m[0] - 1, m[1]) if var == 0 else (m[0], m[1] - 1)
            out[k] = v * m[var]
    return out


def _monomials_upto(D: int) -> list[tuple[int, int]]:
    return [(a, t - a) for t in range(D + 1) for a in range(t, -1, -1)]


def macaulay_matrix(generators: list[Bivariate], D: int) -> SparseMatrix:
    """Columns are the multiples m*h with deg(m*h) <= D, rows the monomials of degree <= D."""
    rows = _monomials_upto(D)
    index = {m: i for i, m in enumerate(rows)}
    cols = []
    for h in generators:
        if not h:
            continue
        terms = [(m, int(v) if v.denominator == 1 else v) for m, v in h.items()]
        dh = max(a + b for a, b in h)
        for a, b in _monomials_upto(D - dh):
            cols.append({index[(a + i, b + j)]: v for (i, j), v in terms})
    return SparseMatrix(len(rows), len(cols), tuple(cols))


def quotient_dims(curve: AffineCurve, degrees, policy: RankPolicy = RankPolicy(), mapper=map) -> dict[int, int]:
    g = curve.g
    gens = [_bi_diff(g, 0), _bi_diff(g, 1), _bi_mul(g, g)]
    degrees = list(degrees)
    values = mapper(_t_task, [(gens, D, policy) for D in degrees])
    return dict(zip(degrees, values))


def _t_task(args) -> int:
    gens, D, policy = args
    M = macaulay_matrix(gens, D)
    return M.n_rows - rank_certified(M, policy).rank


def total_milnor_number(
    f: HomogPoly, policy: RankPolicy = RankPolicy(), seed: int = 0, mapper=map, window: int = 3
) -> MilnorResult:
    d = f.degree
    curve = generic_line_change(f, seed)
    cap = 4 * d + 2
    t = quotient_dims(curve, range(2 * d, cap + 1), policy, mapper)
    stable = cap
    while stable - 1 in t and t[stable - 1] == t[cap]:
        stable -= 1
    if cap - stable + 1 < window:
        raise NotStabilizedError(f"t_D not constant on a window of {window} up to D = {cap}: {t}")
    return MilnorResult(t[cap], curve.transform, stable, t)
