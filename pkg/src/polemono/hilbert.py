"""Hilbert functions of the Milnor algebra and Koszul/syzygy bookkeeping.

All dimensions are per degree j. For a reduced curve f of degree d:

* ``m[j]`` = dim M(f)_j with M(f) = S / (f_x, f_y, f_z)
* ``m_s[j]`` = the same for a smooth curve of degree d (complete intersection)
* ``kw[j]`` = dim (df ^ Omega^1)_j, the Koszul part of the syzygies
* ``syz[j]`` = dim Syz(f)_j = dim AR(f)_{j-2}
* ``h2[j]`` = dim H^2(K*_f)_j = syz[j] - kw[j]
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .linalg import RankPolicy, rank_certified
from .operators import jacobian_map
from .poly import HomogPoly, dim_s


class NonReducedError(ValueError):
    """The Hilbert function of M(f) does not stabilise: f is not reduced."""


class CentralPencilError(ValueError):
    """mdr(f) = 0: the curve is a union of lines through one point."""


@lru_cache(maxsize=None)
def _smooth_series(d: int) -> tuple[int, ...]:
    # coefficients of (1 + t + ... + t^(d-2))^3
    base = [1] * (d - 1)
    out = [1]
    for _ in range(3):
        new = [0] * (len(out) + len(base) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(base):
                new[i + j] += a * b
        out = new
    return tuple(out)


def smooth_milnor_dim(d: int, j: int) -> int:
    """m(f_s)_j for a smooth curve of degree ``d``; zero outside [0, 3(d-2)]."""
    if d < 3:
        raise ValueError("degree must be at least 3")
    series = _smooth_series(d)
    return series[j] if 0 <= j < len(series) else 0


def koszul_wedge_dim(d: int, j: int) -> int:
    if j <= d:
        return 0
    if j < 2 * d:
        return 3 * comb(j - d + 1, 2)
    return 3 * comb(j - d + 1, 2) - comb(j - 2 * d + 2, 2)


def milnor_dim(f: HomogPoly, j: int, policy: RankPolicy = RankPolicy()) -> int:
    """m(f)_j = dim S_j - rank of (a, b, c) -> a f_x + b f_y + c f_z."""
    if j < 0:
        return 0
    if j < f.degree - 1:
        return dim_s(j)
    M = jacobian_map(f.gradient(), j)
    return dim_s(j) - rank_certified(M, policy).rank


@dataclass(frozen=True)
class HilbertData:
    d: int
    m: tuple[int, ...]      # j in [0, 5d]
    m_s: tuple[int, ...]    # j in [0, 3(d-2)]
    kw: tuple[int, ...]     # j in [0, 4d]
    h2: tuple[int, ...]     # j in [0, 4d]
    syz: tuple[int, ...]    # j in [0, 4d]
    tau: int
    ct: int
    st: int
    mdr: int

    def milnor(self, j: int) -> int:
        if j < 0:
            return 0
        return self.m[j] if j < len(self.m) else self.tau

    def smooth(self, j: int) -> int:
        return smooth_milnor_dim(self.d, j)

    def syzygies(self, j: int) -> int:
        return self.syz[j] if 0 <= j < len(self.syz) else 0

    def to_json(self) -> dict:
        return {
            "m": list(self.m),
            "m_smooth": list(self.m_s),
            "syz": list(self.syz),
            "tau": self.tau,
            "ct": self.ct,
            "st": self.st,
            "mdr": self.mdr,
        }


def koszul_h2_dim(data: HilbertData, j: int) -> int:
    """dim H^2(K*_f)_j from the Hilbert functions of f and of a smooth curve."""
    d = data.d
    if j < 2:
        return 0
    if j <= 2 * d - 3:
        return data.milnor(j + d - 3) - smooth_milnor_dim(d, j + d - 3)
    return data.tau


def thresholds(m: tuple[int, ...], d: int, syz: tuple[int, ...]) -> tuple[int, int, int, int]:
    """Return ``(tau, ct, st, mdr)`` and validate reducedness.

    ``ct`` is the last degree up to which m agrees with the smooth Hilbert
    function; for a smooth curve it is the last computed degree.
    """
    # st(f) <= 3d - 6 for singular curves and = 3d - 5 for smooth ones
    window = m[3 * d - 5:]
    if len(set(window)) != 1:
        raise NonReducedError(
            f"m(f)_j is not constant on [{3 * d - 5}, {len(m) - 1}]: {list(window)}"
        )
    tau = m[-1]
    ct = -1
    for j, v in enumerate(m):
        if v != smooth_milnor_dim(d, j):
            break
        ct = j
    st = len(m) - 1
    while st > 0 and m[st - 1] == tau:
        st -= 1
    mdr = next(q for q in range(len(syz) - 2) if syz[q + 2] > 0)
    if mdr == 0:
        raise CentralPencilError("the curve is a union of lines through one point (mdr = 0)")
    return tau, ct, st, mdr


def compute_hilbert(f: HomogPoly, policy: RankPolicy = RankPolicy(), mapper=map) -> HilbertData:
    """Hilbert data of a reduced curve of degree >= 3.

    ``mapper`` may be a parallel ``map`` (e.g. ``Executor.map``); the ranks
    for different degrees are independent.
    """
    d = f.degree
    if d < 3:
        raise ValueError("curve degree must be at least 3")
    degrees = range(5 * d + 1)
    m = tuple(mapper(_milnor_task, [(f, j, policy) for j in degrees]))
    m_s = tuple(smooth_milnor_dim(d, j) for j in range(3 * (d - 2) + 1))
    kw = tuple(koszul_wedge_dim(d, j) for j in range(4 * d + 1))
    # syz(f)_j = dim S^3_{j-2} - rank(jacobian map into S_{j+d-3})
    syz = tuple(
        3 * dim_s(j - 2) - dim_s(j + d - 3) + m[j + d - 3] if j + d - 3 >= 0 else 0
        for j in range(4 * d + 1)
    )
    tau, ct, st, mdr = thresholds(m, d, syz)
    partial = HilbertData(d, m, m_s, kw, (), syz, tau, ct, st, mdr)
    h2 = tuple(koszul_h2_dim(partial, j) for j in range(4 * d + 1))
    return HilbertData(d, m, m_s, kw, h2, syz, tau, ct, st, mdr)


def _milnor_task(args) -> int:
    f, j, policy = args
    return milnor_dim(f, j, policy)
