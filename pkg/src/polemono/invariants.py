"""Monodromy eigenspaces, characteristic polynomials, pole order spectra and
certified Bernstein-Sato roots, all read off a :class:`SpectralReport`.

Eigenvalues are indexed by k in [1, d] through lambda_k = exp(-2 pi i k / d).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .spectral import SpectralReport


def euler_complement(d: int, mu: int) -> int:
    """Euler characteristic of P^2 minus a reduced curve of degree d with total Milnor number mu."""
    return (d - 1) * (d - 2) + 1 - mu


@dataclass(frozen=True)
class CharPoly:
    """A product of (t - lambda_k)^e[k]; ``exponents[k - 1]`` is e[k]."""

    d: int
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def multiplicity(self, k: int) -> int:
        return self.exponents[k - 1]

    def is_one(self) -> bool:
        return self.degree == 0

    def cyclotomic_factors(self) -> dict[int, int]:
        """Exponents of Phi_n for n | d, valid when conjugate eigenvalues have equal multiplicity."""
        out: dict[int, int] = {}
        for k in range(1, self.d + 1):
            e = self.exponents[k - 1]
            if e:
                n = Fraction(k, self.d).denominator
                out[n] = e
        return dict(sorted(out.items()))

    def factored(self) -> str:
        factors = self.cyclotomic_factors()
        if not factors:
            return "1"
        parts = []
        for n, e in factors.items():
            base = "(t - 1)" if n == 1 else f"Phi_{n}(t)"
            parts.append(base if e == 1 else f"{base}^{e}")
        return " * ".join(parts)

    def to_json(self) -> list:
        return [[k, e] for k, e in enumerate(self.exponents, start=1) if e]


@dataclass(frozen=True)
class PoleSpectrum:
    """Sum of mult * t^(num/den); entries are (num, den, mult) sorted by exponent."""

    entries: tuple[tuple[int, int, int], ...]

    def total(self) -> int:
        return sum(m for _, _, m in self.entries)

    def as_dict(self) -> dict[Fraction, int]:
        return {Fraction(n, dd): m for n, dd, m in self.entries}

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        terms = []
        for n, dd, m in self.entries:
            coef = "" if m == 1 else str(m)
            terms.append(f"{coef}t^{{{n}/{dd}}}")
        return " + ".join(terms)

    def to_json(self) -> list:
        return [list(e) for e in self.entries]


@dataclass(frozen=True)
class BSRoot:
    value: Fraction
    t: int
    k: int


@dataclass(frozen=True)
class BSRootSet:
    roots: tuple[BSRoot, ...]

    def values(self) -> list[Fraction]:
        return [r.value for r in self.roots]

    def __contains__(self, alpha) -> bool:
        return Fraction(alpha) in self.values()

    def to_json(self) -> list:
        return [[r.value.numerator, r.value.denominator] for r in self.roots]


def h1_eigenspaces(report: SpectralReport) -> list[int]:
    """dim H^1(F)_{lambda_k} for k = 1..d."""
    d = report.d
    return [report.grP_H1[1, k] + report.grP_H1[0, k] for k in range(1, d + 1)]


def characteristic_polys(report: SpectralReport, mu: int) -> tuple[CharPoly, CharPoly, CharPoly]:
    """(Delta^0, Delta^1, Delta^2), with Delta^2 from the Euler identity per eigenvalue."""
    d = report.d
    chi = euler_complement(d, mu)
    e1 = h1_eigenspaces(report)
    e0 = [0] * (d - 1) + [1]
    e2 = [chi + e1[k - 1] - (1 if k == d else 0) for k in range(1, d + 1)]
    if any(v < 0 for v in e2):
        raise ArithmeticError(f"negative eigenspace dimension in H^2: {e2}")
    return CharPoly(d, tuple(e0)), CharPoly(d, tuple(e1)), CharPoly(d, tuple(e2))


def pole_spectrum(report: SpectralReport, j: int) -> PoleSpectrum:
    """Sp_P^j: j = 0 reads Gr_P H^2, j = 1 reads Gr_P H^1.

    A piece of Gr_P^p in the lambda_k-eigenspace sits at the exponent
    alpha with exp(-2 pi i alpha) = lambda_k and floor(3 - alpha) = p.
    """
    d = report.d
    entries = []
    if j == 0:
        for (p, k), mult in report.grP_H2.items():
            if mult > 0:
                entries.append(((2 - p) * d + k, d, mult))
    elif j == 1:
        for (p, k), mult in report.grP_H1.items():
            if mult > 0:
                entries.append(((2 - p) * d + k, d, mult))
    else:
        raise ValueError("j must be 0 or 1")
    return PoleSpectrum(tuple(sorted(entries)))


def bs_roots(report: SpectralReport) -> BSRootSet:
    """Roots alpha of b_f(-s) certified by Gr_P^p H^2_lambda != 0, p = floor(3 - alpha)."""
    d = report.d
    roots = []
    for (p, k), mult in report.grP_H2.items():
        if mult > 0:
            t = 2 - p
            roots.append(BSRoot(Fraction(t * d + k, d), t, k))
    roots.sort(key=lambda r: r.value)
    return BSRootSet(tuple(roots))


@dataclass(frozen=True)
class InvariantReport:
    mu: int
    tau: int
    chi: int
    h1: tuple[int, ...]
    delta0: CharPoly
    delta1: CharPoly
    delta2: CharPoly
    sp_P0: PoleSpectrum | None
    sp_P1: PoleSpectrum
    bs: BSRootSet | None
    status: str  # certified-wh, certified-euler or conjectural

    @property
    def b1(self) -> int:
        return self.delta1.degree

    @property
    def b2(self) -> int:
        return self.delta2.degree

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "tau": self.tau,
            "chi_U": self.chi,
            "h1_eigenspaces": list(self.h1),
            "delta1": self.delta1.to_json(),
            "delta2": self.delta2.to_json(),
            "sp_P0": self.sp_P0.to_json() if self.sp_P0 is not None else None,
            "sp_P1": self.sp_P1.to_json(),
            "bs_roots_certified": self.bs.to_json() if self.bs is not None else None,
            "status": self.status,
        }


def derive_invariants(report: SpectralReport, mu: int, tau: int) -> InvariantReport:
    d = report.d
    d0, d1, d2 = characteristic_polys(report, mu)
    if report.wh_shortcut_used:
        status = "certified-wh"
    elif report.all_certified:
        status = "certified-euler"
    else:
        status = "conjectural"
    sp0 = bs = None
    if report.h2_available:
        sp0 = pole_spectrum(report, 0)
        bs = bs_roots(report)
        if report.all_certified:
            # the two routes to dim H^2_lambda must agree once the certificate holds
            for k in range(1, d + 1):
                direct = sum(report.grP_H2[p, k] for p in range(3))
                if direct != d2.multiplicity(k):
                    raise ArithmeticError(f"H^2 eigenspace mismatch at k = {k}: {direct} vs {d2.multiplicity(k)}")
    return InvariantReport(
        mu=mu,
        tau=tau,
        chi=euler_complement(d, mu),
        h1=tuple(d1.exponents),
        delta0=d0,
        delta1=d1,
        delta2=d2,
        sp_P0=sp0,
        sp_P1=pole_spectrum(report, 1),
        bs=bs,
        status=status,
    )
