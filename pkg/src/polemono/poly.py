"""Homogeneous polynomials in x, y, z with exact rational coefficients.

Monomials are plain ``(ex, ey, ez)`` tuples. Inside a fixed degree they are
ordered graded-lex with x > y > z, so ``x^2 > xy > xz > y^2 > yz > z^2``.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

Monomial = tuple[int, int, int]

VARIABLES = ("x", "y", "z")


class PolynomialSyntaxError(ValueError):
    """The input text is not a polynomial expression in x, y, z."""


class NotHomogeneousError(ValueError):
    pass


class ZeroPolynomialError(ValueError):
    pass


class DegreeMismatchError(ValueError):
    pass


def monomial_key(m: Monomial) -> tuple:
    """Sort key realising the graded-lex order (larger monomials sort first)."""
    return (-sum(m), -m[0], -m[1])


@dataclass(frozen=True)
class GradedBasis:
    """All monomials of degree ``degree`` in graded-lex order."""

    degree: int
    monomials: tuple[Monomial, ...]
    index: Mapping[Monomial, int] = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.monomials)

    def __len__(self) -> int:
        return len(self.monomials)


@lru_cache(maxsize=None)
def graded_basis(j: int) -> GradedBasis:
    if j < 0:
        return GradedBasis(j, (), {})
    mons = tuple((a, b, j - a - b) for a in range(j, -1, -1) for b in range(j - a, -1, -1))
    return GradedBasis(j, mons, {m: i for i, m in enumerate(mons)})


def dim_s(j: int) -> int:
    """Dimension of the space of degree ``j`` forms in three variables."""
    return (j + 1) * (j + 2) // 2 if j >= 0 else 0


def _mul_terms(p: Mapping[Monomial, Fraction], q: Mapping[Monomial, Fraction]) -> dict:
    out: dict[Monomial, Fraction] = {}
    for (a1, b1, c1), u in p.items():
        for (a2, b2, c2), v in q.items():
            m = (a1 + a2, b1 + b2, c1 + c2)
            s = out.get(m, 0) + u * v
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _add_terms(p: Mapping, q: Mapping, sign: int = 1) -> dict:
    out = dict(p)
    for m, v in q.items():
        s = out.get(m, 0) + sign * v
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


@dataclass(frozen=True, eq=False)
class HomogPoly:
    """A homogeneous form of degree ``degree``.

    ``terms`` maps monomials to nonzero :class:`~fractions.Fraction`
    coefficients. The zero form of a given degree has no terms. Instances are
    treated as immutable; operations always return new objects.
    """

    degree: int
    terms: Mapping[Monomial, Fraction]

    def __post_init__(self):
        for m, c in self.terms.items():
            if sum(m) != self.degree:
                raise NotHomogeneousError(f"monomial {m} does not have degree {self.degree}")
            if c == 0:
                raise ValueError("zero coefficient stored")

    @classmethod
    def from_terms(cls, terms: Mapping[Monomial, object], degree: int | None = None) -> HomogPoly:
        clean = {tuple(m): Fraction(c) for m, c in terms.items() if c != 0}
        if degree is None:
            degrees = {sum(m) for m in clean}
            if len(degrees) > 1:
                raise NotHomogeneousError(f"mixed term degrees {sorted(degrees)}")
            degree = degrees.pop() if degrees else 0
        return cls(degree, clean)

    @classmethod
    def zero(cls, degree: int) -> HomogPoly:
        return cls(degree, {})

    @classmethod
    def variable(cls, name: str) -> HomogPoly:
        m = [0, 0, 0]
        m[VARIABLES.index(name)] = 1
        return cls(1, {tuple(m): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.terms.items())))

    def __add__(self, other: HomogPoly) -> HomogPoly:
        return self._combine(other, 1)

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        return self._combine(other, -1)

    def _combine(self, other: HomogPoly, sign: int) -> HomogPoly:
        if self.terms and other.terms and self.degree != other.degree:
            raise DegreeMismatchError(f"cannot add degrees {self.degree} and {other.degree}")
        degree = self.degree if self.terms else other.degree
        return HomogPoly(degree, _add_terms(self.terms, other.terms, sign))

    def __neg__(self) -> HomogPoly:
        return HomogPoly(self.degree, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> HomogPoly:
        if isinstance(other, HomogPoly):
            return HomogPoly(self.degree + other.degree, _mul_terms(self.terms, other.terms))
        c = Fraction(other)
        if c == 0:
            return HomogPoly.zero(self.degree)
        return HomogPoly(self.degree, {m: c * v for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> HomogPoly:
        if n < 0:
            raise ValueError("negative power")
        result = HomogPoly(0, {(0, 0, 0): Fraction(1)})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def partial(self, var: str | int) -> HomogPoly:
        i = VARIABLES.index(var) if isinstance(var, str) else var
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return HomogPoly(max(self.degree - 1, 0), out)

    def gradient(self) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
        return self.partial(0), self.partial(1), self.partial(2)

    def __call__(self, x, y, z):
        total = 0
        for (a, b, c), v in self.terms.items():
            total += v * x**a * y**b * z**c
        return total

    def substitute(self, forms: tuple[HomogPoly, HomogPoly, HomogPoly]) -> HomogPoly:
        """Compose with linear (or any homogeneous) forms replacing x, y, z."""
        out = HomogPoly.zero(self.degree * forms[0].degree)
        powers = [[HomogPoly(0, {(0, 0, 0): Fraction(1)})] for _ in range(3)]
        for i in range(3):
            for _ in range(self.degree):
                powers[i].append(powers[i][-1] * forms[i])
        for (a, b, c), v in self.terms.items():
            out = out + powers[0][a] * powers[1][b] * powers[2][c] * v
        return out

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def __str__(self) -> str:
        return serialize(self)

    def __repr__(self) -> str:
        return f"HomogPoly({serialize(self)!r})"


def _monomial_str(m: Monomial) -> str:
    parts = []
    for name, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def serialize(p: HomogPoly) -> str:
    """Canonical text form, e.g. ``3*x^2*y - 1/2*z^3``; ``0`` for the zero form."""
    if not p.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _monomial_str(m)
        coef = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if not mono:
            body = coef
        elif a == 1:
            body = mono
        else:
            body = f"{coef}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_ALLOWED_NAMES = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}


def _eval_node(node) -> dict:
    # polynomials here are plain dicts; homogeneity is checked once at the end
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return {(0, 0, 0): Fraction(node.value)} if node.value else {}
    if isinstance(node, ast.Name):
        if node.id not in _ALLOWED_NAMES:
            raise PolynomialSyntaxError(f"unknown variable {node.id!r}")
        return {_ALLOWED_NAMES[node.id]: Fraction(1)}
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _eval_node(node.operand)
        return {m: -c for m, c in inner.items()} if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left)
        right = _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return _add_terms(left, right)
        if isinstance(node.op, ast.Sub):
            return _add_terms(left, right, -1)
        if isinstance(node.op, ast.Mult):
            return _mul_terms(left, right)
        if isinstance(node.op, ast.Div):
            if set(right) - {(0, 0, 0)} or not right:
                raise PolynomialSyntaxError("division only by nonzero constants")
            c = right[(0, 0, 0)]
            return {m: v / c for m, v in left.items()}
        if isinstance(node.op, ast.Pow):
            if set(right) - {(0, 0, 0)}:
                raise PolynomialSyntaxError("exponent must be a constant")
            e = right.get((0, 0, 0), Fraction(0))
            if e.denominator != 1 or e < 0:
                raise PolynomialSyntaxError("exponent must be a non-negative integer")
            result = {(0, 0, 0): Fraction(1)}
            for _ in range(int(e)):
                result = _mul_terms(result, left)
            return result
    raise PolynomialSyntaxError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse(text: str) -> HomogPoly:
    """Parse and fully expand a homogeneous polynomial in x, y, z.

    Accepts integers, ``/`` for rational constants, ``+ - *``, ``^`` or ``**``
    for powers and parentheses.

    >>> str(parse("(x+y)^2 - 2*x*y"))
    'x^2 + y^2'
    """
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"malformed expression: {text!r}") from exc
    terms = _eval_node(tree)
    if not terms:
        raise ZeroPolynomialError(f"{text!r} expands to zero")
    return HomogPoly.from_terms(terms)


def coeff_vector(p: HomogPoly, basis: GradedBasis) -> list[Fraction]:
    if p.terms and p.degree != basis.degree:
        raise DegreeMismatchError(f"polynomial of degree {p.degree} vs basis of degree {basis.degree}")
    vec = [Fraction(0)] * basis.size
    for m, c in p.terms.items():
        vec[basis.index[m]] = c
    return vec


def from_coeff_vector(vec, basis: GradedBasis) -> HomogPoly:
    return HomogPoly(basis.degree, {m: Fraction(c) for m, c in zip(basis.monomials, vec) if c})
