"""Exact rank of sparse rational matrices.

Two backends share the :class:`SparseMatrix` container:

* modular: rank over GF(p) for a few random ~62-bit primes.  Sparse
  elimination with Markowitz-style pivot choice runs first; once the active
  submatrix becomes dense it is handed to FLINT's ``nmod_mat``.
* exact: fraction-free elimination over the integers (rows are scaled to
  clear denominators and divided by their content after every update).

A modular rank is always a lower bound for the rational rank, equal to it for
all but finitely many primes.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, Iterator, Mapping

import flint

DEFAULT_SEED = 20160321


class BadPrimeError(ArithmeticError):
    """A denominator of the matrix vanishes modulo the chosen prime."""


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """A sparse matrix stored column by column.

    ``columns[c]`` maps row indices to nonzero values (``int`` or
    :class:`~fractions.Fraction`).
    """

    n_rows: int
    n_cols: int
    columns: tuple[Mapping[int, object], ...]

    def __post_init__(self):
        if len(self.columns) != self.n_cols:
            raise ValueError("column count mismatch")
        for col in self.columns:
            for r, v in col.items():
                if not 0 <= r < self.n_rows:
                    raise IndexError(f"row index {r} out of range")
                if v == 0:
                    raise ValueError("explicit zero stored")

    @classmethod
    def from_entries(cls, n_rows: int, n_cols: int, entries: Iterable[tuple[int, int, object]]) -> SparseMatrix:
        cols: list[dict[int, object]] = [{} for _ in range(n_cols)]
        for r, c, v in entries:
            if not 0 <= c < n_cols:
                raise IndexError(f"column index {c} out of range")
            if r in cols[c]:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            if v != 0:
                cols[c][r] = v
        return cls(n_rows, n_cols, tuple(cols))

    @classmethod
    def from_dense(cls, rows) -> SparseMatrix:
        rows = [list(r) for r in rows]
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        return cls.from_entries(
            n_rows, n_cols, ((i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v)
        )

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def entries(self) -> Iterator[tuple[int, int, object]]:
        for c, col in enumerate(self.columns):
            for r in sorted(col):
                yield r, c, col[r]

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.n_cols for _ in range(self.n_rows)]
        for r, c, v in self.entries():
            out[r][c] = Fraction(v)
        return out

    def transpose(self) -> SparseMatrix:
        cols: list[dict[int, object]] = [{} for _ in range(self.n_rows)]
        for r, c, v in self.entries():
            cols[r][c] = v
        return SparseMatrix(self.n_cols, self.n_rows, tuple(cols))

    def dump(self, path: str | Path) -> None:
        """Write the plain-text triplet format ``rows cols nnz`` + ``row col num/den`` lines."""
        lines = [f"{self.n_rows} {self.n_cols} {self.nnz}"]
        for r, c, v in self.entries():
            v = Fraction(v)
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> SparseMatrix:
        header, *body = Path(path).read_text().split("\n")
        n_rows, n_cols, nnz = map(int, header.split())
        entries = []
        for line in body:
            if line.strip():
                r, c, v = line.split()
                entries.append((int(r), int(c), Fraction(v)))
        if len(entries) != nnz:
            raise ValueError(f"expected {nnz} entries, found {len(entries)}")
        return cls.from_entries(n_rows, n_cols, entries)


@dataclass(frozen=True)
class RankPolicy:
    n_primes: int = 2
    exact: bool = False
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.n_primes < 1:
            raise ValueError("n_primes must be >= 1")


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    method: str  # "modular" or "exact"
    primes_used: tuple[int, ...] = ()
    agreement: int = 0


@lru_cache(maxsize=64)
def _candidate_primes(seed: int, count: int) -> tuple[int, ...]:
    rng = random.Random(seed)
    primes: list[int] = []
    while len(primes) < count:
        n = rng.randrange(1 << 61, 1 << 62) | 1
        while not flint.fmpz(n).is_prime():
            n += 2
        if n not in primes:
            primes.append(n)
    return tuple(primes)


def _to_mod(v, p: int) -> int:
    if isinstance(v, int):
        return v % p
    v = Fraction(v)
    if v.denominator % p == 0:
        raise BadPrimeError(f"denominator {v.denominator} vanishes mod {p}")
    return v.numerator * pow(v.denominator, -1, p) % p


# Remaining active part goes dense once its fill ratio exceeds this, or once
# the cheapest Markowitz pivot would touch more than _MAX_SPARSE_COST entries.
_DENSE_FILL = 0.08
_MAX_SPARSE_COST = 400


def _markowitz_mod_p(vectors: list[dict[int, int]], p: int) -> int:
    """Rank of the span of ``vectors`` (sparse dicts over GF(p))."""
    rows = {i: v for i, v in enumerate(vectors) if v}
    col_rows: dict[int, set[int]] = {}
    for i, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(i)
    heap = [(len(s), c) for c, s in col_rows.items()]
    heapq.heapify(heap)
    nnz = sum(len(r) for r in rows.values())
    rank = 0
    while heap:
        count, c = heapq.heappop(heap)
        s = col_rows.get(c)
        if s is None:
            continue
        if not s:
            del col_rows[c]
            continue
        if len(s) != count:
            heapq.heappush(heap, (len(s), c))
            continue
        r = min(s, key=lambda i: (len(rows[i]), i))
        prow = rows[r]
        cost = (len(prow) - 1) * (count - 1)
        if cost > _MAX_SPARSE_COST and nnz > _DENSE_FILL * len(rows) * len(col_rows):
            heapq.heappush(heap, (count, c))
            break
        inv = pow(prow[c], -1, p)
        others = [i for i in s if i != r]
        del rows[r]
        nnz -= len(prow)
        for cc in prow:
            col_rows[cc].discard(r)
        for i in others:
            row = rows[i]
            factor = row[c] * inv % p
            nnz -= len(row)
            for cc, v in prow.items():
                old = row.get(cc)
                if old is None:
                    row[cc] = (-factor * v) % p
                    col_rows[cc].add(i)
                else:
                    nv = (old - factor * v) % p
                    if nv:
                        row[cc] = nv
                    else:
                        del row[cc]
                        col_rows[cc].discard(i)
            nnz += len(row)
            if not row:
                del rows[i]
        del col_rows[c]
        for cc in prow:
            if cc in col_rows:
                heapq.heappush(heap, (len(col_rows[cc]), cc))
        rank += 1
    if rows:
        rank += _dense_rank_mod_p(rows, p)
    return rank


def _dense_rank_mod_p(rows: dict[int, dict[int, int]], p: int) -> int:
    cols = sorted({c for row in rows.values() for c in row})
    cindex = {c: j for j, c in enumerate(cols)}
    n, m = len(rows), len(cols)
    if n == 0 or m == 0:
        return 0
    # FLINT is fastest with the short side as the row dimension
    if n <= m:
        M = flint.nmod_mat(n, m, p)
        for i, row in enumerate(rows.values()):
            for c, v in row.items():
                M[i, cindex[c]] = v
    else:
        M = flint.nmod_mat(m, n, p)
        for i, row in enumerate(rows.values()):
            for c, v in row.items():
                M[cindex[c], i] = v
    return M.rank()


def rank_mod_p(M: SparseMatrix, p: int) -> int:
    """Rank of ``M`` reduced modulo the prime ``p``."""
    vectors = []
    for col in M.columns:
        vec = {}
        for r, v in col.items():
            vm = _to_mod(v, p)
            if vm:
                vec[r] = vm
        vectors.append(vec)
    return _markowitz_mod_p(vectors, p)


def _integer_row(col: Mapping[int, object]) -> dict[int, int]:
    den = 1
    for v in col.values():
        if not isinstance(v, int):
            den = lcm(den, Fraction(v).denominator)
    row = {r: int(Fraction(v) * den) for r, v in col.items()}
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {r: v // g for r, v in row.items()}
    return row


def rank_exact(M: SparseMatrix) -> int:
    """Rational rank by sparse fraction-free elimination over the integers."""
    rows = {i: _integer_row(col) for i, col in enumerate(M.columns) if col}
    col_rows: dict[int, set[int]] = {}
    for i, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(i)
    rank = 0
    while col_rows:
        c = min(col_rows, key=lambda k: (len(col_rows[k]), k))
        s = col_rows.pop(c)
        if not s:
            continue
        r = min(s, key=lambda i: (len(rows[i]), i))
        prow = rows.pop(r)
        a = prow[c]
        for cc in prow:
            if cc != c:
                col_rows[cc].discard(r)
        for i in s:
            if i == r:
                continue
            row = rows[i]
            b = row[c]
            new = {cc: a * v for cc, v in row.items()}
            for cc, v in prow.items():
                nv = new.get(cc, 0) - b * v
                if nv:
                    if cc not in new and cc != c:
                        col_rows[cc].add(i)
                    new[cc] = nv
                elif cc in new:
                    del new[cc]
                    if cc != c:
                        col_rows[cc].discard(i)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {cc: v // g for cc, v in new.items()}
            if new:
                rows[i] = new
            else:
                del rows[i]
        rank += 1
    return rank


def rank_certified(M: SparseMatrix, policy: RankPolicy = RankPolicy()) -> RankCertificate:
    if policy.exact:
        return RankCertificate(rank_exact(M), "exact")
    ranks: list[int] = []
    used: list[int] = []
    count = policy.n_primes
    while len(used) < policy.n_primes:
        for p in _candidate_primes(policy.seed, count):
            if p in used:
                continue
            try:
                ranks.append(rank_mod_p(M, p))
            except BadPrimeError:
                continue
            used.append(p)
            if len(used) == policy.n_primes:
                break
        count += policy.n_primes
    best = max(ranks)
    return RankCertificate(best, "modular", tuple(used), ranks.count(best))


def kernel_dim(M: SparseMatrix, policy: RankPolicy = RankPolicy()) -> int:
    return M.n_cols - rank_certified(M, policy).rank
