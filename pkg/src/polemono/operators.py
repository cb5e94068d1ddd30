"""Block matrices of multiplication and differentiation operators on graded pieces.

Every block row and block column is a copy of some S_j, laid out in the
graded-lex monomial order of :func:`polemono.poly.graded_basis`.
"""
from __future__ import annotations

from .linalg import SparseMatrix
from .poly import HomogPoly, graded_basis


class BlockOperator:
    """Accumulate a block matrix ``rows x cols`` of polynomial operators.

    >>> from polemono.poly import parse
    >>> op = BlockOperator(row_degrees=[2], col_degrees=[1])
    >>> op.add_mul(0, 0, parse("x"))
    >>> op.build().nnz
    3
    """

    def __init__(self, row_degrees: list[int], col_degrees: list[int]):
        self.row_degrees = list(row_degrees)
        self.col_degrees = list(col_degrees)
        self.row_offsets = _offsets(row_degrees)
        self.col_offsets = _offsets(col_degrees)
        self.n_rows = self.row_offsets[-1]
        self.n_cols = self.col_offsets[-1]
        self._cols: list[dict[int, object]] = [{} for _ in range(self.n_cols)]

    def _put(self, row: int, col: int, value) -> None:
        entry = self._cols[col]
        v = entry.get(row, 0) + value
        if v:
            entry[row] = v
        else:
            entry.pop(row, None)

    def add_mul(self, row_block: int, col_block: int, g: HomogPoly, sign: int = 1) -> None:
        """Block that multiplies by ``sign * g``."""
        src = graded_basis(self.col_degrees[col_block])
        dst = graded_basis(self.row_degrees[row_block])
        if not src.size or not dst.size or not g.terms:
            return
        if dst.degree != src.degree + g.degree:
            raise ValueError("degree mismatch in multiplication block")
        r0, c0 = self.row_offsets[row_block], self.col_offsets[col_block]
        terms = [(m, _plain(sign * c)) for m, c in g.terms.items()]
        index = dst.index
        for j, (a, b, c) in enumerate(src.monomials):
            for (ga, gb, gc), v in terms:
                self._put(r0 + index[(a + ga, b + gb, c + gc)], c0 + j, v)

    def add_diff(self, row_block: int, col_block: int, var: int, sign: int = 1) -> None:
        """Block that applies ``sign * d/d(var)``."""
        src = graded_basis(self.col_degrees[col_block])
        dst = graded_basis(self.row_degrees[row_block])
        if not src.size or not dst.size:
            return
        if dst.degree != src.degree - 1:
            raise ValueError("degree mismatch in derivative block")
        r0, c0 = self.row_offsets[row_block], self.col_offsets[col_block]
        for j, m in enumerate(src.monomials):
            e = m[var]
            if e:
                t = list(m)
                t[var] -= 1
                self._put(r0 + dst.index[tuple(t)], c0 + j, sign * e)

    def add_gradient_mul(self, row_block: int, col_block: int, grad, sign: int = 1) -> None:
        """Triple ``(a, b, c)`` in col blocks ``col_block..col_block+2`` to ``a*g0 + b*g1 + c*g2``."""
        for i in range(3):
            self.add_mul(row_block, col_block + i, grad[i], sign)

    def add_divergence(self, row_block: int, col_block: int, sign: int = 1) -> None:
        """Triple ``(a, b, c)`` to ``a_x + b_y + c_z``."""
        for i in range(3):
            self.add_diff(row_block, col_block + i, i, sign)

    def build(self) -> SparseMatrix:
        return SparseMatrix(self.n_rows, self.n_cols, tuple(self._cols))


def _offsets(degrees: list[int]) -> list[int]:
    out = [0]
    for j in degrees:
        out.append(out[-1] + graded_basis(j).size)
    return out


def _plain(v):
    return int(v) if v.denominator == 1 else v


def jacobian_map(grad, j: int) -> SparseMatrix:
    """Matrix of S^3_{j-d+1} -> S_j, (a, b, c) -> a f_x + b f_y + c f_z."""
    e = grad[0].degree
    op = BlockOperator([j], [j - e] * 3)
    op.add_gradient_mul(0, 0, grad)
    return op.build()
