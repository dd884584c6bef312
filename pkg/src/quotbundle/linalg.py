"""Exact linear algebra over the integers and rationals.

Everything here is fraction-free or rational-exact; no floating point.
Rows are sparse dicts (column -> integer) unless noted.  Elimination is
deterministic: rows are processed in the order given and pivots are the
smallest eligible column, so ranks, kernels, and echelon forms are
reproducible bit-for-bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def _row_gcd_normalize(row: dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        for k in row:
            row[k] //= g


class Echelon:
    """Incremental fraction-free row echelon over the integers.

    add_row returns True when the row was independent of the current span.
    Pivot rows are kept gcd-normalized with positive pivot entries.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce_row(self, row: dict[int, int]) -> dict[int, int]:
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return row
            a, b = piv[c], row[c]
            # fraction-free: row <- a*row - b*piv
            new = {}
            for k, v in row.items():
                new[k] = a * v
            for k, v in piv.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                elif k in new:
                    del new[k]
            row = new
            _row_gcd_normalize(row)
        return row

    def add_row(self, row: dict[int, int]) -> bool:
        red = self.reduce_row(row)
        if not red:
            return False
        c = min(red)
        if red[c] < 0:
            red = {k: -v for k, v in red.items()}
        self.pivots[c] = red
        return True

    def contains(self, row: dict[int, int]) -> bool:
        return not self.reduce_row(row)


def rank_of_rows(rows: Iterable[dict[int, int]]) -> int:
    ech = Echelon()
    n = 0
    for row in rows:
        if ech.add_row(row):
            n += 1
    return n


def fraction_rows_to_int(rows: Iterable[dict[int, Fraction]]) -> list[dict[int, int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        denom = 1
        for v in row.values():
            d = v.denominator
            denom = denom * d // gcd(denom, d)
        out.append({k: int(v * denom) for k, v in row.items() if v})
    return out


def kernel_basis(rows: Sequence[dict[int, int]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel of the sparse matrix, as dense vectors.

    Rational RREF; basis vectors are indexed by free columns in ascending
    order, each normalized with a 1 in its free position.
    """
    # dense RREF over Fraction (kernels are only extracted on small blocks)
    mat = []
    for row in rows:
        dense = [Fraction(0)] * ncols
        for k, v in row.items():
            dense[k] = Fraction(v)
        mat.append(dense)
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivot_of_col[c] = r
        r += 1
    free = [c for c in range(ncols) if c not in pivot_of_col]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for c, pr in pivot_of_col.items():
            vec[c] = -mat[pr][fc]
        basis.append(vec)
    return basis


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def integer_kernel_basis(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer basis vectors of the right kernel of a dense integer matrix."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows = [{k: int(v) for k, v in enumerate(row) if v} for row in matrix]
    basis = kernel_basis(rows, ncols)
    out = []
    for vec in basis:
        denom = 1
        for v in vec:
            d = v.denominator
            denom = denom * d // gcd(denom, d)
        ints = [int(v * denom) for v in vec]
        out.append(primitive_vector(ints))
    return out


def primitive_vector(vec: Sequence[int]) -> list[int]:
    """Divide by the content; first nonzero entry made positive."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g == 0:
        return list(vec)
    out = [v // g for v in vec]
    lead = next((v for v in out if v), 0)
    if lead < 0:
        out = [-v for v in out]
    return out
