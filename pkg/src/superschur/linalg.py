"""Exact rank and span computations over F_p and Q.

Rows are given sparsely as ``{column_key: value}`` dicts; values may be ints
or Fractions.  Over F_p they are reduced first, over Q they are scaled to
integers and eliminated fraction-free (Bareiss).
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Mapping, Sequence

from .arith import FieldConfig

Row = Mapping[Hashable, object]


def _columns(rows: Iterable[Row]) -> list:
    keys = set()
    for r in rows:
        keys.update(k for k, v in r.items() if v != 0)
    return sorted(keys, key=repr)


def _integer_row(row: Row, cols: Sequence) -> list[int]:
    vals = [Fraction(row.get(c, 0)) for c in cols]
    den = lcm(*(v.denominator for v in vals)) if vals else 1
    return [int(v * den) for v in vals]


def rank_mod_p(matrix: list[list[int]], p: int) -> int:
    A = [[x % p for x in row] for row in matrix]
    A = [row for row in A if any(row)]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        prow = [x * inv % p for x in A[rank]]
        A[rank] = prow
        for i in range(rank + 1, len(A)):
            f = A[i][c]
            if f:
                A[i] = [(x - f * y) % p for x, y in zip(A[i], prow)]
        rank += 1
        if rank == len(A):
            break
    return rank


def rank_integer(matrix: list[list[int]]) -> int:
    """Rank over Q of an integer matrix by fraction-free elimination."""
    A = [list(row) for row in matrix if any(row)]
    if not A:
        return 0
    nrows, ncols = len(A), len(A[0])
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pr = A[rank]
        for i in range(rank + 1, nrows):
            row = A[i]
            f = row[c]
            row_new = [(pr[c] * x - f * y) // prev for x, y in zip(row, pr)]
            A[i] = row_new
        prev = pr[c]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(rows: Sequence[Row], field: FieldConfig) -> int:
    """Exact rank of sparse rows over ``field``."""
    cols = _columns(rows)
    if not cols:
        return 0
    if field.characteristic:
        p = field.characteristic
        dense = [[field(row.get(c, 0)) for c in cols] for row in rows]
        return rank_mod_p(dense, p)
    return rank_integer([_integer_row(row, cols) for row in rows])


class SpanSolver:
    """Row-reduced spanning set that expresses targets as combinations.

    Each reduced row remembers which combination of the original rows it is,
    so :meth:`solve` returns coefficients on the *input* rows.
    """

    def __init__(self, rows: Sequence[Row], field: FieldConfig):
        self.field = field
        self.n = len(rows)
        F = field
        self._pivots: list[tuple[Hashable, dict, dict]] = []
        for idx, row in enumerate(rows):
            vec = {k: F(v) for k, v in row.items() if F(v) != 0}
            combo = {idx: F(1)}
            vec, combo = self._reduce(vec, combo)
            if vec:
                col = min(vec, key=repr)
                inv = F.inv(vec[col])
                vec = {k: F(v * inv) for k, v in vec.items()}
                combo = {k: F(v * inv) for k, v in combo.items()}
                self._pivots.append((col, vec, combo))

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, vec: dict, combo: dict) -> tuple[dict, dict]:
        F = self.field
        for col, pvec, pcombo in self._pivots:
            f = vec.get(col, 0)
            if f == 0:
                continue
            for k, v in pvec.items():
                nv = F(vec.get(k, 0) - f * v)
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in pcombo.items():
                nv = F(combo.get(k, 0) - f * v)
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return vec, combo

    def solve(self, target: Row) -> tuple[dict[int, object], dict]:
        """Return (coefficients on input rows, residual).

        The residual is empty exactly when ``target`` lies in the span.
        """
        F = self.field
        vec = {k: F(v) for k, v in target.items() if F(v) != 0}
        vec, combo = self._reduce(vec, {})
        # target - sum(combo_i * row_i) = vec, so target = sum(-combo) + vec
        coeffs = {k: F(-v) for k, v in combo.items() if v != 0}
        return coeffs, vec
