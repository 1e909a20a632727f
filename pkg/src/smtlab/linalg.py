"""Exact linear algebra over Q: fraction-free rank and determinants, and an
incremental row-echelon basis used for independence tests."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Sequence

from .poly import lcm_int

SparseRow = Dict[int, int]


def _integer_row(row) -> SparseRow:
    """Scale a row of rationals to a primitive integer row (dict col -> int)."""
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    fr = {j: Fraction(v) for j, v in items if v != 0}
    if not fr:
        return {}
    den = lcm_int(v.denominator for v in fr.values())
    ints = {j: int(v * den) for j, v in fr.items()}
    return _primitive(ints)


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()} if g > 1 else row


def rank(rows: Iterable) -> int:
    """Exact rank of a matrix given as dense lists or sparse dicts of rationals.

    Fraction-free elimination on integer rows; each updated row is divided by
    its content, so entries stay small.
    """
    pivots: Dict[int, SparseRow] = {}
    for raw in rows:
        v = _integer_row(raw)
        while v:
            col = min(v)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = v
                break
            a, b = piv[col], v[col]
            new = {j: a * x for j, x in v.items()}
            for j, x in piv.items():
                y = new.get(j, 0) - b * x
                if y:
                    new[j] = y
                else:
                    new.pop(j, None)
            v = _primitive(new) if new else {}
    return len(pivots)


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by Bareiss elimination (exact)."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in matrix):
        raise ValueError("determinant of a non-square matrix")
    fr = [[Fraction(x) for x in r] for r in matrix]
    den = lcm_int(x.denominator for r in fr for x in r)
    a = [[int(x * den) for x in r] for r in fr]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], den ** n)


class Echelon:
    """Reduced row-echelon basis over Q grown one vector at a time."""

    def __init__(self):
        self.rows: Dict[int, Dict[int, Fraction]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        v = {j: Fraction(x) for j, x in vec.items() if x != 0}
        for col in [c for c in v if c in self.rows]:
            x = v.get(col)
            if not x:
                continue
            for j, y in self.rows[col].items():
                w = v.get(j, 0) - x * y
                if w:
                    v[j] = w
                else:
                    v.pop(j, None)
        return v

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Insert ``vec``; returns False if it was already in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        col = min(v)
        inv = 1 / v[col]
        v = {j: x * inv for j, x in v.items()}
        for row in self.rows.values():
            x = row.get(col)
            if x:
                for j, y in v.items():
                    w = row.get(j, 0) - x * y
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
        self.rows[col] = v
        return True

    def copy(self) -> "Echelon":
        e = Echelon()
        e.rows = {c: dict(r) for c, r in self.rows.items()}
        return e


def dense_rows(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> List[List[Fraction]]:
    return [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rows]
