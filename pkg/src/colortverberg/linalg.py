"""Exact sparse rank over Q and GF(p), plus integer invariant factors.

Matrices are lists of sparse columns ``{row: value}`` with integer entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

SparseColumn = dict[int, int]


def _row_order(columns: Sequence[SparseColumn]) -> dict[int, int]:
    # Static pivot order: sparse rows are pivoted first, which keeps fill-in
    # low on boundary matrices (a cheap Markowitz surrogate).
    count: dict[int, int] = {}
    for col in columns:
        for row in col:
            count[row] = count.get(row, 0) + 1
    ranked = sorted(count, key=lambda row: (-count[row], row))
    return {row: pos for pos, row in enumerate(ranked)}


def rank_mod_p(columns: Sequence[SparseColumn], p: int) -> int:
    """Rank over GF(p) by column reduction; p must be prime."""
    order = _row_order(columns)
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in sorted(columns, key=len):
        work = {row: v % p for row, v in col.items() if v % p}
        while work:
            low = max(work, key=order.__getitem__)
            piv = pivots.get(low)
            if piv is None:
                inv = pow(work[low], p - 2, p)
                pivots[low] = {row: v * inv % p for row, v in work.items()}
                rank += 1
                break
            f = work[low]
            for row, v in piv.items():
                nv = (work.get(row, 0) - f * v) % p
                if nv:
                    work[row] = nv
                else:
                    work.pop(row, None)
    return rank


def rank_rational(columns: Sequence[SparseColumn]) -> int:
    """Exact rank over Q with Fraction arithmetic (no floating point)."""
    order = _row_order(columns)
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for col in sorted(columns, key=len):
        work = {row: Fraction(v) for row, v in col.items() if v}
        while work:
            low = max(work, key=order.__getitem__)
            piv = pivots.get(low)
            if piv is None:
                lead = work[low]
                pivots[low] = {row: v / lead for row, v in work.items()}
                rank += 1
                break
            f = work[low]
            for row, v in piv.items():
                nv = work.get(row, 0) - f * v
                if nv:
                    work[row] = nv
                else:
                    work.pop(row, None)
    return rank


def compose_is_zero(outer: Sequence[SparseColumn], inner: Sequence[SparseColumn]) -> bool:
    """Whether outer @ inner == 0, where inner's rows index outer's columns."""
    for col in inner:
        acc: dict[int, int] = {}
        for mid, v in col.items():
            for row, w in outer[mid].items():
                acc[row] = acc.get(row, 0) + v * w
        if any(acc.values()):
            return False
    return True


def invariant_factors(columns: Sequence[SparseColumn], n_rows: int) -> list[int]:
    """Nonzero Smith invariant factors of an integer matrix (dense, via sympy)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors as _inv

    if not columns or not n_rows:
        return []
    dense = [[0] * len(columns) for _ in range(n_rows)]
    for j, col in enumerate(columns):
        for row, v in col.items():
            dense[row][j] = v
    return [int(abs(x)) for x in _inv(Matrix(dense), domain=ZZ) if x != 0]
