"""Exact feasibility for {x >= 0 : Ax = b} by a phase-one simplex over Fractions.

Bland's rule (lowest index enters, lowest basic index breaks ratio ties)
guarantees termination on degenerate problems.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    rows = len(A)
    n = len(A[0]) if rows else 0
    if rows == 0:
        return [Fraction(0)] * n
    # tableau columns: n structural, rows artificial, then rhs
    T = []
    for i in range(rows):
        sign = -1 if b[i] < 0 else 1
        row = [Fraction(sign * a) for a in A[i]]
        row += [Fraction(1 if t == i else 0) for t in range(rows)]
        row.append(Fraction(sign * b[i]))
        T.append(row)
    width = n + rows
    basis = [n + i for i in range(rows)]
    # reduced costs of the phase-one objective sum(artificials)
    cost = [-sum(T[i][j] for i in range(rows)) for j in range(n)] + [Fraction(0)] * rows
    value = -sum(T[i][-1] for i in range(rows))

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(rows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break  # phase one is bounded below by 0; cannot happen
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(rows):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [v - f * w for v, w in zip(T[i], T[leave])]
        f = cost[enter]
        cost = [v - f * w for v, w in zip(cost, T[leave][:width])]
        value -= f * T[leave][-1]
        basis[leave] = enter

    if value != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    return x
