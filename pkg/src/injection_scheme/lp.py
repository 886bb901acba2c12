"""Exact rational simplex for  max c.x  s.t.  A x <= b,  x >= 0  with b >= 0."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class UnboundedLP(ArithmeticError):
    pass


class InfeasibleStart(ValueError):
    pass


def simplex_max(
    c: Sequence, A: Sequence[Sequence], b: Sequence
) -> tuple[Fraction, list[Fraction]]:
    """Primal simplex from the slack basis with Bland's rule.

    Entering variable: lowest index with positive reduced profit.  Leaving
    row: minimum ratio, ties broken by the lowest basic variable index.
    Returns the optimum and an optimal x.
    """
    m, nv = len(A), len(c)
    if any(Fraction(v) < 0 for v in b):
        raise InfeasibleStart("right-hand side must be nonnegative")
    # tableau rows: [A | I | b]
    T = [
        [Fraction(v) for v in A[i]] + [Fraction(int(i == j)) for j in range(m)] + [Fraction(b[i])]
        for i in range(m)
    ]
    # objective row holds reduced profits c_j - z_j; last entry is -objective
    obj = [Fraction(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [nv + i for i in range(m)]
    width = nv + m

    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedLP(f"objective unbounded along variable {enter}")
        pivot_row = T[leave]
        p = pivot_row[enter]
        if p != 1:
            pivot_row[:] = [v / p for v in pivot_row]
        nz = [j for j, v in enumerate(pivot_row) if v]
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    row = T[i]
                    for j in nz:
                        row[j] -= f * pivot_row[j]
        f = obj[enter]
        for j in nz:
            obj[j] -= f * pivot_row[j]
        basis[leave] = enter

    x = [Fraction(0)] * nv
    for i, var in enumerate(basis):
        if var < nv:
            x[var] = T[i][-1]
    return -obj[-1], x
