"""Primal simplex over exact rationals with Bland's rule.

Solves  max c^T x  s.t.  A x <= b,  x >= 0  with b >= 0, which covers every
LP in this package (fractional matchings and tilings have b = 1).  The slack
basis is feasible, so no phase-1 is needed.  Bland's pivoting rule guarantees
termination; all arithmetic is `fractions.Fraction`, so the reported optimum,
primal solution and dual prices are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class ColumnGuardError(RuntimeError):
    """LP exceeds the configured column guard (exact-arithmetic blowup control)."""


def solve_packing_lp(columns: Sequence[Sequence[int]], n_rows: int,
                     max_columns: int = 200_000
                     ) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    """Maximize sum(x_j) subject to (for each row i) sum_{j: i in columns[j]} x_j <= 1, x >= 0.

    `columns[j]` lists the rows the j-th variable loads.  Returns
    (optimum, x, y): the exact value, a primal optimum, and a dual optimum
    (row prices, an exact fractional cover of the column supports).

    Both certificates are verified before returning: x is feasible, y is
    feasible, and their values agree (strong duality, checked exactly).
    """
    m = len(columns)
    if m > max_columns:
        raise ColumnGuardError(f"{m} columns exceed guard {max_columns}")
    if m == 0:
        return Fraction(0), [], [Fraction(0)] * n_rows
    if any(not col for col in columns):
        raise ValueError("every column must load at least one row")

    zero, one = Fraction(0), Fraction(1)
    width = m + n_rows + 1
    # tableau rows: n_rows constraint rows + objective row (maximization, c = 1)
    tab: list[list[Fraction]] = []
    for i in range(n_rows):
        row = [zero] * width
        for j, col in enumerate(columns):
            if i in col:
                row[j] = one
        row[m + i] = one
        row[-1] = one
        tab.append(row)
    obj = [-one] * m + [zero] * n_rows + [zero]
    tab.append(obj)
    basis = [m + i for i in range(n_rows)]

    while True:
        # Bland: entering = lowest-index column with negative reduced cost
        enter = -1
        objrow = tab[-1]
        for j in range(m + n_rows):
            if objrow[j] < zero:
                enter = j
                break
        if enter < 0:
            break
        # Bland: leaving = among tightest ratios, the basic variable of lowest index
        leave, best_ratio, best_var = -1, None, None
        for i in range(n_rows):
            a = tab[i][enter]
            if a > zero:
                ratio = tab[i][-1] / a
                if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[i] < best_var):
                    leave, best_ratio, best_var = i, ratio, basis[i]
        if leave < 0:
            raise ArithmeticError("unbounded LP: packing objectives are bounded, so this is a bug")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(n_rows + 1):
            if i != leave and tab[i][enter] != zero:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        basis[leave] = enter

    x = [zero] * m
    for i, bv in enumerate(basis):
        if bv < m:
            x[bv] = tab[i][-1]
    y = [tab[-1][m + i] for i in range(n_rows)]
    value = tab[-1][-1]

    # exact certificate checks
    assert sum(x) == value, "primal value mismatch"
    loads = [zero] * n_rows
    for j, col in enumerate(columns):
        if x[j] < zero or x[j] > one:
            raise AssertionError(f"primal variable {j} out of [0,1]: {x[j]}")
        for i in col:
            loads[i] += x[j]
    assert all(load <= one for load in loads), "primal infeasible"
    assert all(p >= zero for p in y), "dual negative price"
    for col in columns:
        if sum(y[i] for i in col) < one:
            raise AssertionError("dual infeasible: uncovered column")
    assert sum(y) == value, "strong duality violated"
    return value, x, y
