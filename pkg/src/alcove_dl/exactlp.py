"""Exact rational linear programming, just enough for feasibility checks.

Phase-one simplex with Bland's rule over Fractions.  Used by the convex
hull oracle and by alcove-key validation; never by production decision
procedures, which have direct combinatorial tests.
"""

from __future__ import annotations

from fractions import Fraction


def _phase1(rows, rhs):
    """Solve A t = b, t >= 0 exactly.  Returns the basic feasible solution
    restricted to the original variables, or None when infeasible.

    Artificial variables start basic; the objective row carries their
    summed constraint rows on the original columns only, and artificial
    columns are barred from re-entering.  Bland's rule (smallest eligible
    entering index, smallest basis leaving index on ties) prevents cycling.
    """
    m = len(rows)
    k = len(rows[0]) if m else 0
    A = [[Fraction(c) for c in row] for row in rows]
    b = [Fraction(c) for c in rhs]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-c for c in A[i]]
            b[i] = -b[i]
    tab = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]]
           for i in range(m)]
    obj = [Fraction(0)] * (k + m + 1)
    for i in range(m):
        for j in range(k):
            obj[j] += tab[i][j]
        obj[-1] += tab[i][-1]
    basis = [k + i for i in range(m)]
    while True:
        enter = -1
        for j in range(k):  # artificials never re-enter
            if obj[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        pivot_row = -1
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[pivot_row]
                ):
                    best = ratio
                    pivot_row = i
        if pivot_row < 0:
            return None
        piv = tab[pivot_row][enter]
        tab[pivot_row] = [c / piv for c in tab[pivot_row]]
        for i in range(m):
            if i != pivot_row and tab[i][enter] != 0:
                factor = tab[i][enter]
                tab[i] = [c - factor * e for c, e in zip(tab[i], tab[pivot_row])]
        if obj[enter] != 0:
            factor = obj[enter]
            obj = [c - factor * e for c, e in zip(obj, tab[pivot_row])]
        basis[pivot_row] = enter
    if obj[-1] != 0:
        return None
    sol = [Fraction(0)] * k
    for i in range(m):
        if basis[i] < k:
            sol[basis[i]] = tab[i][-1]
    return sol


def feasible_eq_nonneg(rows, rhs) -> bool:
    """Whether A t = b admits a solution with t >= 0, exactly."""
    return _phase1(rows, rhs) is not None


def feasible_ineq(rows, lo, hi, nvars):
    """A rational solution x of lo_i <= row_i . x <= hi_i, or None.

    Free variables split into positive and negative parts; slack variables
    turn the two-sided bounds into equalities."""
    m = len(rows)
    width = 2 * nvars + 2 * m
    eq_rows = []
    rhs = []
    for i in range(m):
        r1 = [Fraction(0)] * width
        r2 = [Fraction(0)] * width
        for j in range(nvars):
            r1[j] = Fraction(rows[i][j])
            r1[nvars + j] = -Fraction(rows[i][j])
            r2[j] = Fraction(rows[i][j])
            r2[nvars + j] = -Fraction(rows[i][j])
        r1[2 * nvars + i] = Fraction(-1)
        r2[2 * nvars + m + i] = Fraction(1)
        eq_rows.append(r1)
        rhs.append(lo[i])
        eq_rows.append(r2)
        rhs.append(hi[i])
    sol = _phase1(eq_rows, rhs)
    if sol is None:
        return None
    return tuple(sol[j] - sol[nvars + j] for j in range(nvars))
