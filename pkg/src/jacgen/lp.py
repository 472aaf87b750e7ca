"""Exact rational linear programming.

A dense two-phase simplex over :class:`fractions.Fraction` with Bland's rule
(so it always terminates), plus a helper that decides feasibility of a strict
system ``a_r . x > b_r`` and returns either an interior point or a Farkas
multiplier vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class LPResult:
    status: str                      # "optimal", "infeasible" or "unbounded"
    x: list | None = None
    objective: Fraction | None = None
    duals: list | None = None        # one multiplier per equality row


def _pivot(T, basis, row, col):
    pv = T[row][col]
    prow = [v / pv for v in T[row]]
    T[row] = prow
    nz = [j for j, v in enumerate(prow) if v]
    for r in range(len(T)):
        if r != row:
            rr = T[r]
            f = rr[col]
            if f:
                for j in nz:
                    rr[j] -= f * prow[j]
    basis[row] = col


def _run(T, basis, cost_row, allowed):
    """Minimize with Bland's rule; T[cost_row] holds reduced costs and -obj."""
    m = len(basis)
    while True:
        enter = next((j for j in allowed if T[cost_row][j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, best[1], enter)


def simplex(c, A, b) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b``, ``x >= 0``, exactly."""
    m, n = len(A), len(c)
    c = [Fraction(v) for v in c]
    sign = [1] * m
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row, rhs, sign[i] = [-v for v in row], -rhs, -1
        rows.append((row, rhs))

    # phase 1: artificial columns n..n+m-1
    T = []
    for i, (row, rhs) in enumerate(rows):
        art = [Fraction(int(k == i)) for k in range(m)]
        T.append(row + art + [rhs])
    phase1 = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            phase1[j] -= T[i][j]
        phase1[-1] -= T[i][-1]
    T.append(phase1)
    basis = list(range(n, n + m))
    _run(T, basis, m, range(n + m))
    if T[m][-1] != 0:
        return LPResult("infeasible")

    # drive artificials out; rows where that is impossible are redundant
    keep = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                continue
            _pivot(T, basis, i, col)
        keep.append(i)
    T = [T[i][:n] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    m2 = len(keep)

    # phase 2
    cost = c + [Fraction(0)]
    for i in range(m2):
        cb = c[basis[i]]
        if cb:
            cost = [a - cb * v for a, v in zip(cost, T[i])]
    T.append(cost)
    status = _run(T, basis, m2, range(n))
    if status == "unbounded":
        return LPResult("unbounded")

    x = [Fraction(0)] * n
    for i in range(m2):
        x[basis[i]] = T[i][-1]
    objective = sum(ci * xi for ci, xi in zip(c, x))
    duals = _duals(A, c, basis, keep, sign, m)
    return LPResult("optimal", x, objective, duals)


def _duals(A, c, basis, keep, sign, m):
    # solve B^T pi = c_B on the kept rows; dropped rows get multiplier 0
    k = len(keep)
    M = [[Fraction(A[keep[r]][basis[col]]) * sign[keep[r]] for r in range(k)] + [c[basis[col]]] for col in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(k):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * bb for a, bb in zip(M[r], M[col])]
    pi = [Fraction(0)] * m
    for r in range(k):
        pi[keep[r]] = M[r][-1] * sign[keep[r]]
    return pi


@dataclass
class StrictSystemResult:
    feasible: bool
    margin: Fraction
    x: list | None = None            # interior point when feasible
    multipliers: list | None = None  # Farkas multipliers when infeasible


def solve_strict(rows, nvars: int) -> StrictSystemResult:
    """Decide whether ``a_r . x > b_r`` for all rows has a solution.

    ``rows`` is a list of ``(a_r, b_r)``. Maximizes the margin ``t`` in
    ``a_r . x - t >= b_r``; the system is feasible iff the optimum is positive.
    The margin must be bounded, which holds whenever some pair of rows
    bounds a direction from both sides (the callers' cells are bounded).

    The LP is solved in its dual form
    ``min -b.y  s.t.  sum_r y_r a_r = 0, sum_r y_r = 1, y >= 0``,
    whose optimal ``y`` is the Farkas multiplier vector and whose simplex
    multipliers are the primal ``(x, t)``.
    """
    A = [[Fraction(row[0][i]) for row in rows] for i in range(nvars)]
    A.append([Fraction(1)] * len(rows))
    b = [Fraction(0)] * nvars + [Fraction(1)]
    c = [-Fraction(row[1]) for row in rows]
    res = simplex(c, A, b)
    if res.status != "optimal":
        raise RuntimeError(f"margin LP ended with status {res.status}")
    # dual feasibility a_r.pi_x + pi_t <= -b_r reads a_r.x - t >= b_r
    x = [-v for v in res.duals[:nvars]]
    t = res.duals[nvars]
    margin = res.objective
    if margin != t:
        raise RuntimeError("strong duality violated in margin LP")
    if margin > 0:
        for row in rows:
            lhs = sum(Fraction(a) * xi for a, xi in zip(row[0], x))
            if not lhs > row[1]:
                raise RuntimeError("interior point failed exact verification")
        return StrictSystemResult(True, margin, x=x)
    return StrictSystemResult(False, margin, multipliers=res.x)
