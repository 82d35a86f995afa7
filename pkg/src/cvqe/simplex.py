"""Dense two-phase simplex with Bland's rule.

Solves   min c @ x   s.t.   A_ub @ x <= b_ub,   A_eq @ x == b_eq,   x >= 0,
with b_ub >= 0 and b_eq >= 0 (all uses in this package satisfy that).

Pivoting is fully deterministic: the entering column is the lowest-index
column with a negative reduced cost, and the leaving row is the minimal-ratio
row whose basic variable has the lowest index. That combination (Bland's
rule) also guarantees termination on degenerate tableaus.

Exactness and reproducibility are the point here, not speed: the tableau is
dense and every run of the same input performs the identical pivot sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-7

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class SimplexResult:
    status: str
    x: np.ndarray | None
    objective: float | None
    duals_ub: np.ndarray | None  # multipliers of the <= rows, >= 0
    duals_eq: np.ndarray | None  # row prices of the == rows


def solve_lp(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, max_iter: int | None = None) -> SimplexResult:
    c = np.asarray(c, dtype=np.float64)
    nv = c.size
    a_ub = np.zeros((0, nv)) if a_ub is None else np.asarray(a_ub, dtype=np.float64).reshape(-1, nv)
    b_ub = np.zeros(0) if b_ub is None else np.atleast_1d(np.asarray(b_ub, dtype=np.float64))
    a_eq = np.zeros((0, nv)) if a_eq is None else np.asarray(a_eq, dtype=np.float64).reshape(-1, nv)
    b_eq = np.zeros(0) if b_eq is None else np.atleast_1d(np.asarray(b_eq, dtype=np.float64))
    if np.any(b_ub < 0) or np.any(b_eq < 0):
        raise ValueError("solve_lp requires nonnegative right-hand sides")

    m_ub, m_eq = a_ub.shape[0], a_eq.shape[0]
    rows = m_ub + m_eq
    slack_start = nv
    art_start = nv + m_ub
    ncols = nv + m_ub + m_eq

    table = np.zeros((rows, ncols + 1))
    table[:m_ub, :nv] = a_ub
    table[m_ub:, :nv] = a_eq
    table[:m_ub, slack_start:art_start] = np.eye(m_ub)
    table[m_ub:, art_start:ncols] = np.eye(m_eq)
    table[:m_ub, -1] = b_ub
    table[m_ub:, -1] = b_eq

    basis = list(range(slack_start, slack_start + m_ub)) + list(range(art_start, ncols))
    if max_iter is None:
        max_iter = 200 * (ncols + rows + 10)

    # Phase 1: drive the artificials of the equality rows to zero.
    if m_eq > 0:
        cost = np.zeros(ncols + 1)
        cost[art_start:ncols] = 1.0
        for i in range(rows):
            if basis[i] >= art_start:
                cost -= table[i]
        status = _iterate(table, cost, basis, allowed_end=ncols, max_iter=max_iter)
        if status != OPTIMAL:
            return SimplexResult(status, None, None, None, None)
        if -cost[-1] > FEAS_TOL:
            return SimplexResult(INFEASIBLE, None, None, None, None)
        _expel_artificials(table, basis, art_start)

    # Phase 2: optimize the real objective; artificials may not re-enter.
    cost = np.zeros(ncols + 1)
    cost[:nv] = c
    for i in range(rows):
        if cost[basis[i]] != 0.0:
            cost -= cost[basis[i]] * table[i]
    status = _iterate(table, cost, basis, allowed_end=art_start, max_iter=max_iter)
    if status != OPTIMAL:
        return SimplexResult(status, None, None, None, None)

    x = np.zeros(ncols)
    for i, col in enumerate(basis):
        x[col] = table[i, -1]
    x = np.maximum(x[:nv], 0.0)  # trim degenerate float dust
    duals_ub = np.maximum(cost[slack_start:art_start].copy(), 0.0)
    duals_eq = -cost[art_start:ncols].copy()
    return SimplexResult(OPTIMAL, x, float(c @ x), duals_ub, duals_eq)


def _iterate(table: np.ndarray, cost: np.ndarray, basis: list[int], allowed_end: int, max_iter: int) -> str:
    rows = table.shape[0]
    for _ in range(max_iter):
        entering = -1
        for j in range(allowed_end):
            if cost[j] < -PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        leave = -1
        best_ratio = np.inf
        for i in range(rows):
            a = table[i, entering]
            if a > PIVOT_TOL:
                ratio = table[i, -1] / a
                if ratio < best_ratio - PIVOT_TOL or (
                    abs(ratio - best_ratio) <= PIVOT_TOL and (leave < 0 or basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(table, cost, basis, leave, entering)
    raise RuntimeError("simplex iteration limit exceeded")


def _pivot(table: np.ndarray, cost: np.ndarray, basis: list[int], row: int, col: int) -> None:
    table[row] /= table[row, col]
    factors = table[:, col].copy()
    factors[row] = 0.0
    table -= factors[:, None] * table[row][None, :]
    cost -= cost[col] * table[row]
    basis[row] = col


def _expel_artificials(table: np.ndarray, basis: list[int], art_start: int) -> None:
    # Pivot zero-level artificials out of the basis so phase 2 never touches them.
    dummy = np.zeros(table.shape[1])
    for i in range(table.shape[0]):
        if basis[i] < art_start:
            continue
        for j in range(art_start):
            if abs(table[i, j]) > PIVOT_TOL:
                _pivot(table, dummy, basis, i, j)
                break
        # A row without any eligible column is redundant; its artificial stays
        # basic at level zero, which is harmless with artificials barred from
        # entering in phase 2.
