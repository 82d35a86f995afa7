"""Exact reference solvers: the PMF linear program and brute-force enumeration.

The stochastic relaxation of a binary QCQP is a linear program over the
outcome PMF p of the 2**n bit vectors:

    min_p  sum_k p_k f_0(k)
    s.t.   sum_k p_k f_m(k) <= 0   (m = 1..M)
           sum_k p_k = 1,  p >= 0

Both solvers here serve as ground truth for the variational solver, so they
are deliberately exact, dense, and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import simplex
from .errors import SizeLimitError
from .problems import QcqpInstance, bit_matrix
from .simulator import DEFAULT_QUBIT_LIMIT, diagonal_of

COMPLEMENTARITY_TOL = 1e-6


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    pmf: np.ndarray | None
    objective: float | None
    duals: np.ndarray | None  # one multiplier per constraint, >= 0

    @property
    def optimal(self) -> bool:
        return self.status == simplex.OPTIMAL


@dataclass(frozen=True)
class BruteForceSolution:
    best: np.ndarray | None
    best_value: float | None
    feasible_count: int


def lp_solve(inst: QcqpInstance, limit: int = DEFAULT_QUBIT_LIMIT) -> LpSolution:
    """Solve the PMF linear program exactly with the two-phase simplex."""
    if inst.n > limit:
        raise SizeLimitError(f"n={inst.n} exceeds the LP limit of {limit} qubits")
    size = 1 << inst.n
    objective = diagonal_of(inst.objective, limit).values
    a_ub = np.array([diagonal_of(f, limit).values for f in inst.constraints]).reshape(-1, size)
    b_ub = np.zeros(inst.num_constraints)
    a_eq = np.ones((1, size))
    b_eq = np.ones(1)
    result = simplex.solve_lp(objective, a_ub, b_ub, a_eq, b_eq)
    if result.status != simplex.OPTIMAL:
        return LpSolution(result.status, None, None, None)
    pmf = result.x / result.x.sum()
    return LpSolution(simplex.OPTIMAL, pmf, result.objective, result.duals_ub)


def brute_force_solve(inst: QcqpInstance, limit: int = DEFAULT_QUBIT_LIMIT) -> BruteForceSolution:
    """Enumerate all 2**n bit vectors; return the feasible minimizer of the objective.

    Ties break toward the lowest basis index. Runs the quadratic forms
    directly on the enumerated bit vectors, independent of the LP path.
    """
    if inst.n > limit:
        raise SizeLimitError(f"n={inst.n} exceeds the enumeration limit of {limit} qubits")
    bits = bit_matrix(inst.n).astype(np.float64)
    feasible = np.ones(bits.shape[0], dtype=bool)
    for form in inst.constraints:
        values = np.einsum("ki,ij,kj->k", bits, form.A, bits) + bits @ form.c + form.d
        feasible &= values <= 0.0
    count = int(feasible.sum())
    if count == 0:
        return BruteForceSolution(None, None, 0)
    objective = (
        np.einsum("ki,ij,kj->k", bits, inst.objective.A, bits) + bits @ inst.objective.c + inst.objective.d
    )
    candidates = np.where(feasible)[0]
    best_index = candidates[np.argmin(objective[candidates])]  # argmin keeps the first minimum
    best = bit_matrix(inst.n)[best_index]
    return BruteForceSolution(best, float(objective[best_index]), count)


def stochastic_feasible(inst: QcqpInstance, limit: int = DEFAULT_QUBIT_LIMIT) -> bool:
    """Whether a PMF satisfying all expectation constraints exists."""
    if inst.num_constraints == 0:
        return True
    return lp_solve(inst, limit).optimal
