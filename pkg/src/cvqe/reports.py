"""Report documents shared by the variational solver and the oracles.

All solvers write the same JSON schema so reports are directly diffable:

    solver                      "dual-vqe" | "lp" | "brute"
    n, num_constraints          problem shape
    status                      solver-specific outcome label
    converged                   bool (dual-vqe), true for optimal oracles
    objective                   expected / best objective value
    pmf                         outcome PMF (point mass for brute force)
    lambda                      multipliers (null for brute force)
    constraint_values           expectation of each constraint under pmf
    mode_bitstring              argmax of pmf
    mode_deterministic_feasible mode satisfies every constraint pointwise

Quantum reports add outer-iteration counters; brute-force reports add the
feasible count. Infeasible oracle reports carry null values. The trace of
the dual loop is exported separately as CSV (see dual.trace_csv).
"""

from __future__ import annotations

import json

import numpy as np

from .dual import SolveReport
from .oracles import BruteForceSolution, LpSolution
from .problems import QcqpInstance, bits_of_index, eval_quadratic, index_of_bits
from .simulator import diagonal_of


def solve_report_doc(report: SolveReport, n: int) -> dict:
    return {
        "solver": "dual-vqe",
        "n": n,
        "num_constraints": int(report.lam.size),
        "status": "converged" if report.converged else "max-outer",
        "converged": report.converged,
        "objective": float(report.objective),
        "pmf": [float(p) for p in report.pmf],
        "lambda": [float(v) for v in report.lam],
        "constraint_values": [float(v) for v in report.constraint_values],
        "mode_bitstring": [int(b) for b in report.mode_bitstring],
        "mode_deterministic_feasible": bool(report.mode_deterministic_feasible),
        "outer_iterations": report.outer_iterations,
        "total_inner_evaluations": int(sum(row.inner_evaluations for row in report.trace)),
    }


def lp_report_doc(solution: LpSolution, inst: QcqpInstance) -> dict:
    doc = {
        "solver": "lp",
        "n": inst.n,
        "num_constraints": inst.num_constraints,
        "status": solution.status,
        "converged": solution.optimal,
        "objective": None,
        "pmf": None,
        "lambda": None,
        "constraint_values": None,
        "mode_bitstring": None,
        "mode_deterministic_feasible": None,
    }
    if solution.optimal:
        mode = bits_of_index(int(np.argmax(solution.pmf)), inst.n)
        doc.update(
            objective=float(solution.objective),
            pmf=[float(p) for p in solution.pmf],
            **{"lambda": [float(v) for v in solution.duals]},
            constraint_values=[
                float(solution.pmf @ diagonal_of(form).values) for form in inst.constraints
            ],
            mode_bitstring=[int(b) for b in mode],
            mode_deterministic_feasible=all(eval_quadratic(f, mode) <= 0 for f in inst.constraints),
        )
    return doc


def brute_report_doc(solution: BruteForceSolution, inst: QcqpInstance) -> dict:
    doc = {
        "solver": "brute",
        "n": inst.n,
        "num_constraints": inst.num_constraints,
        "status": "optimal" if solution.best is not None else "infeasible",
        "converged": solution.best is not None,
        "objective": None,
        "pmf": None,
        "lambda": None,
        "constraint_values": None,
        "mode_bitstring": None,
        "mode_deterministic_feasible": None,
        "feasible_count": solution.feasible_count,
    }
    if solution.best is not None:
        pmf = np.zeros(1 << inst.n)
        pmf[index_of_bits(solution.best)] = 1.0
        doc.update(
            objective=float(solution.best_value),
            pmf=[float(p) for p in pmf],
            constraint_values=[float(eval_quadratic(f, solution.best)) for f in inst.constraints],
            mode_bitstring=[int(b) for b in solution.best],
            mode_deterministic_feasible=True,
        )
    return doc


def dumps(doc: dict) -> str:
    """Serialize a report document with full float precision."""
    return json.dumps(doc, indent=2) + "\n"
