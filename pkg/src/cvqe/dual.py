"""Dual decomposition over the constrained variational problem.

The solver alternates two steps until the multipliers settle:

  1. Primal: minimize the Lagrangian observable
     H_0 + sum_m lambda_m H_m over the ansatz parameters (warm-started from
     the previous iterate).
  2. Dual: projected subgradient ascent on each multiplier,
     lambda_m <- max(lambda_m + mu_t * F_m, 0), with step size
     mu_t = mu0 / (t + alpha), where F_m is the expectation of constraint m
     in the current primal state.

The loop stops once the Euclidean distance between consecutive multiplier
vectors drops to ``tol``, or after ``max_outer`` iterations (flagged, best
iterate still returned).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionMismatchError, MultiplierSignError
from .problems import QcqpInstance, bits_of_index, eval_quadratic
from .simulator import AnsatzConfig, DiagonalObservable, diagonal_of, estimate_expectation, state_of
from .vqe import VqeSettings, minimize


@dataclass(frozen=True, eq=False)
class DualState:
    """Nonnegative multipliers plus the iteration counter and step schedule."""

    lam: np.ndarray
    t: int = 0
    mu0: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        lam = np.array(self.lam, dtype=np.float64)
        if np.any(lam < 0):
            raise MultiplierSignError(f"multipliers must be nonnegative, got {lam}")
        if self.mu0 <= 0 or self.alpha <= 0:
            raise ValueError("mu0 and alpha must be positive")
        lam.setflags(write=False)
        object.__setattr__(self, "lam", lam)

    @property
    def step_size(self) -> float:
        return self.mu0 / (self.t + self.alpha)


@dataclass(frozen=True)
class DualConfig:
    mu0: float = 1.0
    alpha: float = 1.0
    tol: float = 1e-5
    max_outer: int = 500
    shots: int = 0  # 0 = exact constraint expectations for the dual update


@dataclass(frozen=True)
class TraceRow:
    """One outer iteration: multipliers after the dual step, values before it."""

    t: int
    lam: np.ndarray
    objective: float
    constraint_values: np.ndarray
    inner_evaluations: int


@dataclass(frozen=True, eq=False)
class SolveReport:
    pmf: np.ndarray
    lam: np.ndarray
    objective: float
    constraint_values: np.ndarray
    trace: tuple[TraceRow, ...]
    converged: bool
    mode_bitstring: np.ndarray
    mode_deterministic_feasible: bool
    theta: np.ndarray

    @property
    def outer_iterations(self) -> int:
        return len(self.trace)


def dual_step(state: DualState, constraint_values) -> DualState:
    """One projected subgradient update; returns the advanced state."""
    values = np.asarray(constraint_values, dtype=np.float64)
    if values.shape != state.lam.shape:
        raise DimensionMismatchError("constraint values", state.lam.shape, values.shape)
    lam = np.maximum(state.lam + state.step_size * values, 0.0)
    return DualState(lam, state.t + 1, state.mu0, state.alpha)


def lagrangian_observable(inst: QcqpInstance, lam) -> DiagonalObservable:
    """Diagonal of the Lagrangian H_0 + sum_m lambda_m H_m."""
    lam = np.asarray(lam, dtype=np.float64)
    if lam.shape != (inst.num_constraints,):
        raise DimensionMismatchError("multiplier count", inst.num_constraints, lam.shape)
    if np.any(lam < 0):
        raise MultiplierSignError(f"multipliers must be nonnegative, got {lam}")
    diagonals = [diagonal_of(form) for form in inst.constraints]
    return _combine(diagonal_of(inst.objective), diagonals, lam)


def _combine(diag0: DiagonalObservable, diagonals: list[DiagonalObservable], lam: np.ndarray) -> DiagonalObservable:
    values = diag0.values.copy()
    for weight, diag in zip(lam, diagonals):
        values += weight * diag.values
    return DiagonalObservable(diag0.n, values)


def solve(
    inst: QcqpInstance,
    vqe_settings: VqeSettings | None = None,
    dual_cfg: DualConfig | None = None,
    seed: int = 0,
    ansatz: AnsatzConfig | None = None,
) -> SolveReport:
    """Run the full dual decomposition on an instance.

    The first outer iteration solves the unconstrained Lagrangian (lambda = 0)
    with the full restart budget; later iterations track the slowly moving
    Lagrangian with a single warm-started descent from the previous optimum.
    Deterministic given (instance, settings, seed).
    """
    settings = vqe_settings or VqeSettings()
    cfg = ansatz or AnsatzConfig(inst.n)
    dc = dual_cfg or DualConfig()
    diag0 = diagonal_of(inst.objective)
    diagonals = [diagonal_of(form) for form in inst.constraints]

    dual = DualState(np.zeros(inst.num_constraints), 0, dc.mu0, dc.alpha)
    warm = None
    trace: list[TraceRow] = []
    converged = False
    result = None
    objective_value = np.nan
    constraint_values = np.zeros(inst.num_constraints)

    for t in range(dc.max_outer):
        observable = _combine(diag0, diagonals, dual.lam)
        inner = settings if t == 0 else replace(settings, restarts=1)
        result = minimize(cfg, observable, inner, seed=seed, warm_start=warm)
        warm = result.theta
        objective_value = float(result.pmf @ diag0.values)
        constraint_values = _constraint_expectations(result, cfg, inst, diagonals, dc, seed, t)
        advanced = dual_step(dual, constraint_values)
        trace.append(
            TraceRow(t, advanced.lam, objective_value, constraint_values, result.evaluations)
        )
        delta = float(np.linalg.norm(advanced.lam - dual.lam))
        dual = advanced
        if delta <= dc.tol:
            converged = True
            break

    mode_index = int(np.argmax(result.pmf))
    mode = bits_of_index(mode_index, inst.n)
    mode_feasible = all(eval_quadratic(form, mode) <= 0 for form in inst.constraints)
    return SolveReport(
        pmf=result.pmf,
        lam=dual.lam,
        objective=objective_value,
        constraint_values=constraint_values,
        trace=tuple(trace),
        converged=converged,
        mode_bitstring=mode,
        mode_deterministic_feasible=mode_feasible,
        theta=result.theta,
    )


def _constraint_expectations(result, cfg, inst, diagonals, dc, seed, t) -> np.ndarray:
    if dc.shots == 0:
        return np.array([float(result.pmf @ diag.values) for diag in diagonals])
    state = state_of(cfg, result.theta)
    rng = np.random.default_rng(np.random.PCG64([seed, 0xD0, t]))
    return np.array(
        [estimate_expectation(state, form, dc.shots, int(rng.integers(2**63))) for form in inst.constraints]
    )


def trace_csv(report: SolveReport) -> str:
    """Render the outer-iteration trace as CSV.

    Header: ``iter,lambda_1..lambda_M,F0,F1..FM,inner_evals``; the lambda
    columns hold the multipliers after each iteration's dual step, so the gap
    between the last two rows is the quantity the stopping rule bounds.
    Numbers are written with full round-trip precision.
    """
    m = report.lam.size
    header = ["iter"] + [f"lambda_{i}" for i in range(1, m + 1)] + ["F0"] + [
        f"F{i}" for i in range(1, m + 1)
    ] + ["inner_evals"]
    lines = [",".join(header)]
    for row in report.trace:
        cells = [str(row.t)]
        cells += [repr(float(v)) for v in row.lam]
        cells.append(repr(float(row.objective)))
        cells += [repr(float(v)) for v in row.constraint_values]
        cells.append(str(row.inner_evaluations))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
