"""Variational minimization of a diagonal observable over the ansatz parameters.

The optimizer is a plain line-search gradient descent: descent direction is
the negative gradient, step sizes come from backtracking with the Armijo
condition (initial step 1.0, shrink factor 0.5), and several restarts guard
against bad basins. Exact statevector expectations drive the search by
default; sampled estimates are an opt-in via ``shots``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .simulator import AnsatzConfig, DiagonalObservable, QuantumState, estimate_expectation, states_of_batch

PARAMETER_SHIFT = "parameter-shift"
FINITE_DIFFERENCE = "finite-difference"

FD_STEP = 1e-5
ARMIJO_C = 1e-4
MIN_STEP = 1e-14
STATIONARY_TOL = 1e-12  # gradient inf-norm below which the iterate counts as stationary


@dataclass(frozen=True)
class VqeSettings:
    max_iterations: int = 1000
    restarts: int = 4
    gradient_mode: str = PARAMETER_SHIFT
    convergence_tol: float = 1e-8  # stop once an accepted step improves less than this
    init_mode: str = "zeros"  # first restart at theta = 0; "uniform" draws it like the rest
    shots: int = 0  # 0 = exact expectations

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.gradient_mode not in (PARAMETER_SHIFT, FINITE_DIFFERENCE):
            raise ValueError(f"unknown gradient_mode {self.gradient_mode!r}")
        if self.init_mode not in ("zeros", "uniform"):
            raise ValueError(f"unknown init_mode {self.init_mode!r}")
        if self.shots < 0:
            raise ValueError(f"shots must be >= 0, got {self.shots}")


@dataclass(frozen=True, eq=False)
class VqeResult:
    theta: np.ndarray
    value: float
    pmf: np.ndarray
    evaluations: int
    converged: bool
    history: tuple[float, ...]  # accepted objective values of the winning restart


class _Objective:
    """Batched objective evaluations with a running evaluation counter."""

    def __init__(self, cfg: AnsatzConfig, obs: DiagonalObservable, shots: int, rng: np.random.Generator | None):
        if cfg.n != obs.n:
            raise DimensionMismatchError("observable qubit count", cfg.n, obs.n)
        self.cfg = cfg
        self.obs = obs
        self.shots = shots
        self.rng = rng
        self.evaluations = 0

    def batch(self, thetas: np.ndarray) -> np.ndarray:
        states = states_of_batch(self.cfg, thetas)
        self.evaluations += thetas.shape[0]
        exact = (states * states) @ self.obs.values
        if self.shots == 0:
            return exact
        noisy = np.empty_like(exact)
        for row in range(states.shape[0]):
            state = QuantumState(self.cfg.n, states[row].astype(np.complex128))
            noisy[row] = _sampled_value(state, self.obs, self.shots, int(self.rng.integers(2**63)))
        return noisy

    def single(self, theta: np.ndarray) -> float:
        return float(self.batch(theta[None, :])[0])


def _sampled_value(state: QuantumState, obs: DiagonalObservable, shots: int, seed: int) -> float:
    rng = np.random.default_rng(np.random.PCG64(seed))
    probs = state.probabilities()
    indices = rng.choice(probs.size, size=shots, p=probs / probs.sum())
    return float(obs.values[indices].mean())


def gradient(
    cfg: AnsatzConfig,
    obs: DiagonalObservable,
    theta,
    mode: str = PARAMETER_SHIFT,
    shots: int = 0,
    seed: int = 0,
) -> np.ndarray:
    """Gradient of the expectation with respect to the ansatz parameters.

    Parameter-shift evaluates at theta +- pi/2 per coordinate, which is exact
    for rotation-generated gates; finite-difference uses central differences
    with step 1e-5.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (cfg.param_count,):
        raise DimensionMismatchError("theta length", cfg.param_count, theta.shape)
    rng = np.random.default_rng(np.random.PCG64(seed)) if shots else None
    objective = _Objective(cfg, obs, shots, rng)
    return _gradient(objective, theta, mode)


def _gradient(objective: _Objective, theta: np.ndarray, mode: str) -> np.ndarray:
    shift = np.pi / 2 if mode == PARAMETER_SHIFT else FD_STEP
    p = theta.size
    shifted = np.concatenate([theta + shift * np.eye(p), theta - shift * np.eye(p)])
    values = objective.batch(shifted)
    if mode == PARAMETER_SHIFT:
        return (values[:p] - values[p:]) / 2.0
    if mode == FINITE_DIFFERENCE:
        return (values[:p] - values[p:]) / (2.0 * FD_STEP)
    raise ValueError(f"unknown gradient mode {mode!r}")


def minimize(
    cfg: AnsatzConfig,
    obs: DiagonalObservable,
    settings: VqeSettings | None = None,
    seed: int = 0,
    warm_start=None,
) -> VqeResult:
    """Minimize the observable expectation over the ansatz parameters.

    Runs ``settings.restarts`` independent descents and returns the best by
    value (ties break toward the lowest restart index). Restart 0 starts from
    ``warm_start`` when given, else from zeros (or a uniform draw when
    ``init_mode="uniform"``); the remaining restarts draw uniformly from
    [0, 2*pi). Deterministic given (seed, settings, warm_start).
    """
    settings = settings or VqeSettings()
    p = cfg.param_count
    if warm_start is not None:
        warm_start = np.asarray(warm_start, dtype=np.float64)
        if warm_start.shape != (p,):
            raise DimensionMismatchError("warm_start length", p, warm_start.shape)

    sample_rng = np.random.default_rng(np.random.PCG64([seed, 0x5110])) if settings.shots else None
    objective = _Objective(cfg, obs, settings.shots, sample_rng)
    best = None
    for restart in range(settings.restarts):
        if restart == 0 and warm_start is not None:
            theta0 = warm_start.copy()
        elif restart == 0 and settings.init_mode == "zeros":
            theta0 = np.zeros(p)
        else:
            rng = np.random.default_rng(np.random.PCG64([seed, restart]))
            theta0 = rng.uniform(0.0, 2.0 * np.pi, size=p)
        theta, value, converged, history = _descend(objective, theta0, settings)
        candidate = (value, restart, theta, converged, history)
        if best is None or candidate[0] < best[0]:
            best = candidate
    value, _, theta, converged, history = best
    probs = states_of_batch(cfg, theta[None, :])[0] ** 2
    return VqeResult(
        theta=theta,
        value=value,
        pmf=probs,
        evaluations=objective.evaluations,
        converged=converged,
        history=tuple(history),
    )


def _descend(objective: _Objective, theta0: np.ndarray, settings: VqeSettings):
    theta = theta0.copy()
    value = objective.single(theta)
    history = [value]
    for _ in range(settings.max_iterations):
        grad = _gradient(objective, theta, settings.gradient_mode)
        if np.max(np.abs(grad)) <= STATIONARY_TOL:
            return theta, value, True, history
        grad_sq = float(grad @ grad)
        step = 1.0
        accepted = None
        while step >= MIN_STEP:
            candidate = theta - step * grad
            candidate_value = objective.single(candidate)
            if candidate_value <= value - ARMIJO_C * step * grad_sq:
                accepted = (candidate, candidate_value)
                break
            step *= 0.5
        if accepted is None:
            return theta, value, True, history  # no descent step left at this scale
        improvement = value - accepted[1]
        theta, value = accepted
        history.append(value)
        if improvement <= settings.convergence_tol:
            return theta, value, True, history
    return theta, value, False, history
