"""Random QCQP instance generation.

Every matrix/vector/scalar entry of the objective and constraint forms is
drawn i.i.d. from the standard normal distribution of a seeded PCG64 stream,
so identical (n, M, seed) calls rebuild identical instances on any platform
running the same numpy generation algorithm.

With ``ensure_active`` the generator additionally screens for a binding
constraint: if the unconstrained minimizer already satisfies every
constraint, one constraint constant is shifted so that the minimizer sits
slightly on the infeasible side while the constraint stays satisfiable, and
the LP oracle then has to confirm a strictly positive multiplier. Draws that
cannot be repaired that way are discarded and retried.
"""

from __future__ import annotations

import numpy as np

from .errors import GenerationError
from .oracles import lp_solve
from .problems import QcqpInstance, QuadraticForm, bit_matrix

GENERATOR_VERSION = "pcg64-standard-normal-v1"

ACTIVE_MARGIN = 0.1  # target value of the shifted constraint at the unconstrained minimizer
ACTIVE_DUAL_TOL = 1e-9


def gen_instance(
    n: int,
    num_constraints: int,
    seed: int,
    ensure_active: bool = False,
    max_attempts: int = 100,
) -> QcqpInstance:
    """Draw a stochastically feasible instance, optionally with an active constraint.

    Args:
        n: bit count (>= 1).
        num_constraints: number of quadratic inequality constraints (>= 0).
        seed: PRNG seed; identical arguments reproduce the identical instance.
        ensure_active: require the LP oracle to report a strictly positive dual.
        max_attempts: fresh-draw budget before giving up.

    Raises:
        GenerationError: no acceptable instance within ``max_attempts`` draws.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if num_constraints < 0:
        raise ValueError(f"num_constraints must be >= 0, got {num_constraints}")
    rng = np.random.default_rng(np.random.PCG64(seed))
    for _ in range(max_attempts):
        inst = _draw(rng, n, num_constraints)
        if num_constraints == 0:
            return inst
        solution = lp_solve(inst)
        if not solution.optimal:
            continue
        if not ensure_active:
            return inst
        if solution.duals.max() > ACTIVE_DUAL_TOL:
            return inst
        adjusted = _activate_one_constraint(inst)
        if adjusted is None:
            continue
        solution = lp_solve(adjusted)
        if solution.optimal and solution.duals.max() > ACTIVE_DUAL_TOL:
            return adjusted
    raise GenerationError(
        f"no acceptable instance for n={n}, M={num_constraints}, seed={seed} "
        f"within {max_attempts} draws"
    )


def generation_meta(seed: int) -> dict:
    """Document metadata recorded next to generated instances."""
    return {"seed": seed, "generator-version": GENERATOR_VERSION}


def _draw(rng: np.random.Generator, n: int, num_constraints: int) -> QcqpInstance:
    forms = [
        QuadraticForm(n, rng.standard_normal((n, n)), rng.standard_normal(n), float(rng.standard_normal()))
        for _ in range(num_constraints + 1)
    ]
    return QcqpInstance(n, forms[0], tuple(forms[1:]))


def _activate_one_constraint(inst: QcqpInstance) -> QcqpInstance | None:
    """Shift one constraint constant so the unconstrained minimizer violates it.

    The shifted constraint evaluates to +ACTIVE_MARGIN at the unconstrained
    minimizer of the objective while its minimum over all bit vectors stays
    negative. Returns None when no constraint has enough headroom.
    """
    bits = bit_matrix(inst.n).astype(np.float64)
    objective = _values(inst.objective, bits)
    best = int(np.argmin(objective))
    constraint_values = [_values(f, bits) for f in inst.constraints]
    at_best = np.array([v[best] for v in constraint_values])
    if np.any(at_best > 0):
        # The minimizer is already cut off; the zero duals have another cause,
        # so repairing a constant will not help. Let the caller redraw.
        return None
    headroom = at_best - np.array([v.min() for v in constraint_values])
    candidates = np.where(headroom > ACTIVE_MARGIN)[0]
    if candidates.size == 0:
        return None
    target = int(candidates[np.argmax(headroom[candidates])])
    shift = ACTIVE_MARGIN - at_best[target]
    old = inst.constraints[target]
    shifted = QuadraticForm(old.n, old.A, old.c, old.d + shift)
    constraints = tuple(
        shifted if m == target else form for m, form in enumerate(inst.constraints)
    )
    return QcqpInstance(inst.n, inst.objective, constraints)


def _values(form: QuadraticForm, bits: np.ndarray) -> np.ndarray:
    return np.einsum("ki,ij,kj->k", bits, form.A, bits) + bits @ form.c + form.d
