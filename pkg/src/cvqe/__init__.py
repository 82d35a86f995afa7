"""Constrained-VQE solver for stochastic binary QCQPs.

A classically simulated variational quantum circuit is trained by dual
decomposition to sample bit vectors that solve quadratically constrained
binary programs in expectation; exact LP and brute-force oracles provide
the ground truth.
"""

from .dual import DualConfig, DualState, SolveReport, dual_step, lagrangian_observable, solve, trace_csv
from .errors import (
    CvqeError,
    DimensionMismatchError,
    GenerationError,
    InstanceFormatError,
    MultiplierSignError,
    SizeLimitError,
)
from .generate import gen_instance, generation_meta
from .oracles import BruteForceSolution, LpSolution, brute_force_solve, lp_solve, stochastic_feasible
from .problems import (
    BitVector,
    QcqpInstance,
    QuadraticForm,
    SpinForm,
    bit_matrix,
    bits_of_index,
    eval_quadratic,
    eval_spin,
    index_of_bits,
    parse_instance,
    serialize_instance,
    to_spin_form,
)
from .simulator import (
    AnsatzConfig,
    DiagonalObservable,
    QuantumState,
    diagonal_of,
    estimate_expectation,
    expectation,
    pauli_diagonal_of,
    sample,
    state_of,
)
from .vqe import VqeResult, VqeSettings, gradient, minimize

__version__ = "0.1.0"

__all__ = [
    "AnsatzConfig",
    "BitVector",
    "BruteForceSolution",
    "CvqeError",
    "DiagonalObservable",
    "DimensionMismatchError",
    "DualConfig",
    "DualState",
    "GenerationError",
    "InstanceFormatError",
    "LpSolution",
    "MultiplierSignError",
    "QcqpInstance",
    "QuadraticForm",
    "QuantumState",
    "SizeLimitError",
    "SolveReport",
    "SpinForm",
    "VqeResult",
    "VqeSettings",
    "bit_matrix",
    "bits_of_index",
    "brute_force_solve",
    "diagonal_of",
    "dual_step",
    "estimate_expectation",
    "eval_quadratic",
    "eval_spin",
    "expectation",
    "gen_instance",
    "generation_meta",
    "gradient",
    "index_of_bits",
    "lagrangian_observable",
    "lp_solve",
    "minimize",
    "parse_instance",
    "pauli_diagonal_of",
    "sample",
    "serialize_instance",
    "solve",
    "state_of",
    "stochastic_feasible",
    "to_spin_form",
    "trace_csv",
]
