"""Dense statevector simulation of the layered R_Y / CNOT ansatz.

The circuit acts on n qubits starting from the all-zeros basis state: a
rotation layer (one R_Y per qubit) followed by a full-entanglement layer
(CNOT from qubit i to qubit j for every ordered pair i < j, ascending),
repeated ``layers`` times, with an optional trailing rotation layer.

R_Y(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]. All gates are real, so
amplitudes stay real; states expose complex amplitudes for generality while
the internal arithmetic runs on float64.

Qubit i is the i-th MSB of the basis index (see problems.bits_of_index),
so axis i of the state reshaped to (2,) * n addresses qubit i directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, SizeLimitError
from .problems import QuadraticForm, SpinForm, bit_matrix

DEFAULT_QUBIT_LIMIT = 20

NORM_TOL = 1e-10


@dataclass(frozen=True)
class AnsatzConfig:
    """Shape of the variational circuit."""

    n: int
    layers: int = 3
    final_rotation: bool = True
    entanglement: str = "full"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")
        if self.entanglement != "full":
            raise ValueError(f"unsupported entanglement pattern {self.entanglement!r}")

    @property
    def param_count(self) -> int:
        blocks = self.layers + 1 if self.final_rotation else self.layers
        return blocks * self.n


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Unit-norm amplitude vector over the 2**n computational basis states."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n,):
            raise DimensionMismatchError("QuantumState.amplitudes", (1 << self.n,), amps.shape)
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} differs from 1 by more than {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def probabilities(self) -> np.ndarray:
        """Outcome PMF p_k = |x_k|^2."""
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True, eq=False)
class DiagonalObservable:
    """Real diagonal observable: entry k is the eigenvalue on basis state k."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (1 << self.n,):
            raise DimensionMismatchError("DiagonalObservable.values", (1 << self.n,), values.shape)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


def states_of_batch(cfg: AnsatzConfig, thetas: np.ndarray) -> np.ndarray:
    """Simulate the ansatz for a batch of parameter vectors.

    Args:
        cfg: circuit shape.
        thetas: (B, P) array of parameter vectors.

    Returns:
        (B, 2**n) float64 array of (real) amplitude vectors, one per row.
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    if thetas.ndim != 2 or thetas.shape[1] != cfg.param_count:
        raise DimensionMismatchError(
            "theta batch", (thetas.shape[0] if thetas.ndim == 2 else "?", cfg.param_count), thetas.shape
        )
    n = cfg.n
    batch = thetas.shape[0]
    states = np.zeros((batch, 1 << n), dtype=np.float64)
    states[:, 0] = 1.0
    blocks = thetas.reshape(batch, -1, n)  # one row of angles per rotation layer
    for layer in range(cfg.layers):
        _apply_rotation_layer(states, blocks[:, layer, :], n)
        _apply_entangle_layer(states, n)
    if cfg.final_rotation:
        _apply_rotation_layer(states, blocks[:, cfg.layers, :], n)
    return states


def state_of(cfg: AnsatzConfig, theta) -> QuantumState:
    """Run the circuit on parameters ``theta`` and return the output state."""
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (cfg.param_count,):
        raise DimensionMismatchError("theta length", cfg.param_count, theta.shape)
    amps = states_of_batch(cfg, theta[None, :])[0]
    return QuantumState(cfg.n, amps.astype(np.complex128))


def _apply_rotation_layer(states: np.ndarray, angles: np.ndarray, n: int) -> None:
    # R_Y on qubit q for every q, with per-row angles; in place.
    batch = states.shape[0]
    for q in range(n):
        left = 1 << q
        right = 1 << (n - 1 - q)
        view = states.reshape(batch, left, 2, right)
        half = angles[:, q] / 2.0
        cos = np.cos(half)[:, None, None]
        sin = np.sin(half)[:, None, None]
        a0 = view[:, :, 0, :]
        a1 = view[:, :, 1, :]
        new0 = cos * a0 - sin * a1
        new1 = sin * a0 + cos * a1
        view[:, :, 0, :] = new0
        view[:, :, 1, :] = new1


def _apply_entangle_layer(states: np.ndarray, n: int) -> None:
    # CNOT(control=i, target=j) for all i < j, ascending; in place.
    batch = states.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            left = 1 << i
            mid = 1 << (j - i - 1)
            right = 1 << (n - 1 - j)
            view = states.reshape(batch, left, 2, mid, 2, right)
            flipped = view[:, :, 1, :, ::-1, :].copy()
            view[:, :, 1] = flipped


def diagonal_of(form: QuadraticForm, limit: int = DEFAULT_QUBIT_LIMIT) -> DiagonalObservable:
    """Diagonal observable whose entry k is f evaluated on the bits of k."""
    _check_limit(form.n, limit)
    bits = bit_matrix(form.n).astype(np.float64)
    values = np.einsum("ki,ij,kj->k", bits, form.A, bits) + bits @ form.c + form.d
    return DiagonalObservable(form.n, values)


def pauli_diagonal_of(spin: SpinForm, limit: int = DEFAULT_QUBIT_LIMIT) -> DiagonalObservable:
    """Diagonal observable built from the Z_i Z_j / Z_i / identity decomposition.

    Entry k is sum_ij A_bar[i,j] s_i s_j + sum_i c_bar[i] s_i + d_bar with
    s_i = (-1)**bit_i(k), the eigenvalue of Z on qubit i.
    """
    _check_limit(spin.n, limit)
    spins = 1.0 - 2.0 * bit_matrix(spin.n).astype(np.float64)
    values = np.einsum("ki,ij,kj->k", spins, spin.A_bar, spins) + spins @ spin.c_bar + spin.d_bar
    return DiagonalObservable(spin.n, values)


def expectation(state: QuantumState, obs: DiagonalObservable) -> float:
    """Exact expectation sum_k |x_k|^2 * values[k]."""
    if state.n != obs.n:
        raise DimensionMismatchError("observable qubit count", state.n, obs.n)
    return float(state.probabilities() @ obs.values)


def sample(state: QuantumState, shots: int, seed: int) -> np.ndarray:
    """Draw i.i.d. basis outcomes from the state's PMF.

    Returns a (shots, n) array of bit vectors; deterministic given the seed.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(np.random.PCG64(seed))
    probs = state.probabilities()
    probs = probs / probs.sum()  # remove float drift before sampling
    indices = rng.choice(probs.size, size=shots, p=probs)
    return bit_matrix(state.n)[indices]


def estimate_expectation(state: QuantumState, form: QuadraticForm, shots: int, seed: int) -> float:
    """Sample-average estimate of the expectation of f under the state's PMF."""
    if state.n != form.n:
        raise DimensionMismatchError("form qubit count", state.n, form.n)
    bits = sample(state, shots, seed).astype(np.float64)
    values = np.einsum("ki,ij,kj->k", bits, form.A, bits) + bits @ form.c + form.d
    return float(values.mean())


def _check_limit(n: int, limit: int) -> None:
    if n > limit:
        raise SizeLimitError(f"n={n} exceeds the dense diagonal limit of {limit} qubits")
