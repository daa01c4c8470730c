"""Dense statevector simulation of the QAOA ansatz.

The cost unitary is diagonal, so a phase layer is a pointwise multiply by
``exp(-i * gamma * E)``.  The mixer ``exp(-i * beta * sum_j X_j)`` factorises
exactly into single-qubit rotations.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Dict, Sequence

import numpy as np

from .ising import DEFAULT_MAX_QUBITS, EnergyTable, QubitBudgetError, bitstring


@dataclass
class Statevector:
    qubit_count: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (1 << self.qubit_count,):
            raise ValueError("amplitude count must be 2**qubit_count")

    @classmethod
    def basis(cls, z: str) -> "Statevector":
        amps = np.zeros(1 << len(z), dtype=complex)
        amps[int(z, 2)] = 1.0
        return cls(len(z), amps)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sum(self.probabilities()))


@dataclass(frozen=True)
class AnsatzParams:
    gammas: tuple
    betas: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas):
            raise ValueError("gammas and betas must have equal length")

    @property
    def layers(self) -> int:
        return len(self.gammas)

    def to_vector(self) -> np.ndarray:
        """Flat layout ``[gamma_1..gamma_q, beta_1..beta_q]``."""
        return np.array(self.gammas + self.betas, dtype=float)

    @classmethod
    def from_vector(cls, x: Sequence[float]) -> "AnsatzParams":
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or len(x) % 2:
            raise ValueError("parameter vector must have even length")
        q = len(x) // 2
        return cls(tuple(x[:q]), tuple(x[q:]))


@dataclass(frozen=True)
class SampleDistribution:
    """Measurement outcome masses keyed by bit string.

    ``total_shots == 0`` marks exact probabilities rather than sampled counts.
    """

    total_shots: int
    weights: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_probabilities(cls, probs: np.ndarray, n: int, total_shots: int = 0) -> "SampleDistribution":
        support = np.flatnonzero(probs > 0)
        return cls(total_shots, {bitstring(int(k), n): float(probs[k]) for k in support})

    def to_array(self, n: int) -> np.ndarray:
        out = np.zeros(1 << n)
        for z, p in self.weights.items():
            if len(z) != n:
                raise ValueError(f"bit string {z!r} has length != {n}")
            out[int(z, 2)] += p
        return out


def uniform_state(n: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> Statevector:
    if n < 1:
        raise ValueError("need at least one qubit")
    if n > max_qubits:
        raise QubitBudgetError(f"{n} qubits exceeds budget of {max_qubits}")
    dim = 1 << n
    return Statevector(n, np.full(dim, 1.0 / np.sqrt(dim), dtype=complex))


def _check_dims(state: Statevector, table: EnergyTable) -> None:
    if state.qubit_count != table.qubit_count:
        raise ValueError(f"state has {state.qubit_count} qubits, table has {table.qubit_count}")


def _phase_inplace(amps: np.ndarray, energies: np.ndarray, gamma: float) -> None:
    amps *= np.exp(-1j * gamma * energies)


def _mixer_pairwise(amps: np.ndarray, n: int, beta: float) -> None:
    c, s = np.cos(beta), -1j * np.sin(beta)
    for j in range(n):
        # axis 1 is the bit z_j (z_0 is the most significant)
        view = amps.reshape(1 << j, 2, 1 << (n - j - 1))
        view[:] = c * view + s * view[:, ::-1, :]


@functools.lru_cache(maxsize=None)
def _hamming_matrix(m: int) -> np.ndarray:
    k = np.arange(1 << m)
    x = k[:, None] ^ k[None, :]
    h = np.zeros_like(x)
    while x.any():
        h += x & 1
        x >>= 1
    return h


def _rotation_power(m: int, beta: float) -> np.ndarray:
    """``exp(-i beta X)`` tensored ``m`` times: entries depend on Hamming distance."""
    h = np.arange(m + 1)
    values = np.cos(beta) ** (m - h) * (-1j * np.sin(beta)) ** h
    return values[_hamming_matrix(m)]


_FACTORED_MIXER_MAX_QUBITS = 12


def _mixer_inplace(amps: np.ndarray, n: int, beta: float) -> None:
    if n > _FACTORED_MIXER_MAX_QUBITS:
        _mixer_pairwise(amps, n, beta)
        return
    # R^{(x)n} = R^{(x)hi} (x) R^{(x)lo}; both factors are symmetric
    hi = n // 2
    lo = n - hi
    block = amps.reshape(1 << hi, 1 << lo)
    block[:] = _rotation_power(hi, beta) @ block @ _rotation_power(lo, beta)


def apply_phase_layer(state: Statevector, table: EnergyTable, gamma: float) -> Statevector:
    _check_dims(state, table)
    amps = state.amplitudes.copy()
    _phase_inplace(amps, table.energies, gamma)
    return Statevector(state.qubit_count, amps)


def apply_mixer_layer(state: Statevector, beta: float) -> Statevector:
    amps = state.amplitudes.copy()
    _mixer_inplace(amps, state.qubit_count, beta)
    return Statevector(state.qubit_count, amps)


def evolve(table: EnergyTable, params: AnsatzParams, max_qubits: int = DEFAULT_MAX_QUBITS) -> Statevector:
    """Prepare ``U_B(b_q) U_C(g_q) ... U_B(b_1) U_C(g_1) |+>^n``."""
    state = uniform_state(table.qubit_count, max_qubits)
    amps = state.amplitudes
    for gamma, beta in zip(params.gammas, params.betas):
        _phase_inplace(amps, table.energies, gamma)
        _mixer_inplace(amps, table.qubit_count, beta)
    return state


def expectation(state: Statevector, table: EnergyTable) -> float:
    _check_dims(state, table)
    return float(np.dot(state.probabilities(), table.energies))


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Counter-based (Philox) generator keyed by ``seed`` and a stream path."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, *stream])))


def sample_counts(probs: np.ndarray, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF multinomial draw; returns counts per basis index."""
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    u = np.sort(rng.random(shots))
    # outcome k is drawn when cdf[k-1] <= u < cdf[k]
    below = np.searchsorted(u, cdf, side="left")
    below[-1] = shots
    return np.diff(below, prepend=0)


def sample(state: Statevector, shots: int, seed: int, *stream: int) -> SampleDistribution:
    """Measure ``state`` ``shots`` times, or return exact masses if ``shots == 0``."""
    if shots < 0:
        raise ValueError("shots must be nonnegative")
    probs = state.probabilities()
    if shots == 0:
        return SampleDistribution.from_probabilities(probs / probs.sum(), state.qubit_count)
    counts = sample_counts(probs, shots, make_rng(seed, *stream))
    return SampleDistribution.from_probabilities(counts / shots, state.qubit_count, shots)
