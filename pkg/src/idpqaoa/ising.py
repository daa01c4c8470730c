"""Diagonal Ising Hamiltonians built from QUBO models.

Conventions:

* bit ``z_i = 1`` means variable ``x_i = 1``; since ``Z|1> = -|1>`` the
  substitution is ``x_i = (1 - Z_i) / 2``.
* bit strings print as ``z_0 z_1 ... z_{n-1}`` and ``z_0`` is the most
  significant bit of the basis index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Tuple

import numpy as np

from .qubo import QuboModel

DEFAULT_MAX_QUBITS = 24


class QubitBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class IsingHamiltonian:
    qubit_count: int
    constant: float
    linear: Mapping[int, float]
    quadratic: Mapping[Tuple[int, int], float]


def qubo_to_ising(m: QuboModel) -> IsingHamiltonian:
    constant = m.constant
    linear: Dict[int, float] = {}
    quadratic: Dict[Tuple[int, int], float] = {}
    for i, c in m.linear.items():
        # c * (1 - Z_i) / 2
        constant += c / 2
        linear[i] = linear.get(i, 0.0) - c / 2
    for (i, j), c in m.quadratic.items():
        # c * (1 - Z_i)(1 - Z_j) / 4
        constant += c / 4
        linear[i] = linear.get(i, 0.0) - c / 4
        linear[j] = linear.get(j, 0.0) - c / 4
        quadratic[(i, j)] = quadratic.get((i, j), 0.0) + c / 4
    return IsingHamiltonian(m.variable_count, constant, dict(sorted(linear.items())), dict(sorted(quadratic.items())))


def spin(bit: int) -> int:
    return 1 - 2 * bit


def energy(h: IsingHamiltonian, z: Sequence[int] | str) -> float:
    """Diagonal element ``<z|H|z>`` for the basis state ``z``."""
    if isinstance(z, str):
        z = [int(ch) for ch in z]
    if len(z) != h.qubit_count:
        raise ValueError(f"bit string length {len(z)} != qubit count {h.qubit_count}")
    s = [spin(b) for b in z]
    total = h.constant
    total += sum(c * s[i] for i, c in h.linear.items())
    total += sum(c * s[i] * s[j] for (i, j), c in h.quadratic.items())
    return total


def basis_index(z: Sequence[int] | str) -> int:
    if isinstance(z, str):
        return int(z, 2)
    index = 0
    for b in z:
        index = (index << 1) | int(b)
    return index


def bitstring(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def bit_columns(n: int) -> np.ndarray:
    """``(n, 2**n)`` uint8 array; row ``i`` holds bit ``z_i`` of every index."""
    idx = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[None, :] >> shifts[:, None]) & 1).astype(np.uint8)


@dataclass(frozen=True)
class EnergyTable:
    """All ``2**n`` diagonal energies, indexed by basis index."""

    qubit_count: int
    energies: np.ndarray

    def __post_init__(self) -> None:
        if self.energies.shape != (1 << self.qubit_count,):
            raise ValueError("energy table length must be 2**qubit_count")
        self.energies.setflags(write=False)

    def __len__(self) -> int:
        return len(self.energies)

    def __getitem__(self, key):
        if isinstance(key, str):
            key = basis_index(key)
        return self.energies[key]

    @property
    def minimum(self) -> float:
        return float(self.energies.min())

    def argmin(self, atol: float = 1e-9) -> list[str]:
        hits = np.flatnonzero(self.energies <= self.energies.min() + atol)
        return [bitstring(int(k), self.qubit_count) for k in hits]


def energy_table(h: IsingHamiltonian, max_qubits: int = DEFAULT_MAX_QUBITS) -> EnergyTable:
    n = h.qubit_count
    if n > max_qubits:
        raise QubitBudgetError(f"{n} qubits exceeds budget of {max_qubits}")
    spins = 1.0 - 2.0 * bit_columns(n)
    energies = np.full(1 << n, h.constant, dtype=float)
    for i, c in h.linear.items():
        energies += c * spins[i]
    for (i, j), c in h.quadratic.items():
        energies += c * spins[i] * spins[j]
    return EnergyTable(n, energies)
