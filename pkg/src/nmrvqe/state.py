"""Normalized complex statevectors over the computational basis.

Convention used throughout the package: qubit 0 is the leftmost tensor
factor, so it maps to the most significant bit of the basis index.
|01> on two qubits is index 1, with qubit 0 in |0> and qubit 1 in |1>.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError

NORM_TOL = 1e-10


@dataclass
class StateVector:
    """Length-2**n complex amplitude vector with unit norm.

    Operations elsewhere in the package treat instances as values: they
    return new StateVectors and never mutate the amplitude array.
    """

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise UsageError(f"n_qubits must be positive, got {self.n_qubits}")
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n_qubits,):
            raise UsageError(
                f"expected {2**self.n_qubits} amplitudes for {self.n_qubits} "
                f"qubits, got shape {amps.shape}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise UsageError(f"state is not normalized: |s|^2 = {norm_sq!r}")
        self.amplitudes = amps

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def fidelity(self, other: "StateVector") -> float:
        """|<self|other>|^2, the squared overlap with another state."""
        if other.n_qubits != self.n_qubits:
            raise UsageError(
                f"qubit count mismatch: {self.n_qubits} vs {other.n_qubits}"
            )
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


def init_basis_state(n_qubits: int, index: int) -> StateVector:
    """Computational basis state |index> on n_qubits qubits."""
    if n_qubits < 1:
        raise UsageError(f"n_qubits must be positive, got {n_qubits}")
    if not 0 <= index < 2**n_qubits:
        raise UsageError(
            f"basis index {index} out of range for {n_qubits} qubits"
        )
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def qubit_bitmask(n_qubits: int, qubit: int) -> int:
    """Bit selecting `qubit` inside a basis index (qubit 0 = MSB)."""
    if not 0 <= qubit < n_qubits:
        raise UsageError(f"qubit {qubit} out of range for {n_qubits} qubits")
    return 1 << (n_qubits - 1 - qubit)


def bit_parity(values: np.ndarray) -> np.ndarray:
    """Parity (0 or 1) of the set bits of each entry, for masks < 2**32."""
    v = values.astype(np.int64)
    v ^= v >> 16
    v ^= v >> 8
    v ^= v >> 4
    v ^= v >> 2
    v ^= v >> 1
    return v & 1
