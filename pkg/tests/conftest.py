"""Shared oracle helpers.

Everything here recomputes expected values through dense matrices built
from first principles (explicit 2x2 constants and Kronecker products),
independent of the package's bitmask and kernel code paths.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from nmrvqe.pauli import PauliString, PauliSum
from nmrvqe.state import StateVector
from nmrvqe.statevector import Circuit, GateOp

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
P0 = np.array([[1, 0], [0, 0]], dtype=complex)
P1 = np.array([[0, 0], [0, 1]], dtype=complex)

PAULI_MATRICES = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}


def kron_chain(factors) -> np.ndarray:
    out = np.array([[1.0]], dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def dense_pauli(label: str) -> np.ndarray:
    """Dense matrix of a factor string like "ZYI" (qubit 0 leftmost)."""
    return kron_chain(PAULI_MATRICES[ch] for ch in label)


def dense_pauli_sum(h: PauliSum) -> np.ndarray:
    dim = 2**h.n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for coeff, string in h.terms:
        out += coeff * dense_pauli(string.factors)
    return out


def ry_matrix(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def dense_gate(op: GateOp, n: int, angle: float | None = None) -> np.ndarray:
    """Full-register unitary of one gate (for the circuit oracle)."""
    if angle is None:
        angle = op.angle
    single = {"X": X2, "RY": None}.get(op.kind)
    if op.kind == "X":
        factors = [I2] * n
        factors[op.target] = X2
        return kron_chain(factors)
    if op.kind == "RY":
        factors = [I2] * n
        factors[op.target] = ry_matrix(angle)
        return kron_chain(factors)
    # Controlled gates: P0 branch is identity, P1 branch applies the gate.
    idle = [I2] * n
    idle[op.control] = P0
    active = [I2] * n
    active[op.control] = P1
    active[op.target] = X2 if op.kind == "CNOT" else ry_matrix(angle)
    return kron_chain(idle) + kron_chain(active)


def circuit_unitary(circuit: Circuit, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    u = np.eye(2**circuit.n_qubits, dtype=complex)
    for op in circuit.ops:
        angle = op.angle if op.param is None else float(theta[op.param])
        u = dense_gate(op, circuit.n_qubits, angle) @ u
    return u


def random_state(rng: np.random.Generator, n_qubits: int) -> StateVector:
    amps = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return StateVector(n_qubits, amps / np.linalg.norm(amps))


def random_pauli_string(rng: np.random.Generator, n_qubits: int) -> PauliString:
    return PauliString(n_qubits, "".join(rng.choice(list("IXYZ"), n_qubits)))


def random_pauli_sum(rng: np.random.Generator, n_qubits: int,
                     max_terms: int = 10) -> PauliSum:
    n_terms = int(rng.integers(1, max_terms + 1))
    terms = tuple(
        (float(rng.uniform(-2.0, 2.0)), random_pauli_string(rng, n_qubits))
        for _ in range(n_terms)
    )
    return PauliSum(n_qubits, terms)


def random_circuit(rng: np.random.Generator, n_qubits: int,
                   n_free: int) -> Circuit:
    """Random mix of the four gate kinds with n_free rotation slots.

    Free parameters are placed on plain RY gates only (the shift rule's
    precondition); CRY gates appear with bound angles.
    """
    ops: list[GateOp] = []
    slot = 0
    while slot < n_free or len(ops) < 3:
        kind = rng.choice(["X", "CNOT", "RY", "CRY"])
        target = int(rng.integers(n_qubits))
        if kind in ("CNOT", "CRY") and n_qubits < 2:
            continue
        control = None
        if kind in ("CNOT", "CRY"):
            control = int(rng.integers(n_qubits))
            while control == target:
                control = int(rng.integers(n_qubits))
        if kind == "X":
            ops.append(GateOp.x(target))
        elif kind == "CNOT":
            ops.append(GateOp.cnot(control, target))
        elif kind == "CRY":
            ops.append(GateOp.cry(control, target,
                                  angle=float(rng.uniform(-np.pi, np.pi))))
        elif slot < n_free:
            ops.append(GateOp.ry(target, param=slot))
            slot += 1
        else:
            ops.append(GateOp.ry(target,
                                 angle=float(rng.uniform(-np.pi, np.pi))))
    return Circuit(n_qubits, tuple(ops), n_free)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (m + m.conj().T) / 2.0


def assert_within_quoted(value: float, quoted: float, decimals: int = 2):
    """Agreement with a value quoted to `decimals` places: the rounded
    result may differ by at most one unit in the last quoted digit."""
    unit = 10.0**-decimals
    assert abs(round(value, decimals) - quoted) <= unit + 1e-12, (
        f"{value!r} not within one quoted digit of {quoted!r}"
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20250810)
