"""Trial-wavefunction circuits for the AB and AB2 ground-state searches.

Two fixed layouts cover the showcase systems (four rotations plus
one CNOT on two qubits; six rotations plus two CNOTs on three qubits),
and a generic layered template extends the same pattern to n qubits:
a full Ry layer followed by a CNOT chain, repeated.

All rotations are Ry, so the prepared amplitudes stay real; CNOT
controls sit on the lower qubit index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .statevector import Circuit, GateOp

AB_FIG2 = "ab_fig2"
AB2_FIG4 = "ab2_fig4"
LAYERED = "layered"


@dataclass(frozen=True)
class AnsatzSpec:
    """Which circuit layout to build, plus the starting angles."""

    layout: str
    n_qubits: int
    layers: int = 1
    initial_angles: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.layout not in (AB_FIG2, AB2_FIG4, LAYERED):
            raise UsageError(f"unknown ansatz layout {self.layout!r}")
        if self.layout == AB_FIG2 and self.n_qubits != 2:
            raise UsageError("the two-spin layout requires exactly 2 qubits")
        if self.layout == AB2_FIG4 and self.n_qubits != 3:
            raise UsageError("the three-spin layout requires exactly 3 qubits")
        if self.n_qubits < 1:
            raise UsageError(f"n_qubits must be positive, got {self.n_qubits}")
        if self.layout == LAYERED and self.layers < 1:
            raise UsageError(f"layers must be >= 1, got {self.layers}")
        if self.initial_angles is not None:
            angles = tuple(float(a) for a in self.initial_angles)
            if len(angles) != self.parameter_count:
                raise UsageError(
                    f"expected {self.parameter_count} initial angles, "
                    f"got {len(angles)}"
                )
            object.__setattr__(self, "initial_angles", angles)

    @property
    def parameter_count(self) -> int:
        if self.layout == AB_FIG2:
            return 4
        if self.layout == AB2_FIG4:
            return 6
        return self.layers * self.n_qubits

    @classmethod
    def ab(cls, initial_angles=None) -> "AnsatzSpec":
        return cls(AB_FIG2, 2, initial_angles=initial_angles)

    @classmethod
    def ab2(cls, initial_angles=None) -> "AnsatzSpec":
        return cls(AB2_FIG4, 3, initial_angles=initial_angles)

    @classmethod
    def layered(cls, n_qubits: int, layers: int = 1,
                initial_angles=None) -> "AnsatzSpec":
        return cls(LAYERED, n_qubits, layers, initial_angles)


def build_ansatz(spec: AnsatzSpec) -> Circuit:
    """Deterministic circuit for the given layout."""
    ops: list[GateOp] = []
    if spec.layout == AB_FIG2:
        ops += [GateOp.ry(0, param=0), GateOp.ry(1, param=1)]
        ops.append(GateOp.cnot(0, 1))
        ops += [GateOp.ry(0, param=2), GateOp.ry(1, param=3)]
        return Circuit(2, tuple(ops), 4)
    if spec.layout == AB2_FIG4:
        ops += [GateOp.ry(q, param=q) for q in range(3)]
        ops += [GateOp.cnot(0, 1), GateOp.cnot(1, 2)]
        ops += [GateOp.ry(q, param=3 + q) for q in range(3)]
        return Circuit(3, tuple(ops), 6)
    n = spec.n_qubits
    for layer in range(spec.layers):
        ops += [GateOp.ry(q, param=layer * n + q) for q in range(n)]
        ops += [GateOp.cnot(q, q + 1) for q in range(n - 1)]
    return Circuit(n, tuple(ops), spec.layers * n)


def default_initial_parameters(spec: AnsatzSpec) -> np.ndarray:
    """All rotation angles start at 1 radian."""
    return np.ones(spec.parameter_count)


def initial_parameters(spec: AnsatzSpec) -> np.ndarray:
    """The spec's explicit starting angles, or the 1-radian default."""
    if spec.initial_angles is not None:
        return np.asarray(spec.initial_angles, dtype=float)
    return default_initial_parameters(spec)


def ansatz_spec_from_config(value, n_qubits: int) -> AnsatzSpec:
    """Parse the run-config form: "ab_fig2" | "ab2_fig4" | {"layered": L}."""
    if value == AB_FIG2:
        return AnsatzSpec.ab()
    if value == AB2_FIG4:
        return AnsatzSpec.ab2()
    if isinstance(value, dict) and set(value) == {"layered"}:
        return AnsatzSpec.layered(n_qubits, int(value["layered"]))
    raise UsageError(f"unrecognized ansatz config {value!r}")
