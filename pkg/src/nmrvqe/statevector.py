"""Statevector simulation of the four-gate set X, CNOT, Ry, controlled-Ry.

Gates act on amplitude arrays through index arithmetic (qubit 0 = most
significant bit). Expectation values of Pauli sums can be taken exactly
from the statevector or estimated from seeded bitstring sampling after
rotating each Pauli term into the Z basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError
from .pauli import PauliString, PauliSum
from .state import StateVector, bit_parity, init_basis_state, qubit_bitmask

GATE_KINDS = ("X", "CNOT", "RY", "CRY")
_ROTATION_KINDS = ("RY", "CRY")
_CONTROLLED_KINDS = ("CNOT", "CRY")


@dataclass(frozen=True)
class GateOp:
    """One gate application: fixed (X, CNOT), bound-angle or free-parameter
    rotations (RY, CRY). A free parameter is referenced by its slot index."""

    kind: str
    target: int
    control: int | None = None
    angle: float | None = None
    param: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise UsageError(f"unknown gate kind {self.kind!r}")
        if self.kind in _CONTROLLED_KINDS:
            if self.control is None:
                raise UsageError(f"{self.kind} requires a control qubit")
            if self.control == self.target:
                raise UsageError(
                    f"{self.kind} control and target must differ, both {self.target}"
                )
        elif self.control is not None:
            raise UsageError(f"{self.kind} takes no control qubit")
        if self.kind in _ROTATION_KINDS:
            if (self.angle is None) == (self.param is None):
                raise UsageError(
                    f"{self.kind} needs exactly one of a bound angle or a "
                    f"free-parameter slot"
                )
            if self.param is not None and self.param < 0:
                raise UsageError(f"parameter slot must be >= 0, got {self.param}")
        elif self.angle is not None or self.param is not None:
            raise UsageError(f"{self.kind} takes no angle or parameter")

    @classmethod
    def x(cls, target: int) -> "GateOp":
        return cls("X", target)

    @classmethod
    def cnot(cls, control: int, target: int) -> "GateOp":
        return cls("CNOT", target, control=control)

    @classmethod
    def ry(cls, target: int, *, angle: float | None = None,
           param: int | None = None) -> "GateOp":
        return cls("RY", target, angle=angle, param=param)

    @classmethod
    def cry(cls, control: int, target: int, *, angle: float | None = None,
            param: int | None = None) -> "GateOp":
        return cls("CRY", target, control=control, angle=angle, param=param)

    @property
    def is_bound(self) -> bool:
        return self.kind not in _ROTATION_KINDS or self.angle is not None


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed register, with free rotation slots.

    Every slot index below `n_parameters` must be used by at least one
    gate, so the parameter vector has no dead entries.
    """

    n_qubits: int
    ops: tuple[GateOp, ...]
    n_parameters: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise UsageError(f"n_qubits must be positive, got {self.n_qubits}")
        object.__setattr__(self, "ops", tuple(self.ops))
        used: set[int] = set()
        for op in self.ops:
            for q in (op.target, op.control):
                if q is not None and not 0 <= q < self.n_qubits:
                    raise UsageError(
                        f"gate {op.kind} touches qubit {q}, register has "
                        f"{self.n_qubits}"
                    )
            if op.param is not None:
                if op.param >= self.n_parameters:
                    raise UsageError(
                        f"parameter slot {op.param} out of range "
                        f"({self.n_parameters} declared)"
                    )
                used.add(op.param)
        missing = set(range(self.n_parameters)) - used
        if missing:
            raise UsageError(f"unused parameter slots: {sorted(missing)}")

    @classmethod
    def from_ops(cls, n_qubits: int, ops) -> "Circuit":
        """Infer the parameter count from the highest slot index used."""
        ops = tuple(ops)
        slots = [op.param for op in ops if op.param is not None]
        return cls(n_qubits, ops, max(slots) + 1 if slots else 0)


# Gate kernels on raw amplitude arrays. Each returns a fresh array.

def _x_kernel(amps: np.ndarray, n: int, target: int) -> np.ndarray:
    mask = qubit_bitmask(n, target)
    idx = np.arange(amps.size)
    return amps[idx ^ mask]


def _cnot_kernel(amps: np.ndarray, n: int, control: int, target: int) -> np.ndarray:
    cmask = qubit_bitmask(n, control)
    tmask = qubit_bitmask(n, target)
    idx = np.arange(amps.size)
    src = np.where((idx & cmask) != 0, idx ^ tmask, idx)
    return amps[src]


def _ry_kernel(amps: np.ndarray, n: int, target: int, angle: float,
               control: int | None = None) -> np.ndarray:
    tmask = qubit_bitmask(n, target)
    idx = np.arange(amps.size)
    lower = idx[(idx & tmask) == 0]
    if control is not None:
        cmask = qubit_bitmask(n, control)
        lower = lower[(lower & cmask) != 0]
    upper = lower | tmask
    c = math.cos(angle / 2.0)
    s = math.sin(angle / 2.0)
    out = amps.copy()
    out[lower] = c * amps[lower] - s * amps[upper]
    out[upper] = s * amps[lower] + c * amps[upper]
    return out


def _phase_sdg_kernel(amps: np.ndarray, n: int, target: int) -> np.ndarray:
    """diag(1, -i) on one qubit; used to fold Y into an X-style measurement."""
    mask = qubit_bitmask(n, target)
    idx = np.arange(amps.size)
    out = amps.copy()
    hit = (idx & mask) != 0
    out[hit] *= -1j
    return out


def _apply_op(amps: np.ndarray, n: int, op: GateOp, angle: float | None) -> np.ndarray:
    if op.kind == "X":
        return _x_kernel(amps, n, op.target)
    if op.kind == "CNOT":
        return _cnot_kernel(amps, n, op.control, op.target)
    if op.kind == "RY":
        return _ry_kernel(amps, n, op.target, angle)
    return _ry_kernel(amps, n, op.target, angle, control=op.control)


def apply_gate(s: StateVector, g: GateOp) -> StateVector:
    """Apply a single gate with a bound angle; returns a new state."""
    if not g.is_bound:
        raise UsageError(
            f"gate {g.kind} has unbound parameter slot {g.param}; "
            f"bind it through run_circuit"
        )
    return StateVector(s.n_qubits, _apply_op(s.amplitudes, s.n_qubits, g, g.angle))


def run_circuit(c: Circuit, theta, s0: StateVector | None = None) -> StateVector:
    """Apply all gates in order with free slots bound from `theta`.

    `s0` defaults to the all-zeros register.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (c.n_parameters,):
        raise UsageError(
            f"expected {c.n_parameters} parameters, got shape {theta.shape}"
        )
    if s0 is None:
        s0 = init_basis_state(c.n_qubits, 0)
    if s0.n_qubits != c.n_qubits:
        raise UsageError(
            f"initial state has {s0.n_qubits} qubits, circuit {c.n_qubits}"
        )
    amps = s0.amplitudes
    for op in c.ops:
        angle = op.angle if op.param is None else float(theta[op.param])
        amps = _apply_op(amps, c.n_qubits, op, angle)
    return StateVector(c.n_qubits, amps)


def _rotate_to_z_basis(amps: np.ndarray, n: int, string: PauliString) -> np.ndarray:
    """Rotate so measuring Z on each support qubit measures the given term.

    X factors map to Z under Ry(-pi/2); Y factors first absorb their phase
    via diag(1, -i) and then rotate the same way.
    """
    for qubit, ch in enumerate(string.factors):
        if ch == "Y":
            amps = _phase_sdg_kernel(amps, n, qubit)
        if ch in ("X", "Y"):
            amps = _ry_kernel(amps, n, qubit, -math.pi / 2.0)
    return amps


def sample_expectation_stats(
    c: Circuit,
    theta,
    h: PauliSum,
    shots: int,
    seed: int,
    s0: StateVector | None = None,
) -> tuple[float, float]:
    """Shot-sampled estimate of <psi(theta)|H|psi(theta)> with its
    empirical standard error.

    Per Pauli term the final state is rotated into the term's Z basis and
    `shots` bitstrings are drawn from the amplitude-squared distribution
    (aggregated as multinomial counts); each bitstring contributes the
    eigenvalue +/-1 read off the parity of the term's support bits.
    Philox keyed by `seed` makes the estimate a pure function of
    (circuit, theta, h, shots, seed).
    """
    if shots < 1:
        raise UsageError(f"shots must be >= 1, got {shots}")
    if h.n_qubits != c.n_qubits:
        raise UsageError(
            f"operator acts on {h.n_qubits} qubits, circuit has {c.n_qubits}"
        )
    final = run_circuit(c, theta, s0)
    n = c.n_qubits
    rng = np.random.Generator(np.random.Philox(seed))
    idx = np.arange(final.dim)

    value = 0.0
    variance = 0.0
    for coeff, string in h.terms:
        support = 0
        for qubit, ch in enumerate(string.factors):
            if ch != "I":
                support |= qubit_bitmask(n, qubit)
        if support == 0:
            value += coeff  # identity term: no measurement needed
            continue
        rotated = _rotate_to_z_basis(final.amplitudes, n, string)
        probs = np.abs(rotated) ** 2
        probs = np.clip(probs, 0.0, None)
        probs /= probs.sum()
        counts = rng.multinomial(shots, probs)
        eigenvalues = 1.0 - 2.0 * bit_parity(idx & support)
        mean = float(counts @ eigenvalues) / shots
        value += coeff * mean
        if shots > 1:
            # Sample variance of +/-1 outcomes: (1 - mean^2) * n/(n-1).
            sample_var = max(0.0, 1.0 - mean * mean) * shots / (shots - 1)
            variance += coeff * coeff * sample_var / shots
    return value, math.sqrt(variance)


def sample_expectation(
    c: Circuit,
    theta,
    h: PauliSum,
    shots: int,
    seed: int,
    s0: StateVector | None = None,
) -> float:
    """Shot-sampled Pauli-sum expectation; see `sample_expectation_stats`."""
    value, _ = sample_expectation_stats(c, theta, h, shots, seed, s0)
    return value


def circuit_to_dict(c: Circuit) -> dict:
    """JSON-ready circuit: {"n_qubits": n, "ops": [{"kind": ..., ...}]}."""
    ops = []
    for op in c.ops:
        entry: dict = {"kind": op.kind, "target": op.target}
        if op.control is not None:
            entry["control"] = op.control
        if op.angle is not None:
            entry["angle"] = op.angle
        if op.param is not None:
            entry["param"] = op.param
        ops.append(entry)
    return {"n_qubits": c.n_qubits, "ops": ops}


def circuit_from_dict(data: dict) -> Circuit:
    """Inverse of `circuit_to_dict`; parameter count is inferred from the
    highest slot index used."""
    try:
        n_qubits = int(data["n_qubits"])
        ops = []
        for entry in data["ops"]:
            ops.append(
                GateOp(
                    kind=str(entry["kind"]),
                    target=int(entry["target"]),
                    control=(int(entry["control"]) if "control" in entry else None),
                    angle=(float(entry["angle"]) if "angle" in entry else None),
                    param=(int(entry["param"]) if "param" in entry else None),
                )
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed circuit document: {exc}") from exc
    return Circuit.from_ops(n_qubits, ops)
