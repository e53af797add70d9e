"""Weighted sums of Pauli strings and their action on statevectors.

A Pauli string is a tensor product of single-qubit operators drawn from
{I, X, Y, Z}, written left to right for qubits 0..n-1 ("ZI" is Z on
qubit 0). A PauliSum with real coefficients represents a Hermitian
operator such as a spin Hamiltonian in Hz.

String application never builds the dense matrix: X and Y flip basis
bits through an XOR mask and Y/Z contribute phases read off the source
bits, so the dense expansion in `to_dense_matrix` stays an independent
computation path for testing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .state import StateVector, bit_parity

PAULI_CHARS = "IXYZ"

# Dense single-qubit factors; used only by the dense expansion path.
_FACTOR_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

MAX_DENSE_QUBITS = 12


@dataclass(frozen=True)
class PauliString:
    """Tensor product of I/X/Y/Z factors, one character per qubit."""

    n_qubits: int
    factors: str

    def __post_init__(self):
        if self.n_qubits < 1:
            raise UsageError(f"n_qubits must be positive, got {self.n_qubits}")
        if len(self.factors) != self.n_qubits:
            raise UsageError(
                f"factor string {self.factors!r} does not match "
                f"{self.n_qubits} qubits"
            )
        bad = set(self.factors) - set(PAULI_CHARS)
        if bad:
            raise UsageError(f"invalid Pauli factors: {sorted(bad)}")

    def __str__(self) -> str:
        return self.factors

    @property
    def weight(self) -> int:
        """Number of non-identity factors."""
        return sum(1 for ch in self.factors if ch != "I")


@dataclass(frozen=True)
class PauliSum:
    """Real-weighted sum of Pauli strings on a shared qubit register."""

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        if self.n_qubits < 1:
            raise UsageError(f"n_qubits must be positive, got {self.n_qubits}")
        terms = tuple((float(c), p) for c, p in self.terms)
        for _, string in terms:
            if string.n_qubits != self.n_qubits:
                raise UsageError(
                    f"term {string.factors!r} has {string.n_qubits} qubits, "
                    f"sum has {self.n_qubits}"
                )
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_terms(cls, n_qubits: int, terms) -> "PauliSum":
        """Build from (coefficient, factor-string) pairs, e.g. (1.5, "ZI")."""
        return cls(
            n_qubits,
            tuple((c, PauliString(n_qubits, s)) for c, s in terms),
        )

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient_norm(self) -> float:
        """Sum of |coefficients|; an upper bound on the operator norm."""
        return float(sum(abs(c) for c, _ in self.terms))


def apply_pauli_string(p: PauliString, s: StateVector) -> StateVector:
    """Return P|s> without forming the dense matrix.

    Basis index k receives amplitude from source index k ^ x_mask, where
    x_mask flips the bits of X and Y factors; Y and Z factors contribute
    phases (-1) per set source bit, plus a global i per Y factor.
    """
    if p.n_qubits != s.n_qubits:
        raise UsageError(
            f"Pauli string acts on {p.n_qubits} qubits, state has {s.n_qubits}"
        )
    n = s.n_qubits
    x_mask = 0
    phase_mask = 0  # bits whose source value flips the sign (Y and Z)
    n_y = 0
    for qubit, ch in enumerate(p.factors):
        bit = 1 << (n - 1 - qubit)
        if ch in ("X", "Y"):
            x_mask |= bit
        if ch in ("Y", "Z"):
            phase_mask |= bit
        if ch == "Y":
            n_y += 1

    indices = np.arange(s.dim)
    source = indices ^ x_mask
    signs = 1.0 - 2.0 * bit_parity(source & phase_mask)
    out = (1j**n_y) * signs * s.amplitudes[source]
    return StateVector(n, out)


def expectation(h: PauliSum, s: StateVector) -> float:
    """<s|H|s> for a real-weighted PauliSum, in the coefficients' units."""
    if h.n_qubits != s.n_qubits:
        raise UsageError(
            f"operator acts on {h.n_qubits} qubits, state has {s.n_qubits}"
        )
    norm_sq = s.norm_squared()
    if abs(norm_sq - 1.0) > 1e-9:
        raise UsageError(f"state is not normalized: |s|^2 = {norm_sq!r}")
    value = 0.0 + 0.0j
    for coeff, string in h.terms:
        value += coeff * np.vdot(s.amplitudes, apply_pauli_string(string, s).amplitudes)
    return float(value.real)


def to_dense_matrix(h: PauliSum) -> np.ndarray:
    """Dense 2**n x 2**n Hermitian matrix of the sum (n <= 12)."""
    if h.n_qubits > MAX_DENSE_QUBITS:
        raise UsageError(
            f"dense expansion limited to {MAX_DENSE_QUBITS} qubits, "
            f"got {h.n_qubits}"
        )
    dim = 2**h.n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for coeff, string in h.terms:
        term = np.array([[coeff]], dtype=complex)
        for ch in string.factors:
            term = np.kron(term, _FACTOR_MATRICES[ch])
        out += term
    return out


def pauli_sum_to_dict(h: PauliSum) -> dict:
    """JSON-ready form: {"n_qubits": n, "terms": [{"coeff": c, "paulis": "ZI"}]}."""
    return {
        "n_qubits": h.n_qubits,
        "terms": [{"coeff": c, "paulis": p.factors} for c, p in h.terms],
    }


def pauli_sum_from_dict(data: dict) -> PauliSum:
    """Inverse of `pauli_sum_to_dict`; raises UsageError on malformed input."""
    try:
        n_qubits = int(data["n_qubits"])
        terms = [(float(t["coeff"]), str(t["paulis"])) for t in data["terms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed Hamiltonian document: {exc}") from exc
    return PauliSum.from_terms(n_qubits, terms)
