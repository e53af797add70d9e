"""Self-contained Hermitian eigensolver used as the package's ground truth.

A Hermitian H = A + iB is embedded into the real symmetric matrix
[[A, -B], [B, A]], diagonalized by cyclic Jacobi rotations, and the
doubled spectrum is collapsed back: each eigenvalue of H appears twice
in the embedding, and a real eigenvector [x; y] maps to x + iy.

No library eigensolver is involved anywhere in this module; it stays an
independent check on the variational and analytic paths.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericalError, UsageError
from .pauli import PauliSum, to_dense_matrix

MAX_DIMENSION = 4096
_MAX_SWEEPS = 100
# Aim well below the 1e-12 contract; quadratic convergence makes the
# extra sweeps cheap and keeps the doubled-spectrum pairs tight.
_TARGET_FACTOR = 1e-14
_CONTRACT_FACTOR = 1e-12


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def _jacobi_real_symmetric(
    a: np.ndarray, sweep_offs: list | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi on a real symmetric matrix; returns (diag, rotations).

    `sweep_offs`, when given, collects the off-diagonal Frobenius norm
    observed at the start of each sweep.
    """
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.sqrt(np.sum(a * a))) or 1.0
    target = _TARGET_FACTOR * scale
    skip = target / max(1, n)
    previous_off = np.inf
    for _ in range(_MAX_SWEEPS):
        off = _off_norm(a)
        if sweep_offs is not None:
            sweep_offs.append(off)
        if off <= target:
            break
        if off >= previous_off:
            break  # stalled at the floating-point floor
        previous_off = off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                # Stable rotation annihilating a[p, q].
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                if tau == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    if _off_norm(a) > _CONTRACT_FACTOR * scale:
        raise NumericalError(
            f"Jacobi sweeps did not converge: off-diagonal norm "
            f"{_off_norm(a):.3e} vs bound {_CONTRACT_FACTOR * scale:.3e}"
        )
    return np.diag(a).copy(), v


def _validate_hermitian(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise UsageError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIMENSION:
        raise UsageError(
            f"dimension {m.shape[0]} exceeds the {MAX_DIMENSION} bound"
        )
    scale = max(1.0, float(np.max(np.abs(m))))
    if float(np.max(np.abs(m - m.conj().T))) > 1e-12 * scale:
        raise UsageError("matrix is not Hermitian")
    return m


def eigensystem(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a
    Hermitian matrix.

    Eigenvectors get a deterministic phase: the largest-magnitude
    component is made real and positive.
    """
    m = _validate_hermitian(m)
    n = m.shape[0]
    a = m.real
    b = m.imag
    embedded = np.block([[a, -b], [b, a]])
    values, vectors = _jacobi_real_symmetric(embedded)
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]

    eigenvalues = values[0::2].copy()
    scale = max(1.0, float(np.sqrt(np.sum(np.abs(m) ** 2))))
    group_tol = 1e-9 * scale

    eigenvectors = np.zeros((n, n), dtype=complex)
    out = 0
    start = 0
    while start < 2 * n:
        stop = start + 1
        while stop < 2 * n and values[stop] - values[stop - 1] <= group_tol:
            stop += 1
        size = stop - start
        if size % 2 != 0:
            # A doubled eigenvalue cannot form an odd group; widen it.
            stop += 1
            size += 1
        wanted = size // 2
        chosen: list[np.ndarray] = []
        for k in range(start, stop):
            candidate = vectors[:n, k] + 1j * vectors[n:, k]
            for prev in chosen:
                candidate = candidate - np.vdot(prev, candidate) * prev
            norm = float(np.linalg.norm(candidate))
            if norm > 1e-6:
                chosen.append(candidate / norm)
            if len(chosen) == wanted:
                break
        if len(chosen) != wanted:
            raise NumericalError(
                f"failed to extract {wanted} eigenvectors from a degenerate "
                f"group near {values[start]!r}"
            )
        for vec in chosen:
            peak = int(np.argmax(np.abs(vec)))
            phase = vec[peak] / abs(vec[peak])
            eigenvectors[:, out] = vec / phase
            out += 1
        start = stop

    residual = float(
        np.max(np.abs(m @ eigenvectors - eigenvectors * eigenvalues))
    )
    if residual > 1e-8 * scale:
        raise NumericalError(
            f"eigendecomposition residual {residual:.3e} exceeds "
            f"{1e-8 * scale:.3e}"
        )
    return eigenvalues, eigenvectors


def ground_energy(h: PauliSum) -> float:
    """Minimum eigenvalue of the dense expansion of a Pauli sum."""
    eigenvalues, _ = eigensystem(to_dense_matrix(h))
    return float(eigenvalues[0])


def ground_state(h: PauliSum) -> tuple[float, np.ndarray]:
    """Minimum eigenvalue and its eigenvector."""
    eigenvalues, eigenvectors = eigensystem(to_dense_matrix(h))
    return float(eigenvalues[0]), eigenvectors[:, 0].copy()


def ground_space(h: PauliSum, tol: float = 1e-9) -> tuple[float, np.ndarray]:
    """Minimum eigenvalue and the matrix of all eigenvectors within
    `tol * max(1, |E0|)` of it (columns), for degenerate ground levels."""
    eigenvalues, eigenvectors = eigensystem(to_dense_matrix(h))
    e0 = float(eigenvalues[0])
    width = tol * max(1.0, abs(e0))
    members = eigenvalues <= e0 + width
    return e0, eigenvectors[:, members].copy()
