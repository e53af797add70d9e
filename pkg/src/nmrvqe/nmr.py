"""Two- and three-spin NMR analysis: line-position parameter extraction,
spin Hamiltonians as Pauli sums, and closed-form eigensystems.

Spin-1/2 conventions: |0> is the low-energy alpha state with I_z
eigenvalue +1/2, so each Larmor term contributes -(nu/2) Z and each
scalar coupling J contributes (J/4)(XX + YY + ZZ) on the coupled pair.
All frequencies and energies are in Hz.

Line labels follow the usual descending-frequency numbering: four lines
f1..f4 for an AB pattern, eight evident lines f1..f8 for AB2 (the weak
ninth combination line is not used by the extraction formulas).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, UsageError
from .pauli import PauliSum, to_dense_matrix

SYSTEM_AB = "AB"
SYSTEM_AB2 = "AB2"

_LINE_COUNT = {SYSTEM_AB: 4, SYSTEM_AB2: 8}

# Default tolerance (Hz) when cross-checking redundant line spacings.
J_CONSISTENCY_TOL = 0.02


@dataclass(frozen=True)
class SpectrumLines:
    """Measured line positions in Hz, ordered from highest to lowest.

    Ties are allowed (doublets collapse when J = 0) but any increase is
    rejected: the extraction formulas assume the descending labeling.
    """

    system: str
    frequencies: tuple[float, ...]

    def __post_init__(self):
        if self.system not in _LINE_COUNT:
            raise UsageError(f"unknown spin system {self.system!r}")
        freqs = tuple(float(f) for f in self.frequencies)
        expected = _LINE_COUNT[self.system]
        if len(freqs) != expected:
            raise UsageError(
                f"{self.system} spectrum needs {expected} lines, "
                f"got {len(freqs)}"
            )
        for a, b in zip(freqs, freqs[1:]):
            if b > a:
                raise UsageError(
                    f"lines must be in descending order: {b} follows {a}"
                )
        object.__setattr__(self, "frequencies", freqs)


@dataclass(frozen=True)
class SpinSystemParams:
    """Larmor frequencies and coupling of an AB or AB2 system, with the
    derived block-diagonalization quantities for its kind."""

    kind: str
    nu_a: float
    nu_b: float
    j_ab: float
    c_value: float | None = None
    theta_mix: float | None = None
    c_plus: float | None = None
    c_minus: float | None = None
    theta_plus: float | None = None
    theta_minus: float | None = None

    def __post_init__(self):
        if self.kind not in (SYSTEM_AB, SYSTEM_AB2):
            raise UsageError(f"unknown spin system {self.kind!r}")
        if self.kind == SYSTEM_AB and self.c_value is not None:
            expected = 0.5 * math.hypot(self.j_ab, self.nu_a - self.nu_b)
            if abs(self.c_value - expected) > 1e-9 * max(1.0, abs(expected)):
                raise UsageError(
                    f"inconsistent C: stored {self.c_value!r}, "
                    f"computed {expected!r}"
                )


def ab_params(nu_a: float, nu_b: float, j_ab: float) -> SpinSystemParams:
    """AB parameter bundle with C and the mixing angle filled in."""
    delta = nu_a - nu_b
    c_value = 0.5 * math.hypot(j_ab, delta)
    theta = None
    if delta != 0.0 or j_ab != 0.0:
        theta = 0.5 * math.atan2(j_ab, delta)
    return SpinSystemParams(
        SYSTEM_AB, float(nu_a), float(nu_b), float(j_ab),
        c_value=c_value, theta_mix=theta,
    )


def ab2_params(nu_a: float, nu_b: float, j_ab: float) -> SpinSystemParams:
    """AB2 parameter bundle with both sector constants and angles."""
    d_plus = nu_a - nu_b - j_ab / 2.0
    d_minus = nu_a - nu_b + j_ab / 2.0
    root2_j = math.sqrt(2.0) * j_ab
    return SpinSystemParams(
        SYSTEM_AB2, float(nu_a), float(nu_b), float(j_ab),
        c_plus=0.5 * math.hypot(d_plus, root2_j),
        c_minus=0.5 * math.hypot(d_minus, root2_j),
        theta_plus=0.5 * math.atan2(root2_j, d_plus),
        theta_minus=0.5 * math.atan2(root2_j, d_minus),
    )


def extract_ab_params(lines: SpectrumLines,
                      consistency_tol: float = J_CONSISTENCY_TOL) -> SpinSystemParams:
    """Solve the four-line AB pattern for (nu_A, nu_B, J).

    The two J readings (f1-f2 and f3-f4) and the two C readings are
    averaged; they must agree within `consistency_tol`. nu_A >= nu_B by
    convention, since the line positions fix only |nu_A - nu_B|.
    """
    if lines.system != SYSTEM_AB:
        raise UsageError(f"expected an AB spectrum, got {lines.system}")
    f1, f2, f3, f4 = lines.frequencies
    j_upper = f1 - f2
    j_lower = f3 - f4
    if abs(j_upper - j_lower) > consistency_tol:
        raise DataError(
            f"inconsistent J readings: f1-f2 = {j_upper!r} Hz vs "
            f"f3-f4 = {j_lower!r} Hz (tolerance {consistency_tol} Hz)"
        )
    j_ab = 0.5 * (j_upper + j_lower)
    c_value = 0.25 * ((f1 - f3) + (f2 - f4))
    total = f1 + f4
    discriminant = 4.0 * c_value**2 - j_ab**2
    if discriminant < 0.0:
        if discriminant < -1e-12 * max(1.0, c_value**2):
            raise DataError(
                f"lines violate 2C >= J: C = {c_value!r} Hz, J = {j_ab!r} Hz"
            )
        discriminant = 0.0
    delta = math.sqrt(discriminant)
    return ab_params((total + delta) / 2.0, (total - delta) / 2.0, j_ab)


def extract_ab2_params(lines: SpectrumLines) -> SpinSystemParams:
    """Read (nu_A, nu_B, J) off the eight-line AB2 pattern:
    nu_A = f3, nu_B = (f5 + f7)/2, J = ((f1 - f4) + (f6 - f8))/3."""
    if lines.system != SYSTEM_AB2:
        raise UsageError(f"expected an AB2 spectrum, got {lines.system}")
    f = lines.frequencies
    nu_a = f[2]
    nu_b = (f[4] + f[6]) / 2.0
    j_ab = ((f[0] - f[3]) + (f[5] - f[7])) / 3.0
    return ab2_params(nu_a, nu_b, j_ab)


def ab_mixing_angle(p: SpinSystemParams) -> float:
    """Angle diagonalizing the AB single-flip block: tan(2t) = J / (nu_A - nu_B),
    taken as t = atan2(J, nu_A - nu_B) / 2 so nu_A = nu_B stays defined."""
    if p.kind != SYSTEM_AB:
        raise UsageError(f"mixing angle applies to AB systems, got {p.kind}")
    delta = p.nu_a - p.nu_b
    if delta == 0.0 and p.j_ab == 0.0:
        raise UsageError("mixing angle undefined: nu_A = nu_B and J = 0")
    return 0.5 * math.atan2(p.j_ab, delta)


def ab_forward_lines(p: SpinSystemParams) -> SpectrumLines:
    """Synthesize the four AB line positions from parameters (J >= 0):
    f1,2 = (nu_A+nu_B)/2 + C +/- J/2 and f3,4 = (nu_A+nu_B)/2 - C +/- J/2."""
    if p.kind != SYSTEM_AB:
        raise UsageError(f"expected AB parameters, got {p.kind}")
    mid = (p.nu_a + p.nu_b) / 2.0
    c = p.c_value if p.c_value is not None else 0.5 * math.hypot(
        p.j_ab, p.nu_a - p.nu_b)
    half_j = p.j_ab / 2.0
    return SpectrumLines(
        SYSTEM_AB,
        (mid + c + half_j, mid + c - half_j, mid - c + half_j, mid - c - half_j),
    )


def _single(op: str, qubit: int, n: int) -> str:
    return "I" * qubit + op + "I" * (n - qubit - 1)


def _pair(op: str, i: int, j: int, n: int) -> str:
    chars = ["I"] * n
    chars[i] = op
    chars[j] = op
    return "".join(chars)


def build_general_hamiltonian(nus, couplings) -> PauliSum:
    """Spin Hamiltonian -sum_i nu_i I_z(i) + sum_{i<j} J_ij I(i).I(j)
    as a Pauli sum: -(nu_i/2) Z_i and (J_ij/4)(X_iX_j + Y_iY_j + Z_iZ_j).

    Zero-coefficient terms are dropped, so zero input gives an empty sum.
    """
    nus = np.asarray(nus, dtype=float)
    couplings = np.asarray(couplings, dtype=float)
    n = nus.size
    if n < 1:
        raise UsageError("need at least one spin")
    if couplings.shape != (n, n):
        raise UsageError(
            f"couplings must be {n}x{n}, got shape {couplings.shape}"
        )
    if np.max(np.abs(couplings - couplings.T)) > 1e-12 * max(
            1.0, float(np.max(np.abs(couplings)))):
        raise UsageError("coupling matrix must be symmetric")
    if np.max(np.abs(np.diag(couplings))) != 0.0:
        raise UsageError("coupling matrix must have a zero diagonal")

    terms: list[tuple[float, str]] = []
    for i in range(n):
        if nus[i] != 0.0:
            terms.append((-nus[i] / 2.0, _single("Z", i, n)))
    for i in range(n):
        for j in range(i + 1, n):
            if couplings[i, j] != 0.0:
                quarter = couplings[i, j] / 4.0
                for op in "XYZ":
                    terms.append((quarter, _pair(op, i, j, n)))
    return PauliSum.from_terms(n, terms)


def build_ab_hamiltonian(p: SpinSystemParams) -> PauliSum:
    """Two-spin Hamiltonian: qubit 0 is nucleus A, qubit 1 nucleus B."""
    if p.kind != SYSTEM_AB:
        raise UsageError(f"expected AB parameters, got {p.kind}")
    couplings = np.array([[0.0, p.j_ab], [p.j_ab, 0.0]])
    return build_general_hamiltonian([p.nu_a, p.nu_b], couplings)


def build_ab2_hamiltonian(p: SpinSystemParams) -> PauliSum:
    """Three-spin Hamiltonian: A on qubit 0, the equivalent B pair on
    qubits 1 and 2, coupled to A only."""
    if p.kind != SYSTEM_AB2:
        raise UsageError(f"expected AB2 parameters, got {p.kind}")
    couplings = np.array([
        [0.0, p.j_ab, p.j_ab],
        [p.j_ab, 0.0, 0.0],
        [p.j_ab, 0.0, 0.0],
    ])
    return build_general_hamiltonian([p.nu_a, p.nu_b, p.nu_b], couplings)


@dataclass(frozen=True)
class AnalyticLevel:
    label: str
    energy: float
    state: np.ndarray  # coefficients over the computational basis

    def __post_init__(self):
        state = np.asarray(self.state, dtype=complex)
        norm = float(np.linalg.norm(state))
        if abs(norm - 1.0) > 1e-10:
            raise UsageError(f"level state not normalized: |v| = {norm!r}")
        object.__setattr__(self, "state", state)


@dataclass(frozen=True)
class AnalyticSpectrum:
    """Closed-form eigenpairs, sorted by ascending energy."""

    levels: tuple[AnalyticLevel, ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.levels, key=lambda lv: lv.energy))
        object.__setattr__(self, "levels", ordered)

    def energies(self) -> np.ndarray:
        return np.array([lv.energy for lv in self.levels])

    def states(self) -> np.ndarray:
        return np.column_stack([lv.state for lv in self.levels])


def ab_analytic_spectrum(p: SpinSystemParams) -> AnalyticSpectrum:
    """Four AB eigenpairs.

    |00> and |11> are exact eigenstates at -+(nu_A+nu_B)/2 + J/4; the
    single-flip block splits into -J/4 -+ C with eigenvectors rotated by
    the mixing angle. Solving the block directly gives
    cos(t)|01> - sin(t)|10> for the lower level and
    sin(t)|01> + cos(t)|10> for the upper one.
    """
    if p.kind != SYSTEM_AB:
        raise UsageError(f"expected AB parameters, got {p.kind}")
    c = p.c_value if p.c_value is not None else 0.5 * math.hypot(
        p.j_ab, p.nu_a - p.nu_b)
    theta = p.theta_mix if p.theta_mix is not None else 0.0
    half_sum = (p.nu_a + p.nu_b) / 2.0
    quarter_j = p.j_ab / 4.0
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    levels = (
        AnalyticLevel("|00>", -half_sum + quarter_j, [1, 0, 0, 0]),
        AnalyticLevel("cos(t)|01> - sin(t)|10>", -quarter_j - c,
                      [0, cos_t, -sin_t, 0]),
        AnalyticLevel("sin(t)|01> + cos(t)|10>", -quarter_j + c,
                      [0, sin_t, cos_t, 0]),
        AnalyticLevel("|11>", half_sum + quarter_j, [0, 0, 0, 1]),
    )
    return AnalyticSpectrum(levels)


_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _basis8(*weighted) -> np.ndarray:
    state = np.zeros(8)
    for weight, index in weighted:
        state[index] = weight
    return state


def ab2_analytic_spectrum(p: SpinSystemParams) -> AnalyticSpectrum:
    """Eight AB2 eigenpairs from the symmetrized-basis block structure.

    The total-spin-projection sectors contain two exact product levels
    (|000>, |111>), two antisymmetric B-pair levels at -+nu_A/2, and two
    2x2 blocks solved by the theta_plus / theta_minus rotations. The
    rotation is applied so that each block's upper level carries
    sin(t) on the symmetric-pair side, which is what diagonalizing the
    blocks of the symmetrized matrix yields.
    """
    if p.kind != SYSTEM_AB2:
        raise UsageError(f"expected AB2 parameters, got {p.kind}")
    nu_a, nu_b, j = p.nu_a, p.nu_b, p.j_ab
    c_plus, c_minus = p.c_plus, p.c_minus
    mu_plus = 0.5 * (-nu_b - j / 2.0)
    mu_minus = 0.5 * (nu_b - j / 2.0)
    cp, sp = math.cos(p.theta_plus), math.sin(p.theta_plus)
    cm, sm = math.cos(p.theta_minus), math.sin(p.theta_minus)

    sym_01 = [(_INV_SQRT2, 1), (_INV_SQRT2, 2)]        # (|001> + |010>)/sqrt2
    asym_01 = [(_INV_SQRT2, 1), (-_INV_SQRT2, 2)]      # (|001> - |010>)/sqrt2
    sym_10 = [(_INV_SQRT2, 5), (_INV_SQRT2, 6)]        # (|101> + |110>)/sqrt2
    asym_10 = [(_INV_SQRT2, 5), (-_INV_SQRT2, 6)]      # (|101> - |110>)/sqrt2

    levels = (
        AnalyticLevel("|000>", -nu_a / 2.0 - nu_b + j / 2.0, _basis8((1.0, 0))),
        AnalyticLevel("antisym(|001>,|010>)", -nu_a / 2.0, _basis8(*asym_01)),
        AnalyticLevel(
            "sin(t+)sym(|001>,|010>) + cos(t+)|100>", mu_plus + c_plus,
            _basis8(*[(sp * w, k) for w, k in sym_01], (cp, 4)),
        ),
        AnalyticLevel(
            "cos(t+)sym(|001>,|010>) - sin(t+)|100>", mu_plus - c_plus,
            _basis8(*[(cp * w, k) for w, k in sym_01], (-sp, 4)),
        ),
        AnalyticLevel(
            "sin(t-)|011> + cos(t-)sym(|101>,|110>)", mu_minus + c_minus,
            _basis8((sm, 3), *[(cm * w, k) for w, k in sym_10]),
        ),
        AnalyticLevel(
            "cos(t-)|011> - sin(t-)sym(|101>,|110>)", mu_minus - c_minus,
            _basis8((cm, 3), *[(-sm * w, k) for w, k in sym_10]),
        ),
        AnalyticLevel("antisym(|101>,|110>)", nu_a / 2.0, _basis8(*asym_10)),
        AnalyticLevel("|111>", nu_a / 2.0 + nu_b + j / 2.0, _basis8((1.0, 7))),
    )
    return AnalyticSpectrum(levels)


def symmetrized_basis() -> np.ndarray:
    """Orthonormal 8x8 basis change from the computational basis to the
    spin-projection-sorted basis (columns, in sector order):
    |000>; antisym and sym B-pair states with |100>; |011> with the sym
    and antisym flipped-pair states; |111>."""
    u = np.zeros((8, 8))
    u[0, 0] = 1.0
    u[1, 1], u[2, 1] = _INV_SQRT2, -_INV_SQRT2
    u[1, 2], u[2, 2] = _INV_SQRT2, _INV_SQRT2
    u[4, 3] = 1.0
    u[3, 4] = 1.0
    u[5, 5], u[6, 5] = _INV_SQRT2, _INV_SQRT2
    u[5, 6], u[6, 6] = _INV_SQRT2, -_INV_SQRT2
    u[7, 7] = 1.0
    return u


def ab2_symmetrized_matrix(p: SpinSystemParams) -> np.ndarray:
    """Conjugate the dense AB2 Hamiltonian into the symmetrized basis.

    The result is block diagonal across spin-projection sectors: two 1x1
    product levels, two decoupled -+nu_A/2 entries, and two 2x2 blocks
    whose off-diagonal coupling is J/sqrt(2).
    """
    dense = to_dense_matrix(build_ab2_hamiltonian(p))
    u = symmetrized_basis()
    return u.T @ dense.real @ u


def ab2_transition_lines(p: SpinSystemParams) -> SpectrumLines:
    """Synthesize the eight evident AB2 lines from level differences.

    Uses the standard descending assignment of allowed transitions
    between adjacent spin-projection sectors (the weak ninth combination
    line is omitted). Valid in the usual regime nu_A > nu_B, J > 0 with
    moderate coupling; the descending order is checked on construction.
    """
    if p.kind != SYSTEM_AB2:
        raise UsageError(f"expected AB2 parameters, got {p.kind}")
    nu_a, nu_b, j = p.nu_a, p.nu_b, p.j_ab
    e_bottom = -nu_a / 2.0 - nu_b + j / 2.0
    e_top = nu_a / 2.0 + nu_b + j / 2.0
    mu_plus = 0.5 * (-nu_b - j / 2.0)
    mu_minus = 0.5 * (nu_b - j / 2.0)
    e_p_hi, e_p_lo = mu_plus + p.c_plus, mu_plus - p.c_plus
    e_m_hi, e_m_lo = mu_minus + p.c_minus, mu_minus - p.c_minus
    return SpectrumLines(SYSTEM_AB2, (
        e_top - e_m_lo,     # f1
        e_m_hi - e_p_lo,    # f2
        nu_a,               # f3: the antisym-to-antisym transition
        e_p_hi - e_bottom,  # f4
        e_m_hi - e_p_hi,    # f5
        e_top - e_m_hi,     # f6
        e_m_lo - e_p_lo,    # f7
        e_p_lo - e_bottom,  # f8
    ))


def spectrum_lines_to_dict(lines: SpectrumLines) -> dict:
    return {"system": lines.system, "lines_hz": list(lines.frequencies)}


def spectrum_lines_from_dict(data: dict) -> SpectrumLines:
    try:
        system = str(data["system"])
        freqs = [float(f) for f in data["lines_hz"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed spectrum document: {exc}") from exc
    return SpectrumLines(system, tuple(freqs))


def params_to_dict(p: SpinSystemParams) -> dict:
    """JSON form mirroring the dataclass fields; unset extras omitted."""
    out = {"kind": p.kind, "nu_a": p.nu_a, "nu_b": p.nu_b, "j_ab": p.j_ab}
    for name in ("c_value", "theta_mix", "c_plus", "c_minus",
                 "theta_plus", "theta_minus"):
        value = getattr(p, name)
        if value is not None:
            out[name] = value
    return out


def params_from_dict(data: dict) -> SpinSystemParams:
    try:
        kind = str(data["kind"])
        nu_a = float(data["nu_a"])
        nu_b = float(data["nu_b"])
        j_ab = float(data["j_ab"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed parameter document: {exc}") from exc
    if kind == SYSTEM_AB:
        return ab_params(nu_a, nu_b, j_ab)
    if kind == SYSTEM_AB2:
        return ab2_params(nu_a, nu_b, j_ab)
    raise UsageError(f"unknown spin system {kind!r}")
