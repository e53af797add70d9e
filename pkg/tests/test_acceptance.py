"""Acceptance suite: one test per criterion, each printing a pass/fail
line (run with `pytest tests/test_acceptance.py -s` to see them inline).

Expected values and tolerances are pinned here; derived numbers come
from the independent dense/closed-form oracles in conftest.
"""

import math
import time

import numpy as np

from nmrvqe.ansatz import AnsatzSpec
from nmrvqe.eigen import eigensystem
from nmrvqe.nmr import (
    SpectrumLines,
    ab2_analytic_spectrum,
    ab2_params,
    ab2_symmetrized_matrix,
    ab2_transition_lines,
    ab_analytic_spectrum,
    ab_forward_lines,
    ab_params,
    build_ab2_hamiltonian,
    build_ab_hamiltonian,
    extract_ab2_params,
    extract_ab_params,
    symmetrized_basis,
)
from nmrvqe.optimize import OptimizerOptions, parameter_shift_gradient
from nmrvqe.pauli import PauliSum, expectation, to_dense_matrix
from nmrvqe.pipeline import comparison_report, resolve_problem
from nmrvqe.statevector import run_circuit, sample_expectation_stats
from nmrvqe.vqe import vqe_minimize

from conftest import (
    assert_within_quoted,
    random_circuit,
    random_hermitian,
    random_pauli_sum,
)

AB_LINES = SpectrumLines("AB", (2094.84, 2093.20, 2061.80, 2060.16))
AB2_LINES = SpectrumLines(
    "AB2", (1502.9, 1498.0, 1492.6, 1487.8, 1484.6, 1484.2, 1479.1, 1474.4)
)


def _report(criterion: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] {criterion}: {status} ({detail})")
    assert ok, f"{criterion}: {detail}"


def test_criterion_1_ab2_end_to_end():
    started = time.perf_counter()
    params = extract_ab2_params(AB2_LINES)
    hamiltonian = build_ab2_hamiltonian(params)
    result = vqe_minimize(hamiltonian, AnsatzSpec.ab2())
    analytic = float(ab2_analytic_spectrum(params).energies()[0])
    elapsed = time.perf_counter() - started

    ok = (
        params.nu_a == 1492.6
        and abs(result.ground_energy - analytic) <= 0.05
        and abs(result.ground_energy - (-2224.04)) <= 0.05
        and elapsed < 5.0
    )
    _report(
        "criterion 1 (AB2 end-to-end)",
        ok,
        f"nu_a={params.nu_a}, vqe={result.ground_energy:.4f} Hz, "
        f"analytic={analytic:.4f} Hz, quoted=-2224.04 Hz, {elapsed:.2f}s",
    )


def test_criterion_2_ab_end_to_end():
    started = time.perf_counter()
    params = extract_ab_params(AB_LINES)
    hamiltonian = build_ab_hamiltonian(params)
    result = vqe_minimize(hamiltonian, AnsatzSpec.ab())
    elapsed = time.perf_counter() - started

    # Extraction against the quoted two-decimal reference values. The raw
    # deltas are 0.0074 Hz (nu_A) and 0.0104 Hz (nu_B): the inputs are
    # lines rounded to 0.01 Hz, so agreement is checked at that quoted
    # precision (one unit in the last digit).
    assert abs(params.j_ab - 1.64) < 1e-9
    assert_within_quoted(params.nu_a, 2094.007, decimals=2)
    assert_within_quoted(params.nu_b, 2060.99, decimals=2)

    gap = abs(result.ground_energy - result.oracle_energy)
    reported = -2077.907
    relative_to_reported = abs(result.ground_energy - reported) / abs(reported)

    # The 0.82 Hz discrepancy against the reported value is surfaced by
    # the comparison report, not hidden.
    problem = resolve_problem(lines=AB_LINES)
    report = comparison_report(problem, result, [reported])
    reference_delta = report["deltas"]["reference_minus_oracle_hz"][0]

    ok = (
        gap <= 1e-3
        and abs(result.oracle_energy - (-2077.0885)) < 0.01
        and relative_to_reported <= 1e-3
        and abs(abs(reference_delta) - 0.817) <= 0.01
        and elapsed < 5.0
    )
    _report(
        "criterion 2 (AB end-to-end)",
        ok,
        f"J={params.j_ab:.6f} Hz, nu_a={params.nu_a:.4f}, "
        f"nu_b={params.nu_b:.4f}, vqe-oracle={gap:.2e} Hz, "
        f"reported-delta={reference_delta:.3f} Hz, {elapsed:.2f}s",
    )


def test_criterion_3_matrix_fidelity():
    rng = np.random.default_rng(3)
    worst_ab = 0.0
    for _ in range(50):
        nu_a = float(rng.uniform(10, 3000))
        nu_b = float(rng.uniform(10, nu_a))
        j = float(rng.uniform(0, 100))
        dense = to_dense_matrix(build_ab_hamiltonian(ab_params(nu_a, nu_b, j)))
        expected = np.array([
            [-(nu_a + nu_b) / 2 + j / 4, 0, 0, 0],
            [0, -(nu_a - nu_b) / 2 - j / 4, j / 2, 0],
            [0, j / 2, (nu_a - nu_b) / 2 - j / 4, 0],
            [0, 0, 0, (nu_a + nu_b) / 2 + j / 4],
        ])
        worst_ab = max(worst_ab, float(np.max(np.abs(dense - expected))))

    basis = symmetrized_basis()
    orthonormality = float(np.max(np.abs(basis @ basis.T - np.eye(8))))

    worst_block = 0.0
    for _ in range(50):
        nu_a = float(rng.uniform(10, 3000))
        nu_b = float(rng.uniform(10, 3000))
        j = float(rng.uniform(0, 100))
        p = ab2_params(nu_a, nu_b, j)
        m = ab2_symmetrized_matrix(p)
        expected = np.diag([
            -nu_a / 2 - nu_b + j / 2, -nu_a / 2, -nu_a / 2,
            nu_a / 2 - nu_b - j / 2, -nu_a / 2 + nu_b - j / 2,
            nu_a / 2, nu_a / 2, nu_a / 2 + nu_b + j / 2,
        ])
        coupling = j / math.sqrt(2.0)
        for a, b in ((2, 3), (3, 2), (4, 5), (5, 4)):
            expected[a, b] = coupling
        worst_block = max(worst_block, float(np.max(np.abs(m - expected))))

    ok = worst_ab < 1e-12 and worst_block < 1e-10 and orthonormality < 1e-12
    _report(
        "criterion 3 (matrix fidelity)",
        ok,
        f"two-spin max dev {worst_ab:.2e}, symmetrized max dev "
        f"{worst_block:.2e}, basis orthonormality {orthonormality:.2e}",
    )


def test_criterion_4_analytic_vs_oracle():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(1000):
        delta = float(rng.uniform(0.1, 1e3))
        j = float(rng.uniform(0.0, 2.0 * delta))
        nu_b = float(rng.uniform(10.0, 3000.0))
        p = ab_params(nu_b + delta, nu_b, j)
        analytic = ab_analytic_spectrum(p).energies()
        oracle, _ = eigensystem(to_dense_matrix(build_ab_hamiltonian(p)))
        rel = np.max(np.abs(analytic - oracle) / (1.0 + np.abs(oracle)))
        worst = max(worst, float(rel))
    for _ in range(1000):
        delta = float(rng.uniform(0.1, 1e3))
        j = float(rng.uniform(0.0, 2.0 * delta))
        nu_b = float(rng.uniform(10.0, 3000.0))
        p = ab2_params(nu_b + delta, nu_b, j)
        analytic = ab2_analytic_spectrum(p).energies()
        oracle, _ = eigensystem(to_dense_matrix(build_ab2_hamiltonian(p)))
        rel = np.max(np.abs(analytic - oracle) / (1.0 + np.abs(oracle)))
        worst = max(worst, float(rel))
    ok = worst < 1e-8
    _report(
        "criterion 4 (analytic vs oracle, 1000 draws each)",
        ok,
        f"worst relative energy deviation {worst:.2e}",
    )


def test_criterion_5_round_trip_extraction():
    rng = np.random.default_rng(5)
    worst_ab = 0.0
    for _ in range(1000):
        delta = float(rng.uniform(0.1, 1e3))
        j = float(rng.uniform(0.0, 2.0 * delta))
        nu_b = float(rng.uniform(10.0, 3000.0))
        p = ab_params(nu_b + delta, nu_b, j)
        q = extract_ab_params(ab_forward_lines(p))
        for got, want in ((q.nu_a, p.nu_a), (q.nu_b, p.nu_b),
                          (q.j_ab, p.j_ab)):
            worst_ab = max(worst_ab,
                           abs(got - want) / max(1.0, abs(want)))

    worst_ab2 = 0.0
    for _ in range(1000):
        delta = float(rng.uniform(2.0, 300.0))
        j = float(rng.uniform(0.01, delta / 2.0))
        nu_b = float(rng.uniform(50.0, 3000.0))
        p = ab2_params(nu_b + delta, nu_b, j)
        q = extract_ab2_params(ab2_transition_lines(p))
        for got, want in ((q.nu_a, p.nu_a), (q.nu_b, p.nu_b),
                          (q.j_ab, p.j_ab)):
            worst_ab2 = max(worst_ab2,
                            abs(got - want) / max(1.0, abs(want)))

    ok = worst_ab < 1e-9 and worst_ab2 < 1e-6
    _report(
        "criterion 5 (round-trip extraction, 1000 draws each)",
        ok,
        f"AB worst {worst_ab:.2e} (tol 1e-9), "
        f"AB2 worst {worst_ab2:.2e} (tol 1e-6)",
    )


def test_criterion_6_variational_bound():
    rng = np.random.default_rng(6)
    opts = OptimizerOptions(max_iterations=40, tolerance=1e-8)
    runs = 0
    worst_violation = -np.inf
    for _ in range(200):
        n = int(rng.integers(1, 4))
        h = random_pauli_sum(rng, n, max_terms=8)
        layers = int(rng.integers(1, 3))
        result = vqe_minimize(h, AnsatzSpec.layered(n, layers), opts)
        slack = 1e-9 * max(1.0, abs(result.oracle_energy))
        low = float(np.min(result.trace.objectives()))
        worst_violation = max(worst_violation,
                              result.oracle_energy - slack - low)
        runs += 1
    ok = runs >= 200 and worst_violation <= 0.0
    _report(
        "criterion 6 (variational bound over random VQE runs)",
        ok,
        f"{runs} runs, worst bound margin {-worst_violation:.2e} Hz",
    )


def test_criterion_7_gradient_correctness():
    rng = np.random.default_rng(7)
    h_step = 1e-5
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 4))
        circuit = random_circuit(rng, n, n_free=int(rng.integers(1, 7)))
        hamiltonian = random_pauli_sum(rng, n, max_terms=6)
        theta = rng.uniform(-np.pi, np.pi, size=circuit.n_parameters)

        def objective(t):
            return expectation(hamiltonian, run_circuit(circuit, t))

        grad = parameter_shift_gradient(objective, theta)
        for i in range(theta.size):
            bump = np.zeros_like(theta)
            bump[i] = h_step
            fd = (objective(theta + bump) - objective(theta - bump)) / (
                2.0 * h_step)
            worst = max(worst, abs(float(grad[i]) - fd))
    ok = worst < 1e-5
    _report(
        "criterion 7 (parameter-shift vs central differences, 50 circuits)",
        ok,
        f"worst absolute deviation {worst:.2e}",
    )


def test_criterion_8_shot_statistics():
    rng = np.random.default_rng(8)
    shots = 10**6
    worst_z = 0.0
    reproducible = True
    for case in range(100):
        n = int(rng.integers(1, 4))
        circuit = random_circuit(rng, n, n_free=int(rng.integers(0, 5)))
        hamiltonian = random_pauli_sum(rng, n, max_terms=6)
        theta = rng.uniform(-np.pi, np.pi, size=circuit.n_parameters)
        exact = expectation(hamiltonian, run_circuit(circuit, theta))
        seed = 80_000 + case
        value, stderr = sample_expectation_stats(
            circuit, theta, hamiltonian, shots, seed)
        again, _ = sample_expectation_stats(
            circuit, theta, hamiltonian, shots, seed)
        reproducible = reproducible and (value == again)
        deviation = abs(value - exact)
        if stderr > 0.0:
            worst_z = max(worst_z, deviation / stderr)
        else:
            worst_z = max(worst_z, 0.0 if deviation == 0.0 else np.inf)
    ok = worst_z <= 4.0 and reproducible
    _report(
        "criterion 8 (shot-mode statistics, 100 cases at 1e6 shots)",
        ok,
        f"worst |z| {worst_z:.2f} (bound 4), bit-identical={reproducible}",
    )


def test_criterion_9_oracle_self_consistency():
    rng = np.random.default_rng(9)
    worst = 0.0
    for dim in list(range(2, 17)) * 3:
        m = random_hermitian(rng, dim)
        values, vectors = eigensystem(m)
        scale = float(np.linalg.norm(m))
        rebuilt = vectors @ np.diag(values) @ vectors.conj().T
        worst = max(worst, float(np.max(np.abs(rebuilt - m))) / scale)
    ok = worst < 1e-8
    _report(
        "criterion 9 (oracle reconstruction residual up to 16x16)",
        ok,
        f"worst residual {worst:.2e} of matrix norm",
    )
