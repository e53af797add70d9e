"""Nelder-Mead, parameter-shift gradients, and trace bookkeeping."""

import math

import numpy as np
import pytest

from nmrvqe.ansatz import AnsatzSpec, build_ansatz
from nmrvqe.errors import NumericalError, UsageError
from nmrvqe.nmr import ab_params, build_ab_hamiltonian
from nmrvqe.optimize import (
    OptimizerOptions,
    minimize,
    parameter_shift_gradient,
)
from nmrvqe.pauli import expectation
from nmrvqe.statevector import run_circuit

from conftest import random_circuit, random_pauli_sum


def quadratic_bowl(theta):
    return (theta[0] - 1.0) ** 2 + (theta[1] + 2.0) ** 2


class TestNelderMead:
    def test_quadratic_bowl(self):
        theta, value, trace = minimize(quadratic_bowl, [0.0, 0.0])
        assert value <= 1e-8
        np.testing.assert_allclose(theta, [1.0, -2.0], atol=1e-4)
        assert len(trace) >= 1

    def test_cosine_minimum(self):
        theta, value, _ = minimize(lambda t: math.cos(t[0]), [1.0])
        assert abs(value - (-1.0)) < 1e-6

    def test_reaches_ab_ground_energy(self):
        h = build_ab_hamiltonian(ab_params(2094.007, 2060.99, 1.64))
        circuit = build_ansatz(AnsatzSpec.ab())

        def objective(theta):
            return expectation(h, run_circuit(circuit, theta))

        _, value, _ = minimize(objective, [1.0, 1.0, 1.0, 1.0])
        assert abs(value - (-2077.0885)) < 1e-4

    def test_best_vertex_monotone(self, rng):
        for _ in range(10):
            a = rng.normal(size=(3, 3))
            a = a @ a.T + 0.5 * np.eye(3)
            b = rng.normal(size=3)

            def objective(theta):
                return float(theta @ a @ theta + b @ theta)

            _, _, trace = minimize(
                objective, rng.normal(size=3),
                OptimizerOptions(max_iterations=200, tolerance=1e-12),
            )
            best = trace.objectives()
            assert np.all(np.diff(best) <= 0.0)

    def test_deterministic_traces(self):
        opts = OptimizerOptions(max_iterations=60, tolerance=1e-12)
        run1 = minimize(quadratic_bowl, [3.0, 3.0], opts)
        run2 = minimize(quadratic_bowl, [3.0, 3.0], opts)
        assert run1[1] == run2[1]
        assert run1[2].records == run2[2].records

    def test_iteration_cap(self):
        opts = OptimizerOptions(max_iterations=5, tolerance=1e-30)
        _, _, trace = minimize(quadratic_bowl, [0.0, 0.0], opts)
        assert len(trace) == 5

    def test_nan_objective_reports_theta(self):
        def bad(theta):
            return float("nan") if theta[0] > 0.5 else float(theta[0] ** 2)

        with pytest.raises(NumericalError, match="theta"):
            minimize(bad, [0.4], OptimizerOptions(simplex_scale=0.5))


class TestParameterShiftGradient:
    def test_symmetry_maximum(self):
        # E(t) = <0|Ry(t)^ Z Ry(t)|0> = cos t; gradient at 0 vanishes.
        grad = parameter_shift_gradient(lambda t: math.cos(t[0]), [0.0])
        np.testing.assert_allclose(grad, [0.0], atol=1e-15)

    def test_quarter_turn(self):
        grad = parameter_shift_gradient(lambda t: math.cos(t[0]),
                                        [math.pi / 2])
        # Central-difference oracle at h = 1e-5 gives -1 to ~1e-11.
        assert abs(grad[0] - (-1.0)) < 1e-12

    def test_constant_objective(self):
        grad = parameter_shift_gradient(lambda t: 7.5, [0.3, -0.2, 1.0])
        np.testing.assert_array_equal(grad, [0.0, 0.0, 0.0])

    def test_matches_central_differences(self, rng):
        h_step = 1e-5
        for _ in range(25):
            n = int(rng.integers(1, 4))
            circuit = random_circuit(rng, n, n_free=int(rng.integers(1, 7)))
            hamiltonian = random_pauli_sum(rng, n, max_terms=5)
            theta = rng.uniform(-np.pi, np.pi, size=circuit.n_parameters)

            def objective(t):
                return expectation(hamiltonian, run_circuit(circuit, t))

            grad = parameter_shift_gradient(objective, theta)
            for i in range(theta.size):
                bump = np.zeros_like(theta)
                bump[i] = h_step
                fd = (objective(theta + bump) - objective(theta - bump)) / (
                    2 * h_step)
                assert abs(grad[i] - fd) < 1e-5


class TestGradientDescent:
    def test_quadratic_descent(self):
        opts = OptimizerOptions(method="param-shift-gd", step_size=0.2,
                                max_iterations=500, tolerance=1e-10)
        theta, value, trace = minimize(quadratic_bowl, [0.0, 0.0], opts)
        assert value < 1e-12
        np.testing.assert_allclose(theta, [1.0, -2.0], atol=1e-6)
        assert len(trace) >= 1

    def test_evaluation_counter_grows(self):
        opts = OptimizerOptions(method="param-shift-gd", step_size=0.1,
                                max_iterations=10, tolerance=1e-14)
        _, _, trace = minimize(quadratic_bowl, [2.0, 2.0], opts)
        evaluations = [r.evaluations for r in trace.records]
        assert all(b > a for a, b in zip(evaluations, evaluations[1:]))


class TestOptionsAndTrace:
    def test_option_validation(self):
        with pytest.raises(UsageError):
            OptimizerOptions(method="annealing")
        with pytest.raises(UsageError):
            OptimizerOptions(tolerance=0.0)
        with pytest.raises(UsageError):
            OptimizerOptions(max_iterations=0)

    def test_trace_csv(self, tmp_path):
        _, _, trace = minimize(quadratic_bowl, [0.0, 0.0],
                               OptimizerOptions(max_iterations=12))
        path = tmp_path / "trace.csv"
        trace.write_csv(path)
        rows = path.read_text().strip().splitlines()
        assert rows[0] == "iteration,evaluations,energy_hz,theta_0,theta_1"
        assert len(rows) == len(trace) + 1
        first = rows[1].split(",")
        assert first[0] == "0"
        assert float(first[2]) == trace.records[0].objective
