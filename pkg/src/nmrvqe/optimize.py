"""Classical minimizers for the variational loop.

Two methods are provided: a from-scratch Nelder-Mead simplex search
(reflection 1.0, expansion 2.0, contraction 0.5, shrink 0.5) and plain
gradient descent fed by the parameter-shift rule, which is exact for
objectives built from Ry-type rotations.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NumericalError, UsageError

NELDER_MEAD = "nelder-mead"
PARAM_SHIFT_GD = "param-shift-gd"

Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class OptimizerOptions:
    method: str = NELDER_MEAD
    max_iterations: int = 5000
    tolerance: float = 1e-10
    step_size: float = 0.05  # gradient descent only
    simplex_scale: float = 0.1  # initial simplex edge, radians

    def __post_init__(self):
        if self.method not in (NELDER_MEAD, PARAM_SHIFT_GD):
            raise UsageError(f"unknown optimizer method {self.method!r}")
        if self.tolerance <= 0:
            raise UsageError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_iterations < 1:
            raise UsageError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    evaluations: int
    objective: float
    parameters: tuple[float, ...]


@dataclass
class OptimizationTrace:
    """Per-iteration best objective and parameters, plus the running
    count of objective evaluations."""

    records: list[TraceRecord] = field(default_factory=list)

    def append(self, iteration: int, evaluations: int, objective: float,
               parameters: np.ndarray) -> None:
        self.records.append(
            TraceRecord(iteration, evaluations, float(objective),
                        tuple(float(p) for p in parameters))
        )

    def __len__(self) -> int:
        return len(self.records)

    def objectives(self) -> np.ndarray:
        return np.array([r.objective for r in self.records])

    def csv_rows(self) -> list[list]:
        n_params = len(self.records[0].parameters) if self.records else 0
        header = ["iteration", "evaluations", "energy_hz"]
        header += [f"theta_{i}" for i in range(n_params)]
        rows: list[list] = [header]
        for r in self.records:
            rows.append([r.iteration, r.evaluations, repr(r.objective)]
                        + [repr(p) for p in r.parameters])
        return rows

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as handle:
            csv.writer(handle).writerows(self.csv_rows())


def _checked_call(objective: Objective, theta: np.ndarray) -> float:
    value = float(objective(theta))
    if not math.isfinite(value):
        raise NumericalError(
            f"objective returned {value!r} at theta={theta.tolist()}"
        )
    return value


def parameter_shift_gradient(objective_at: Objective, theta) -> np.ndarray:
    """Exact gradient for rotation-generated objectives:
    dE/dtheta_i = [E(theta + pi/2 e_i) - E(theta - pi/2 e_i)] / 2."""
    theta = np.asarray(theta, dtype=float)
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        shift = np.zeros_like(theta)
        shift[i] = math.pi / 2.0
        grad[i] = (
            _checked_call(objective_at, theta + shift)
            - _checked_call(objective_at, theta - shift)
        ) / 2.0
    return grad


def _nelder_mead(objective: Objective, theta0: np.ndarray,
                 opts: OptimizerOptions):
    alpha, gamma, beta, delta = 1.0, 2.0, 0.5, 0.5
    dim = theta0.size
    evals = 0

    def call(x):
        nonlocal evals
        evals += 1
        return _checked_call(objective, x)

    simplex = [theta0.copy()]
    for i in range(dim):
        vertex = theta0.copy()
        vertex[i] += opts.simplex_scale
        simplex.append(vertex)
    values = [call(x) for x in simplex]

    trace = OptimizationTrace()
    for iteration in range(opts.max_iterations):
        order = np.argsort(values, kind="stable")
        simplex = [simplex[k] for k in order]
        values = [values[k] for k in order]
        trace.append(iteration, evals, values[0], simplex[0])
        if values[-1] - values[0] < opts.tolerance:
            break

        centroid = np.mean(simplex[:-1], axis=0)
        reflected = centroid + alpha * (centroid - simplex[-1])
        f_reflected = call(reflected)
        if f_reflected < values[0]:
            expanded = centroid + gamma * (centroid - simplex[-1])
            f_expanded = call(expanded)
            if f_expanded < f_reflected:
                simplex[-1], values[-1] = expanded, f_expanded
            else:
                simplex[-1], values[-1] = reflected, f_reflected
            continue
        if f_reflected < values[-2]:
            simplex[-1], values[-1] = reflected, f_reflected
            continue
        if f_reflected < values[-1]:
            contracted = centroid + beta * (reflected - centroid)
            f_contracted = call(contracted)
            if f_contracted <= f_reflected:
                simplex[-1], values[-1] = contracted, f_contracted
                continue
        else:
            contracted = centroid - beta * (centroid - simplex[-1])
            f_contracted = call(contracted)
            if f_contracted < values[-1]:
                simplex[-1], values[-1] = contracted, f_contracted
                continue
        for k in range(1, dim + 1):
            simplex[k] = simplex[0] + delta * (simplex[k] - simplex[0])
            values[k] = call(simplex[k])

    order = np.argsort(values, kind="stable")
    best = simplex[order[0]]
    return best, values[order[0]], trace


def _param_shift_descent(objective: Objective, theta0: np.ndarray,
                         opts: OptimizerOptions):
    theta = theta0.copy()
    evals = 0

    def call(x):
        nonlocal evals
        evals += 1
        return _checked_call(objective, x)

    trace = OptimizationTrace()
    value = call(theta)
    for iteration in range(opts.max_iterations):
        grad = parameter_shift_gradient(call, theta)
        trace.append(iteration, evals, value, theta)
        if float(np.linalg.norm(grad)) < opts.tolerance:
            break
        theta = theta - opts.step_size * grad
        value = call(theta)
    return theta, value, trace


def minimize(objective: Objective, theta0: Sequence[float],
             opts: OptimizerOptions | None = None):
    """Minimize a deterministic objective; returns (theta*, f*, trace).

    Nelder-Mead stops when the simplex objective spread drops below the
    tolerance; gradient descent when the parameter-shift gradient norm
    does. Both stop at `max_iterations` regardless.
    """
    opts = opts or OptimizerOptions()
    theta0 = np.atleast_1d(np.asarray(theta0, dtype=float))
    if theta0.ndim != 1 or theta0.size == 0:
        raise UsageError(f"theta0 must be a non-empty vector, got {theta0!r}")
    if opts.method == NELDER_MEAD:
        return _nelder_mead(objective, theta0, opts)
    return _param_shift_descent(objective, theta0, opts)
