"""Glue between problem descriptions and the solver stack.

A problem arrives as exactly one of: measured lines, explicit spin
parameters, or a raw Pauli-sum Hamiltonian. Resolution normalizes all
three into a Hamiltonian plus whatever analytic context is available,
which the VQE, exact, and comparison entry points then share.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ansatz import AnsatzSpec
from .eigen import eigensystem
from .errors import UsageError
from .nmr import (
    SYSTEM_AB,
    SYSTEM_AB2,
    AnalyticSpectrum,
    SpectrumLines,
    SpinSystemParams,
    ab2_analytic_spectrum,
    ab_analytic_spectrum,
    build_ab2_hamiltonian,
    build_ab_hamiltonian,
    extract_ab2_params,
    extract_ab_params,
)
from .optimize import OptimizerOptions
from .pauli import PauliSum, to_dense_matrix
from .vqe import VQEResult, vqe_minimize


@dataclass
class ResolvedProblem:
    hamiltonian: PauliSum
    system: str | None = None
    params: SpinSystemParams | None = None
    analytic: AnalyticSpectrum | None = None


def resolve_from_params(params: SpinSystemParams) -> ResolvedProblem:
    if params.kind == SYSTEM_AB:
        return ResolvedProblem(
            hamiltonian=build_ab_hamiltonian(params),
            system=SYSTEM_AB,
            params=params,
            analytic=ab_analytic_spectrum(params),
        )
    return ResolvedProblem(
        hamiltonian=build_ab2_hamiltonian(params),
        system=SYSTEM_AB2,
        params=params,
        analytic=ab2_analytic_spectrum(params),
    )


def resolve_problem(
    lines: SpectrumLines | None = None,
    params: SpinSystemParams | None = None,
    hamiltonian: PauliSum | None = None,
    consistency_tol: float | None = None,
) -> ResolvedProblem:
    """Normalize exactly one problem source into a ResolvedProblem."""
    supplied = [x is not None for x in (lines, params, hamiltonian)]
    if sum(supplied) != 1:
        raise UsageError(
            "supply exactly one of: measured lines, explicit parameters, "
            "or a Hamiltonian"
        )
    if hamiltonian is not None:
        return ResolvedProblem(hamiltonian=hamiltonian)
    if lines is not None:
        if lines.system == SYSTEM_AB:
            kwargs = {}
            if consistency_tol is not None:
                kwargs["consistency_tol"] = consistency_tol
            params = extract_ab_params(lines, **kwargs)
        else:
            params = extract_ab2_params(lines)
    return resolve_from_params(params)


def default_ansatz(problem: ResolvedProblem,
                   initial_angles=None) -> AnsatzSpec:
    """The fixed layout for AB / AB2; a two-layer template otherwise."""
    if problem.system == SYSTEM_AB:
        return AnsatzSpec.ab(initial_angles)
    if problem.system == SYSTEM_AB2:
        return AnsatzSpec.ab2(initial_angles)
    return AnsatzSpec.layered(problem.hamiltonian.n_qubits, 2, initial_angles)


def run_vqe(
    problem: ResolvedProblem,
    spec: AnsatzSpec | None = None,
    opts: OptimizerOptions | None = None,
    shots: int | None = None,
    seed: int | None = None,
) -> VQEResult:
    spec = spec or default_ansatz(problem)
    return vqe_minimize(problem.hamiltonian, spec, opts, shots=shots, seed=seed)


def exact_spectrum(problem: ResolvedProblem):
    """Eigenvalues (ascending) of the problem Hamiltonian."""
    values, _ = eigensystem(to_dense_matrix(problem.hamiltonian))
    return values


def comparison_report(
    problem: ResolvedProblem,
    result: VQEResult,
    reference_energies: list[float] | None = None,
) -> dict:
    """Three-way energy comparison: variational vs exact vs closed form,
    with optional externally reported reference values."""
    oracle = result.oracle_energy
    report: dict = {
        "vqe_energy_hz": result.ground_energy,
        "oracle_energy_hz": oracle,
        "analytic_energy_hz": None,
        "reference_energies_hz": None,
        "deltas": {
            "vqe_minus_oracle_hz": result.ground_energy - oracle,
            "analytic_minus_oracle_hz": None,
            "reference_minus_oracle_hz": None,
        },
    }
    if problem.analytic is not None:
        analytic = float(problem.analytic.energies()[0])
        report["analytic_energy_hz"] = analytic
        report["deltas"]["analytic_minus_oracle_hz"] = analytic - oracle
    if reference_energies:
        refs = [float(r) for r in reference_energies]
        report["reference_energies_hz"] = refs
        report["deltas"]["reference_minus_oracle_hz"] = [
            r - oracle for r in refs
        ]
    return report
