"""NMR spectrum analysis and spin-Hamiltonian ground states via a
variational quantum eigensolver on an internal statevector simulator."""

__version__ = "0.1.0"

from .ansatz import AnsatzSpec, build_ansatz, default_initial_parameters
from .eigen import eigensystem, ground_energy, ground_state
from .errors import DataError, NmrVqeError, NumericalError, UsageError
from .nmr import (
    AnalyticSpectrum,
    SpectrumLines,
    SpinSystemParams,
    ab2_analytic_spectrum,
    ab2_params,
    ab2_symmetrized_matrix,
    ab2_transition_lines,
    ab_analytic_spectrum,
    ab_forward_lines,
    ab_mixing_angle,
    ab_params,
    build_ab2_hamiltonian,
    build_ab_hamiltonian,
    build_general_hamiltonian,
    extract_ab2_params,
    extract_ab_params,
)
from .optimize import (
    OptimizationTrace,
    OptimizerOptions,
    minimize,
    parameter_shift_gradient,
)
from .pauli import (
    PauliString,
    PauliSum,
    apply_pauli_string,
    expectation,
    pauli_sum_from_dict,
    pauli_sum_to_dict,
    to_dense_matrix,
)
from .state import StateVector, init_basis_state
from .statevector import (
    Circuit,
    GateOp,
    apply_gate,
    circuit_from_dict,
    circuit_to_dict,
    run_circuit,
    sample_expectation,
    sample_expectation_stats,
)
from .vqe import VQEResult, vqe_minimize

__all__ = [
    "AnalyticSpectrum",
    "AnsatzSpec",
    "Circuit",
    "DataError",
    "GateOp",
    "NmrVqeError",
    "NumericalError",
    "OptimizationTrace",
    "OptimizerOptions",
    "PauliString",
    "PauliSum",
    "SpectrumLines",
    "SpinSystemParams",
    "StateVector",
    "UsageError",
    "VQEResult",
    "ab2_analytic_spectrum",
    "ab2_params",
    "ab2_symmetrized_matrix",
    "ab2_transition_lines",
    "ab_analytic_spectrum",
    "ab_forward_lines",
    "ab_mixing_angle",
    "ab_params",
    "apply_gate",
    "apply_pauli_string",
    "build_ab2_hamiltonian",
    "build_ab_hamiltonian",
    "build_ansatz",
    "build_general_hamiltonian",
    "circuit_from_dict",
    "circuit_to_dict",
    "default_initial_parameters",
    "eigensystem",
    "expectation",
    "extract_ab2_params",
    "extract_ab_params",
    "ground_energy",
    "ground_state",
    "init_basis_state",
    "minimize",
    "parameter_shift_gradient",
    "pauli_sum_from_dict",
    "pauli_sum_to_dict",
    "run_circuit",
    "sample_expectation",
    "sample_expectation_stats",
    "to_dense_matrix",
    "vqe_minimize",
]
