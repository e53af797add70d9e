"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator


class SpectrumPayload(BaseModel):
    system: Literal["AB", "AB2"]
    lines_hz: list[float]


class ParamsPayload(BaseModel):
    system: Literal["AB", "AB2"]
    nu_a: float
    nu_b: float
    j_ab: float


class HamiltonianTerm(BaseModel):
    coeff: float
    paulis: str


class HamiltonianModel(BaseModel):
    n_qubits: int
    terms: list[HamiltonianTerm]


class LayeredAnsatz(BaseModel):
    layered: int = Field(ge=1)


AnsatzChoice = Union[Literal["ab_fig2", "ab2_fig4"], LayeredAnsatz]


class OptimizerModel(BaseModel):
    method: Literal["nelder-mead", "param-shift-gd"] = "nelder-mead"
    max_iterations: int = Field(default=5000, ge=1)
    tolerance: float = Field(default=1e-10, gt=0)
    step_size: float = Field(default=0.05, gt=0)
    simplex_scale: float = Field(default=0.1, gt=0)


class MeasurementModel(BaseModel):
    mode: Literal["exact", "shots"] = "exact"
    shots: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _shots_need_count_and_seed(self):
        if self.mode == "shots" and (self.shots is None or self.seed is None):
            raise ValueError("shot-sampled measurement requires shots and seed")
        return self


class ProblemRequest(BaseModel):
    """Exactly one of lines / params / hamiltonian describes the problem."""

    lines: Optional[SpectrumPayload] = None
    params: Optional[ParamsPayload] = None
    hamiltonian: Optional[HamiltonianModel] = None

    @model_validator(mode="after")
    def _exactly_one_source(self):
        supplied = sum(
            x is not None for x in (self.lines, self.params, self.hamiltonian)
        )
        if supplied != 1:
            raise ValueError(
                "supply exactly one of lines, params, or hamiltonian"
            )
        return self


class AnalyzeRequest(SpectrumPayload):
    consistency_tol: Optional[float] = Field(default=None, gt=0)


class ParamsResponse(BaseModel):
    kind: Literal["AB", "AB2"]
    nu_a: float
    nu_b: float
    j_ab: float
    c_value: Optional[float] = None
    theta_mix: Optional[float] = None
    c_plus: Optional[float] = None
    c_minus: Optional[float] = None
    theta_plus: Optional[float] = None
    theta_minus: Optional[float] = None


class VQERequest(ProblemRequest):
    ansatz: Optional[AnsatzChoice] = None
    initial_angles: Optional[list[float]] = None
    optimizer: OptimizerModel = OptimizerModel()
    measurement: MeasurementModel = MeasurementModel()


class TraceRow(BaseModel):
    iteration: int
    evaluations: int
    energy_hz: float
    theta: list[float]


class VQEResponse(BaseModel):
    ground_energy_hz: float
    oracle_energy_hz: float
    gap_hz: float
    theta: list[float]
    iterations: int
    evaluations: int
    ground_state_fidelity: float
    trace: list[TraceRow]


class ExactResponse(BaseModel):
    ground_energy_hz: float
    eigenvalues_hz: list[float]


class CompareRequest(VQERequest):
    reference_energies_hz: Optional[list[float]] = None


class CompareDeltas(BaseModel):
    vqe_minus_oracle_hz: float
    analytic_minus_oracle_hz: Optional[float] = None
    reference_minus_oracle_hz: Optional[list[float]] = None


class CompareResponse(BaseModel):
    vqe_energy_hz: float
    oracle_energy_hz: float
    analytic_energy_hz: Optional[float] = None
    reference_energies_hz: Optional[list[float]] = None
    deltas: CompareDeltas


class HealthResponse(BaseModel):
    status: str
    version: str
