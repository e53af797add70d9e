"""FastAPI service exposing the analysis and solver pipeline.

Errors are returned as {"error": {"kind": ..., "message": ...}} with
kind "usage" (400), "data" (422), or "numerical" (500), which clients
map onto the exit-code contract.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__
from ..ansatz import AnsatzSpec, ansatz_spec_from_config
from ..errors import DataError, NumericalError, UsageError
from ..nmr import (
    SYSTEM_AB,
    SpectrumLines,
    ab2_params,
    ab_params,
    extract_ab2_params,
    extract_ab_params,
    params_to_dict,
)
from ..optimize import OptimizerOptions
from ..pauli import pauli_sum_from_dict, pauli_sum_to_dict
from ..pipeline import (
    ResolvedProblem,
    comparison_report,
    default_ansatz,
    exact_spectrum,
    resolve_problem,
    run_vqe,
)
from . import schemas


def _error_response(status: int, kind: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": {"kind": kind, "message": message}},
    )


def _resolve(request: schemas.ProblemRequest) -> ResolvedProblem:
    lines = params = hamiltonian = None
    if request.lines is not None:
        lines = SpectrumLines(
            request.lines.system, tuple(request.lines.lines_hz)
        )
    if request.params is not None:
        p = request.params
        maker = ab_params if p.system == SYSTEM_AB else ab2_params
        params = maker(p.nu_a, p.nu_b, p.j_ab)
    if request.hamiltonian is not None:
        hamiltonian = pauli_sum_from_dict(
            request.hamiltonian.model_dump()
        )
    return resolve_problem(lines=lines, params=params, hamiltonian=hamiltonian)


def _ansatz_for(request: schemas.VQERequest,
                problem: ResolvedProblem) -> AnsatzSpec | None:
    if request.ansatz is None:
        if request.initial_angles is None:
            return None
        return default_ansatz(problem, request.initial_angles)
    choice = request.ansatz
    if isinstance(choice, schemas.LayeredAnsatz):
        choice = {"layered": choice.layered}
    spec = ansatz_spec_from_config(choice, problem.hamiltonian.n_qubits)
    if request.initial_angles is not None:
        spec = AnsatzSpec(spec.layout, spec.n_qubits, spec.layers,
                          tuple(request.initial_angles))
    return spec


def _optimizer_options(model: schemas.OptimizerModel) -> OptimizerOptions:
    return OptimizerOptions(
        method=model.method,
        max_iterations=model.max_iterations,
        tolerance=model.tolerance,
        step_size=model.step_size,
        simplex_scale=model.simplex_scale,
    )


def _run_vqe(request: schemas.VQERequest):
    problem = _resolve(request)
    measurement = request.measurement
    result = run_vqe(
        problem,
        spec=_ansatz_for(request, problem),
        opts=_optimizer_options(request.optimizer),
        shots=measurement.shots if measurement.mode == "shots" else None,
        seed=measurement.seed if measurement.mode == "shots" else None,
    )
    return problem, result


def _vqe_response(result) -> schemas.VQEResponse:
    trace = [
        schemas.TraceRow(
            iteration=r.iteration,
            evaluations=r.evaluations,
            energy_hz=r.objective,
            theta=list(r.parameters),
        )
        for r in result.trace.records
    ]
    return schemas.VQEResponse(
        ground_energy_hz=result.ground_energy,
        oracle_energy_hz=result.oracle_energy,
        gap_hz=result.absolute_gap,
        theta=[float(t) for t in result.optimal_parameters],
        iterations=result.iterations,
        evaluations=result.evaluations,
        ground_state_fidelity=result.ground_state_fidelity,
        trace=trace,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="nmrvqe", version=__version__)

    @app.exception_handler(UsageError)
    async def _usage_handler(request: Request, exc: UsageError):
        return _error_response(400, "usage", str(exc))

    @app.exception_handler(DataError)
    async def _data_handler(request: Request, exc: DataError):
        return _error_response(422, "data", str(exc))

    @app.exception_handler(NumericalError)
    async def _numerical_handler(request: Request, exc: NumericalError):
        return _error_response(500, "numerical", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return _error_response(400, "usage", str(exc))

    @app.get("/healthz", response_model=schemas.HealthResponse)
    def healthz():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/analyze", response_model=schemas.ParamsResponse,
              response_model_exclude_none=True)
    def analyze(request: schemas.AnalyzeRequest):
        lines = SpectrumLines(request.system, tuple(request.lines_hz))
        if request.system == SYSTEM_AB:
            kwargs = {}
            if request.consistency_tol is not None:
                kwargs["consistency_tol"] = request.consistency_tol
            params = extract_ab_params(lines, **kwargs)
        else:
            params = extract_ab2_params(lines)
        return schemas.ParamsResponse(**params_to_dict(params))

    @app.post("/hamiltonian", response_model=schemas.HamiltonianModel)
    def hamiltonian(request: schemas.ProblemRequest):
        problem = _resolve(request)
        return schemas.HamiltonianModel(
            **pauli_sum_to_dict(problem.hamiltonian)
        )

    @app.post("/exact", response_model=schemas.ExactResponse)
    def exact(request: schemas.ProblemRequest):
        values = exact_spectrum(_resolve(request))
        return schemas.ExactResponse(
            ground_energy_hz=float(values[0]),
            eigenvalues_hz=[float(v) for v in values],
        )

    @app.post("/vqe", response_model=schemas.VQEResponse)
    def vqe(request: schemas.VQERequest):
        _, result = _run_vqe(request)
        return _vqe_response(result)

    @app.post("/compare", response_model=schemas.CompareResponse)
    def compare(request: schemas.CompareRequest):
        problem, result = _run_vqe(request)
        report = comparison_report(
            problem, result, request.reference_energies_hz
        )
        return schemas.CompareResponse(**report)

    return app


app = create_app()
