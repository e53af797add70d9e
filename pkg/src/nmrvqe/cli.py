"""Command-line client for the analysis service.

Every command builds a JSON request and sends it to the HTTP service:
by default an in-process instance (no server needed), or a remote one
with --server. Responses are printed as JSON; `vqe` additionally writes
the per-iteration trace as CSV.

Exit codes: 0 success, 2 usage error, 3 data inconsistency,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import json
import sys
from pathlib import Path

import httpx

from .errors import DataError, NmrVqeError, NumericalError, UsageError

_EXIT_CODES = {"usage": 2, "data": 3, "numerical": 4}


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=300.0) as client:
            return client.post(path, json=payload)

    from .service import create_app

    async def _call():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://nmrvqe.internal"
        ) as client:
            return await client.post(path, json=payload, timeout=300.0)

    return asyncio.run(_call())


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as handle:
            config = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise UsageError("config file must hold a JSON object")
    return config


def _pick(args: argparse.Namespace, config: dict, flag: str, key: str):
    """Flag value if given on the command line, else the config entry."""
    value = getattr(args, flag, None)
    return value if value is not None else config.get(key)


def _parse_lines(raw) -> list[float]:
    if isinstance(raw, (list, tuple)):
        return [float(f) for f in raw]
    try:
        return [float(part) for part in str(raw).split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse line list {raw!r}: {exc}") from exc


def _parse_ansatz(raw):
    if raw is None or isinstance(raw, dict):
        return raw
    text = str(raw)
    if text.startswith("layered:"):
        try:
            return {"layered": int(text.split(":", 1)[1])}
        except ValueError as exc:
            raise UsageError(f"bad layered ansatz spec {text!r}") from exc
    return text


def _problem_payload(args: argparse.Namespace, config: dict) -> dict:
    payload: dict = {}
    system = _pick(args, config, "system", "system")
    lines = _pick(args, config, "lines", "lines_hz")
    ham_path = getattr(args, "ham", None)
    nu_a = _pick(args, config, "nu_a", "nu_a")
    nu_b = _pick(args, config, "nu_b", "nu_b")
    j_ab = _pick(args, config, "j", "j_ab")

    if lines is not None:
        if system is None:
            raise UsageError("--lines requires --system")
        payload["lines"] = {"system": system, "lines_hz": _parse_lines(lines)}
    if nu_a is not None or nu_b is not None or j_ab is not None:
        if None in (system, nu_a, nu_b, j_ab):
            raise UsageError(
                "explicit parameters need --system, --nu-a, --nu-b and --j"
            )
        payload["params"] = {
            "system": system,
            "nu_a": float(nu_a),
            "nu_b": float(nu_b),
            "j_ab": float(j_ab),
        }
    if ham_path is not None:
        try:
            with open(ham_path) as handle:
                payload["hamiltonian"] = json.load(handle)
        except OSError as exc:
            raise UsageError(f"cannot read Hamiltonian file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(
                f"Hamiltonian file is not valid JSON: {exc}"
            ) from exc
    elif "hamiltonian" in config and not payload:
        payload["hamiltonian"] = config["hamiltonian"]

    if len(payload) != 1:
        raise UsageError(
            "supply exactly one of: --lines, explicit --nu-a/--nu-b/--j, "
            "or --ham"
        )
    return payload


def _vqe_payload(args: argparse.Namespace, config: dict) -> dict:
    payload = _problem_payload(args, config)

    ansatz = _parse_ansatz(_pick(args, config, "ansatz", "ansatz"))
    if ansatz is not None:
        payload["ansatz"] = ansatz
    initial = config.get("initial_angles")
    if initial is not None:
        payload["initial_angles"] = [float(a) for a in initial]

    optimizer = dict(config.get("optimizer") or {})
    if getattr(args, "optimizer", None) is not None:
        optimizer["method"] = args.optimizer
    if getattr(args, "tol", None) is not None:
        optimizer["tolerance"] = args.tol
    if getattr(args, "max_iter", None) is not None:
        optimizer["max_iterations"] = args.max_iter
    if getattr(args, "step_size", None) is not None:
        optimizer["step_size"] = args.step_size
    if optimizer:
        payload["optimizer"] = optimizer

    measurement = dict(config.get("measurement") or {})
    shots = _pick(args, config, "shots", "shots")
    seed = _pick(args, config, "seed", "seed")
    if shots is not None:
        measurement = {"mode": "shots", "shots": int(shots), "seed": seed}
    if measurement:
        payload["measurement"] = measurement
    return payload


def _emit(document: dict, out_path: str | None) -> None:
    text = json.dumps(document, indent=2)
    if out_path:
        Path(out_path).write_text(text + "\n")
    else:
        print(text)


def _write_trace_csv(rows: list[dict], path: str) -> None:
    n_params = len(rows[0]["theta"]) if rows else 0
    header = ["iteration", "evaluations", "energy_hz"]
    header += [f"theta_{i}" for i in range(n_params)]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [row["iteration"], row["evaluations"], repr(row["energy_hz"])]
                + [repr(t) for t in row["theta"]]
            )


def _fail(response: httpx.Response) -> int:
    try:
        payload = response.json()
    except ValueError:
        payload = {}
    error = payload.get("error") or {}
    kind = error.get("kind", "usage")
    message = error.get("message") or response.text
    print(f"error ({kind}): {message}", file=sys.stderr)
    return _EXIT_CODES.get(kind, 1)


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    system = _pick(args, config, "system", "system")
    lines = _pick(args, config, "lines", "lines_hz")
    if system is None or lines is None:
        raise UsageError("analyze needs --system and --lines")
    payload = {"system": system, "lines_hz": _parse_lines(lines)}
    tol = _pick(args, config, "consistency_tol", "consistency_tol")
    if tol is not None:
        payload["consistency_tol"] = float(tol)
    response = _post(args.server, "/analyze", payload)
    if response.status_code != 200:
        return _fail(response)
    _emit(response.json(), args.out)
    return 0


def cmd_build_ham(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    response = _post(args.server, "/hamiltonian", _problem_payload(args, config))
    if response.status_code != 200:
        return _fail(response)
    _emit(response.json(), args.out)
    return 0


def cmd_exact(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    response = _post(args.server, "/exact", _problem_payload(args, config))
    if response.status_code != 200:
        return _fail(response)
    _emit(response.json(), args.out)
    return 0


def cmd_vqe(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    response = _post(args.server, "/vqe", _vqe_payload(args, config))
    if response.status_code != 200:
        return _fail(response)
    body = response.json()
    trace_path = _pick(args, config, "trace", "trace")
    if trace_path:
        _write_trace_csv(body["trace"], trace_path)
    result = {key: value for key, value in body.items() if key != "trace"}
    result["trace_csv"] = str(trace_path) if trace_path else None
    _emit(result, args.out)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    payload = _vqe_payload(args, config)
    refs = _pick(args, config, "ref_energy", "reference_energies_hz")
    if refs is not None:
        payload["reference_energies_hz"] = _parse_lines(refs)
    response = _post(args.server, "/compare", payload)
    if response.status_code != 200:
        return _fail(response)
    _emit(response.json(), args.out)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("nmrvqe.service.app:app", host=args.host, port=args.port)
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON run config; flags override it")
    parser.add_argument("--server", help="base URL of a running service "
                        "(default: run in-process)")
    parser.add_argument("--out", help="write the JSON result here instead "
                        "of stdout")


def _add_problem(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--system", choices=["AB", "AB2"])
    parser.add_argument("--lines", help="comma-separated line positions "
                        "in Hz, descending")
    parser.add_argument("--nu-a", dest="nu_a", type=float)
    parser.add_argument("--nu-b", dest="nu_b", type=float)
    parser.add_argument("--j", type=float)
    parser.add_argument("--ham", help="Hamiltonian JSON file")


def _add_solver(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ansatz", help="ab_fig2 | ab2_fig4 | layered:N")
    parser.add_argument("--optimizer",
                        choices=["nelder-mead", "param-shift-gd"])
    parser.add_argument("--tol", type=float)
    parser.add_argument("--max-iter", dest="max_iter", type=int)
    parser.add_argument("--step-size", dest="step_size", type=float)
    parser.add_argument("--shots", type=int)
    parser.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nmrvqe",
        description="Analyze AB/AB2 spectra and solve the spin "
        "Hamiltonians variationally.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="extract nu_A, nu_B and J from "
                       "measured lines")
    p.add_argument("--system", choices=["AB", "AB2"])
    p.add_argument("--lines")
    p.add_argument("--consistency-tol", dest="consistency_tol", type=float)
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("build-ham", help="emit the Pauli-sum Hamiltonian "
                       "as JSON")
    _add_problem(p)
    _add_common(p)
    p.set_defaults(func=cmd_build_ham)

    p = sub.add_parser("vqe", help="variational ground-state search")
    _add_problem(p)
    _add_solver(p)
    p.add_argument("--trace", help="write the per-iteration CSV here")
    _add_common(p)
    p.set_defaults(func=cmd_vqe)

    p = sub.add_parser("exact", help="exact eigenvalues by diagonalization")
    _add_problem(p)
    _add_common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("compare", help="VQE vs exact vs closed-form "
                       "energies")
    _add_problem(p)
    _add_solver(p)
    p.add_argument("--ref-energy", dest="ref_energy",
                   help="comma-separated externally reported energies (Hz)")
    _add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error (usage): {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error (data): {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error (numerical): {exc}", file=sys.stderr)
        return 4
    except NmrVqeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except httpx.HTTPError as exc:
        print(f"error (transport): {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
