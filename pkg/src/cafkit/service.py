"""Stateless JSON service exposing the core operations over HTTP.

Every POST endpoint receives the full framework in the request body
(``framework`` key, canonical wire format) plus operation parameters, and
returns the full result; no state is kept between requests, so identical
requests always produce identical responses.  Errors come back as
``{"status": "error", "code": ..., "message": ...}`` with HTTP 400 for
malformed or domain-invalid requests and 500 for numerical failures.
"""

from __future__ import annotations

import json
from collections.abc import Callable

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .correction import (
    AlreadyRationalError,
    CostPreset,
    InfeasibleSubsetError,
    correct_strategy1,
    correct_strategy2,
    cost_presets,
)
from .framework import (
    InvalidFrameworkError,
    caf_to_document,
    parse_caf,
    parse_degrees,
    parse_waf,
)
from .rationality import (
    DEFAULT_CORNER_LIMIT,
    NotRationalError,
    RationalityKind,
    classify_corners,
    is_epsilon_rational,
    is_fully_rational,
    is_rational,
)
from .refinement import refine
from .sampling import sample_weights
from .semantics import (
    ConvergenceError,
    SemanticsId,
    invert_weights,
    is_achievable,
    solve_degrees,
)

_BAD_REQUEST = (
    InvalidFrameworkError,
    NotRationalError,
    AlreadyRationalError,
    InfeasibleSubsetError,
    ValueError,
    KeyError,
    TypeError,
)

_CODES = [
    (InvalidFrameworkError, "invalid_framework"),
    (NotRationalError, "not_rational"),
    (AlreadyRationalError, "already_rational"),
    (InfeasibleSubsetError, "infeasible_subset"),
    (KeyError, "missing_field"),
    (ValueError, "invalid_value"),
    (TypeError, "bad_request"),
]


def _code_for(exc: BaseException) -> str:
    for klass, code in _CODES:
        if isinstance(exc, klass):
            return code
    return "bad_request"


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse(
        {"status": "error", "code": code, "message": message, **extra},
        status_code=status,
    )


def _framework_doc(body: dict) -> dict:
    if "framework" not in body:
        raise KeyError("framework")
    return body["framework"]


def _sem(body: dict) -> SemanticsId:
    return SemanticsId.from_string(body.get("semantics", "hbs"))


def _op_solve(body: dict) -> dict:
    waf = parse_waf(_framework_doc(body))
    sem = _sem(body)
    return {"status": "ok", "semantics": sem.value, "degrees": solve_degrees(waf, sem)}


def _op_invert(body: dict) -> dict:
    graph, degrees = parse_degrees(_framework_doc(body))
    sem = _sem(body)
    return {
        "status": "ok",
        "semantics": sem.value,
        "weights": invert_weights(graph, degrees, sem),
        "achievable": is_achievable(graph, degrees, sem),
    }


def _op_rationality(body: dict) -> dict:
    caf = parse_caf(_framework_doc(body))
    sem = _sem(body)
    corner_limit = int(body.get("corner_limit", DEFAULT_CORNER_LIMIT))
    rational = is_rational(caf, sem)
    fully = is_fully_rational(caf, sem)
    out: dict = {
        "status": "ok",
        "semantics": sem.value,
        "rational": rational,
        "fully_rational": fully,
    }
    if len(caf.graph.arguments) <= corner_limit:
        status = classify_corners(caf, sem, corner_limit=corner_limit)
        out.update(
            kind=status.kind.value,
            corners_inside=status.corners_inside,
            corners_total=status.corners_total,
            refinable_axes=sorted(status.refinable_axes),
        )
    else:
        kind = (
            RationalityKind.FULLY_RATIONAL
            if fully
            else RationalityKind.RATIONAL
            if rational
            else RationalityKind.IRRATIONAL
        )
        out.update(
            kind=kind.value, corners_inside=None, corners_total=None,
            refinable_axes=None,
        )
    if "eps" in body and body["eps"] is not None:
        eps = float(body["eps"])
        out["epsilon"] = eps
        out["epsilon_rational"] = is_epsilon_rational(caf, sem, eps)
    return out


def _op_refine(body: dict) -> dict:
    caf = parse_caf(_framework_doc(body))
    sem = _sem(body)
    eps = float(body.get("eps", 1e-6))
    report = refine(caf, sem, eps)
    return {
        "status": "ok",
        "semantics": sem.value,
        "epsilon": eps,
        "iterations": report.iterations,
        "tightened": {
            a: {"old_hi": old, "new_hi": new}
            for a, (old, new) in report.tightened.items()
        },
        "framework": caf_to_document(report.refined),
    }


def _op_correct(body: dict) -> dict:
    caf = parse_caf(_framework_doc(body))
    sem = _sem(body)
    eps = float(body.get("eps", 1e-6))
    strategy = int(body.get("strategy", 1))
    if strategy not in (1, 2):
        raise ValueError("strategy must be 1 or 2")
    raw_costs = body.get("costs", "custom")
    if isinstance(raw_costs, dict):
        costs = {a: float(c) for a, c in raw_costs.items()}
    else:
        costs = cost_presets(CostPreset(raw_costs), caf)
    if strategy == 1:
        subset = set(body["subset"]) if body.get("subset") else None
        result = correct_strategy1(caf, sem, costs, eps, subset=subset)
    else:
        cap = body.get("max_subset_args")
        result = correct_strategy2(
            caf, sem, costs, eps, max_subset_args=int(cap) if cap else None
        )
    return {
        "status": "ok",
        "semantics": sem.value,
        "strategy": result.strategy,
        "epsilon": eps,
        "total_cost": result.total_cost,
        "parameter_t": result.parameter_t,
        "modified": sorted(result.modified),
        "subset": sorted(result.subset) if result.subset is not None else None,
        "framework": caf_to_document(result.corrected),
    }


def _op_sample(body: dict) -> dict:
    caf = parse_caf(_framework_doc(body))
    sem = _sem(body)
    n = int(body.get("n", 10))
    seed = int(body.get("seed", 0))
    max_tries = int(body.get("max_tries", 200))
    batch = sample_weights(caf, sem, n, max_tries=max_tries, seed=seed)
    return {
        "status": "ok",
        "semantics": sem.value,
        "n": n,
        "seed": seed,
        "attempted": batch.attempted,
        "entries": [
            {"weights": e.weights, "degrees": e.degrees, "method": e.method}
            for e in batch.entries
        ],
    }


def create_app() -> FastAPI:
    app = FastAPI(title="cafkit", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    def register(path: str, op: Callable[[dict], dict]) -> None:
        @app.post(path, name=op.__name__)
        async def endpoint(request: Request) -> JSONResponse:
            try:
                body = await request.json()
            except (json.JSONDecodeError, UnicodeDecodeError) as exc:
                return _error(400, "malformed_json", str(exc))
            if not isinstance(body, dict):
                return _error(400, "bad_request", "request body must be a JSON object")
            try:
                return JSONResponse(op(body))
            except ConvergenceError as exc:
                return _error(
                    500, "non_convergence", str(exc), residual=exc.residual
                )
            except _BAD_REQUEST as exc:
                message = (
                    f"missing required field {exc}" if isinstance(exc, KeyError)
                    else str(exc)
                )
                return _error(400, _code_for(exc), message)

    register("/api/solve", _op_solve)
    register("/api/invert", _op_invert)
    register("/api/rationality", _op_rationality)
    register("/api/refine", _op_refine)
    register("/api/correct", _op_correct)
    register("/api/sample", _op_sample)
    return app


app = create_app()
