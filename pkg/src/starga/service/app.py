"""FastAPI service wrapping the engine.

The handler functions are plain callables over the pydantic models so the
CLI can dispatch to them in-process; the FastAPI routes are thin wrappers
that translate engine errors into HTTP 400s.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..exprlang import (
    ALGEBRA_CHOICES, EvalError, ExprSyntaxError, UnknownSymbol, eval_command,
    relations_from_names, session_from_name,
)
from ..mechanics import InvalidOrbitParams, kepler_run
from ..scalars import ScalarError
from ..grassmann import AlgebraError
from ..verify import SUITES, exit_code, run_suite
from .models import (
    CheckModel, EvalRequest, EvalResponse, HealthResponse, KeplerRequest,
    KeplerResponse, ReportModel, VerifyRequest, VerifyResponse,
)

CSV_COLUMNS = ["s", "t", "x1", "x2", "x3", "v1", "v2", "v3", "E_rel_drift"]


class RequestError(ValueError):
    """Engine-level error that maps to a 400 response."""


def handle_eval(request: EvalRequest) -> EvalResponse:
    try:
        relations = relations_from_names(request.relations)
        session = session_from_name(request.algebra, relations)
        result = eval_command(request.expression, session)
    except (ExprSyntaxError, UnknownSymbol, EvalError, ScalarError,
            AlgebraError, ValueError) as exc:
        raise RequestError(str(exc)) from exc
    return EvalResponse(result=result, algebra=request.algebra)


def handle_verify(request: VerifyRequest) -> VerifyResponse:
    try:
        reports = run_suite(request.suite)
    except ValueError as exc:
        raise RequestError(str(exc)) from exc
    models = [ReportModel(
        suite=r.suite,
        checks=[CheckModel(**c.as_dict()) for c in r.checks],
        passed=r.passed, failed=r.failed, flagged=r.flagged, ok=r.ok,
    ) for r in reports]
    code = exit_code(reports)
    return VerifyResponse(reports=models, ok=code == 0, exit_code=code)


def orbit_rows(states) -> list:
    return [[st.s, st.t, *st.x, *st.v, st.energy_drift] for st in states]


def handle_kepler(request: KeplerRequest) -> KeplerResponse:
    try:
        if request.method not in ("ks", "newton"):
            raise InvalidOrbitParams("method must be 'ks' or 'newton'")
        states, info = kepler_run(request.method, request.eccentricity,
                                  request.semi_major_axis, request.steps,
                                  request.orbits, request.sample_every)
        other = "newton" if request.method == "ks" else "ks"
        _, other_info = kepler_run(other, request.eccentricity,
                                   request.semi_major_axis, request.steps,
                                   request.orbits,
                                   max(1, request.steps * request.orbits))
    except InvalidOrbitParams as exc:
        raise RequestError(str(exc)) from exc
    summary = {
        "method": request.method,
        "eccentricity": request.eccentricity,
        "semi_major_axis": request.semi_major_axis,
        "orbits": request.orbits,
        "steps_per_orbit": request.steps,
        f"{request.method}_final_drift": info["final_drift"],
        f"{other}_final_drift": other_info["final_drift"],
    }
    if "oscillator_invariant_drift" in info:
        summary["oscillator_invariant_drift"] = info["oscillator_invariant_drift"]
    return KeplerResponse(columns=CSV_COLUMNS, rows=orbit_rows(states),
                          summary=summary)


def create_app() -> FastAPI:
    app = FastAPI(
        title="starga",
        description="Exact star-product geometric algebra engine",
        version=__version__,
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__,
                              algebras=ALGEBRA_CHOICES.split(" | "),
                              suites=list(SUITES) + ["all"])

    @app.post("/eval", response_model=EvalResponse)
    def eval_endpoint(request: EvalRequest) -> EvalResponse:
        try:
            return handle_eval(request)
        except RequestError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/verify", response_model=VerifyResponse)
    def verify_endpoint(request: VerifyRequest) -> VerifyResponse:
        try:
            return handle_verify(request)
        except RequestError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/kepler", response_model=KeplerResponse)
    def kepler_endpoint(request: KeplerRequest) -> KeplerResponse:
        try:
            return handle_kepler(request)
        except RequestError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    return app


app = create_app()
