"""The local HTTP API backing the review console.

All endpoints are versioned under /v1 and delegate to the same
:class:`ProjectOps` facade the CLI uses; the interface layer holds no logic.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..gateway import CassetteMiss, ScriptExhausted, TransportError
from ..orchestrator import UntranslatableGoal
from ..pddl import (
    ModelError,
    PddlSyntaxError,
    TypeMismatch,
    UnknownPredicate,
    UnsupportedFeature,
)
from ..workspace import Project
from .ops import NoDomain, ProjectOps, RevisionInFlight, UnknownAction
from .schemas import (
    ActionDetailResponse,
    ActionListResponse,
    EventsResponse,
    FeedbackRequest,
    FeedbackResponse,
    PlanRequest,
    RunsResponse,
    ValidateRequest,
    ValidationResponse,
)

_PAYLOAD_ERRORS = (
    PddlSyntaxError,
    UnsupportedFeature,
    TypeMismatch,
    UnknownPredicate,
    ModelError,
    ValueError,
)


def _error(status: int, code: str, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": str(exc), "detail": type(exc).__name__},
    )


def create_app(project: Project, *, static_dir: str | Path | None = None) -> FastAPI:
    ops = ProjectOps(project)
    app = FastAPI(title="planforge", version="0.1.0")
    app.state.ops = ops

    @app.exception_handler(UnknownAction)
    async def _unknown_action(_req: Request, exc: UnknownAction):
        return _error(404, "unknown-action", exc)

    @app.exception_handler(RevisionInFlight)
    async def _revision_in_flight(_req: Request, exc: RevisionInFlight):
        return _error(409, "revision-in-flight", exc)

    @app.exception_handler(NoDomain)
    async def _no_domain(_req: Request, exc: NoDomain):
        return _error(409, "no-domain", exc)

    @app.exception_handler(UntranslatableGoal)
    async def _untranslatable(_req: Request, exc: UntranslatableGoal):
        return _error(422, "untranslatable-goal", exc)

    for exc_type in _PAYLOAD_ERRORS:

        @app.exception_handler(exc_type)
        async def _payload_error(_req: Request, exc: Exception):
            return _error(422, "invalid-payload", exc)

    for exc_type, code in (
        (TransportError, "transport-error"),
        (CassetteMiss, "cassette-miss"),
        (ScriptExhausted, "script-exhausted"),
    ):

        @app.exception_handler(exc_type)
        async def _transport_error(_req: Request, exc: Exception, _code=code):
            return _error(502, _code, exc)

    @app.get("/v1/actions", response_model=ActionListResponse)
    def list_actions():
        return ops.list_actions()

    @app.get("/v1/actions/{name}", response_model=ActionDetailResponse)
    def get_action(name: str):
        return ops.get_action(name)

    @app.post("/v1/actions/{name}/feedback", response_model=FeedbackResponse)
    def submit_feedback(name: str, request: FeedbackRequest):
        return ops.submit_feedback(name, request.text, request.source)

    @app.get("/v1/audit")
    def audit_project():
        return ops.audit_project()

    @app.post("/v1/validate", response_model=ValidationResponse)
    def validate(request: ValidateRequest):
        return ops.validate(request.plan, request.problem, request.problem_file)

    @app.post("/v1/plan")
    def plan(request: PlanRequest):
        return ops.plan(
            request.instruction, request.problem, request.problem_file, request.mode
        )

    @app.get("/v1/runs", response_model=RunsResponse)
    def runs():
        return ops.runs()

    @app.get("/v1/report")
    def report():
        return ops.report()

    @app.get("/v1/events", response_model=EventsResponse)
    def events(since: int = 0, timeout: float = 0.0):
        return ops.events_since(since, min(timeout, 60.0))

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="console")
    return app
