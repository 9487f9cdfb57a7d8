"""Pydantic request/response models for the /v1 API."""

from __future__ import annotations

from pydantic import BaseModel, Field


class ApiError(BaseModel):
    code: str
    message: str
    detail: str = ""


class FeedbackRequest(BaseModel):
    text: str = Field(min_length=1)
    source: str = "human"


class ValidateRequest(BaseModel):
    plan: list[str]
    problem: str | None = None
    problem_file: str | None = None


class PlanRequest(BaseModel):
    instruction: str = Field(min_length=1)
    problem: str | None = None
    problem_file: str | None = None
    mode: str = "classical"


class ActionSummary(BaseModel):
    name: str
    clean: bool
    findings: int


class ActionListResponse(BaseModel):
    actions: list[ActionSummary]


class FindingPayload(BaseModel):
    category: str
    action: str
    section: str
    snippet: str
    message: str


class AuditPayload(BaseModel):
    clean: bool
    findings: list[FindingPayload]
    infos: list[FindingPayload] = []


class RevisionPayload(BaseModel):
    action: str
    before: str
    after: str
    diff: str


class ActionDetailResponse(BaseModel):
    name: str
    pddl: str
    nl: str
    audit: AuditPayload
    revisions: list[RevisionPayload]


class FeedbackResponse(BaseModel):
    revision: RevisionPayload
    audit: AuditPayload


class FailurePayload(BaseModel):
    step: int
    kind: str
    unmet: list[str]
    detail: list[str]


class ValidationResponse(BaseModel):
    verdict: str
    failures: list[FailurePayload]
    final_state: list[str]
    not_evaluated: list[int]


class EventRecord(BaseModel):
    seq: int
    kind: str
    data: dict
    ts: float


class EventsResponse(BaseModel):
    events: list[EventRecord]
    next: int


class RunsResponse(BaseModel):
    runs: list[dict]
