"""Request/response models shared by the HTTP service and the CLI client."""

from __future__ import annotations

from pydantic import BaseModel, Field


class EvalRequest(BaseModel):
    expression: str
    algebra: str = "sigma3"
    relations: list[str] = Field(default_factory=list)


class EvalResponse(BaseModel):
    result: str
    algebra: str


class CheckModel(BaseModel):
    id: str
    anchor: str
    status: str
    residual: str = ""


class ReportModel(BaseModel):
    suite: str
    checks: list[CheckModel]
    passed: int
    failed: int
    flagged: int
    ok: bool


class VerifyRequest(BaseModel):
    suite: str = "all"


class VerifyResponse(BaseModel):
    reports: list[ReportModel]
    ok: bool
    exit_code: int


class KeplerRequest(BaseModel):
    method: str = "ks"
    eccentricity: float = Field(default=0.6, alias="e")
    semi_major_axis: float = Field(default=1.0, alias="a")
    orbits: int = 1
    steps: int = 1000
    sample_every: int = 1

    model_config = {"populate_by_name": True}


class KeplerResponse(BaseModel):
    columns: list[str]
    rows: list[list[float]]
    summary: dict


class HealthResponse(BaseModel):
    status: str
    version: str
    algebras: list[str]
    suites: list[str]
