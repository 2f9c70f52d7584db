"""HTTP service layer: pydantic models and the FastAPI application."""

from .models import (
    CheckModel, EvalRequest, EvalResponse, HealthResponse, KeplerRequest,
    KeplerResponse, ReportModel, VerifyRequest, VerifyResponse,
)
from .app import app, create_app, handle_eval, handle_kepler, handle_verify

__all__ = [
    "CheckModel", "EvalRequest", "EvalResponse", "HealthResponse",
    "KeplerRequest", "KeplerResponse", "ReportModel", "VerifyRequest",
    "VerifyResponse", "app", "create_app", "handle_eval", "handle_kepler",
    "handle_verify",
]
