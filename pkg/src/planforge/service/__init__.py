"""HTTP service layer: FastAPI app plus the shared operations facade."""

from .app import create_app
from .ops import EventBus, NoDomain, ProjectOps, RevisionInFlight, UnknownAction

__all__ = [
    "EventBus",
    "NoDomain",
    "ProjectOps",
    "RevisionInFlight",
    "UnknownAction",
    "create_app",
]
