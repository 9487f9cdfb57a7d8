"""Built-in domain-independent planner: grounding plus heuristic forward search."""

from .external import run_external_planner
from .grounding import (
    DEFAULT_ACTION_CAP,
    GroundingExplosion,
    GroundOp,
    GroundTask,
    enumerate_bindings,
    ground,
)
from .heuristics import INFINITY, h_add, h_blind, h_max
from .search import (
    ExternalPlannerFailure,
    PlanResult,
    SearchConfig,
    SearchStats,
    search,
    solve,
)

__all__ = [
    "DEFAULT_ACTION_CAP",
    "ExternalPlannerFailure",
    "GroundOp",
    "GroundTask",
    "GroundingExplosion",
    "INFINITY",
    "PlanResult",
    "SearchConfig",
    "SearchStats",
    "enumerate_bindings",
    "ground",
    "h_add",
    "h_blind",
    "h_max",
    "run_external_planner",
    "search",
    "solve",
]
