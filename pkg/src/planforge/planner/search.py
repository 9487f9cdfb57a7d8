"""Heuristic forward search over a ground task, plus the one-call solver.

Determinism is a test requirement: nodes are expanded in a fixed operator
order and equal-priority entries pop FIFO, so identical inputs always yield
identical plans.  Every plan is re-validated by the state engine before it is
returned.
"""

from __future__ import annotations

import heapq
import time
from collections import deque
from dataclasses import dataclass

from ..pddl import DomainModel, Plan, PlanStep, ProblemSpec
from ..state import validate_plan
from .grounding import GroundTask, ground
from .heuristics import INFINITY, h_add, h_blind, h_max

STRATEGIES = ("astar", "gbfs", "bfs")
HEURISTICS = ("hadd", "hmax", "blind")

_HEURISTIC_FNS = {"hadd": h_add, "hmax": h_max, "blind": h_blind}


@dataclass(frozen=True)
class SearchConfig:
    strategy: str = "gbfs"
    heuristic: str = "hadd"
    max_expansions: int = 1_000_000
    time_limit: float = 60.0

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy '{self.strategy}'")
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"unknown heuristic '{self.heuristic}'")
        if self.max_expansions <= 0 or self.time_limit <= 0:
            raise ValueError("limits must be positive")


@dataclass(frozen=True)
class SearchStats:
    expansions: int
    generated: int
    wall_time: float
    plan_length: int | None

    def to_payload(self) -> dict:
        return {
            "expansions": self.expansions,
            "generated": self.generated,
            "wall_time": round(self.wall_time, 6),
            "plan_length": self.plan_length,
        }


@dataclass(frozen=True)
class PlanResult:
    outcome: str  # "plan" | "unsolvable" | "resource-limit"
    plan: Plan | None
    stats: SearchStats

    @property
    def solved(self) -> bool:
        return self.outcome == "plan"

    def to_payload(self) -> dict:
        return {
            "outcome": self.outcome,
            "plan": [str(s) for s in self.plan.steps] if self.plan else None,
            "stats": self.stats.to_payload(),
        }


class _Node:
    __slots__ = ("state", "op_index", "parent", "g")

    def __init__(self, state: frozenset, op_index: int | None, parent: "_Node | None", g: int):
        self.state = state
        self.op_index = op_index
        self.parent = parent
        self.g = g


def _extract_plan(task: GroundTask, node: _Node) -> Plan:
    steps: list[PlanStep] = []
    while node.parent is not None:
        op = task.ops[node.op_index]
        steps.append(PlanStep(op.name, op.args))
        node = node.parent
    steps.reverse()
    return Plan(tuple(steps))


def search(task: GroundTask, cfg: SearchConfig | None = None) -> PlanResult:
    cfg = cfg or SearchConfig()
    start = time.monotonic()
    is_goal = lambda s: task.goal <= s
    h_fn = _HEURISTIC_FNS[cfg.heuristic]

    expansions = 0
    generated = 0
    root = _Node(task.init, None, None, 0)

    def result(outcome: str, plan: Plan | None) -> PlanResult:
        stats = SearchStats(
            expansions=expansions,
            generated=generated,
            wall_time=time.monotonic() - start,
            plan_length=len(plan) if plan is not None else None,
        )
        return PlanResult(outcome, plan, stats)

    if cfg.strategy == "bfs":
        if is_goal(root.state):
            return result("plan", Plan(()))
        frontier: deque[_Node] = deque([root])
        seen = {root.state}
        while frontier:
            if expansions >= cfg.max_expansions or time.monotonic() - start > cfg.time_limit:
                return result("resource-limit", None)
            node = frontier.popleft()
            expansions += 1
            for oi, op in enumerate(task.ops):
                if not op.pre <= node.state:
                    continue
                succ = (node.state - op.delete) | op.add
                if succ in seen:
                    continue
                generated += 1
                child = _Node(succ, oi, node, node.g + 1)
                if is_goal(succ):
                    return result("plan", _extract_plan(task, child))
                seen.add(succ)
                frontier.append(child)
        return result("unsolvable", None)

    # Best-first variants: A* (f = g + h) and greedy (f = h); FIFO tie-break.
    # A* reopens a state when a strictly cheaper path appears (h_add is not
    # consistent); greedy keeps the first path to each state.
    astar = cfg.strategy == "astar"
    tie = 0
    h0 = h_fn(task, root.state)
    if h0 == INFINITY:
        return result("unsolvable", None)
    open_heap: list[tuple[float, int, _Node]] = [
        ((root.g + h0) if astar else h0, tie, root)
    ]
    best_g: dict[frozenset, int] = {root.state: 0}
    while open_heap:
        if expansions >= cfg.max_expansions or time.monotonic() - start > cfg.time_limit:
            return result("resource-limit", None)
        _, _, node = heapq.heappop(open_heap)
        if node.g > best_g[node.state]:
            continue  # a cheaper path to this state was already pushed
        if is_goal(node.state):
            return result("plan", _extract_plan(task, node))
        expansions += 1
        for oi, op in enumerate(task.ops):
            if not op.pre <= node.state:
                continue
            succ = (node.state - op.delete) | op.add
            g = node.g + 1
            known = best_g.get(succ)
            if known is not None and (not astar or known <= g):
                continue
            h = h_fn(task, succ)
            if h == INFINITY:
                continue
            generated += 1
            best_g[succ] = g
            tie += 1
            child = _Node(succ, oi, node, g)
            heapq.heappush(open_heap, ((g + h) if astar else h, tie, child))
    return result("unsolvable", None)


class ExternalPlannerFailure(Exception):
    def __init__(self, message: str, output: str = "") -> None:
        super().__init__(message)
        self.output = output


def solve(
    domain: DomainModel,
    problem: ProblemSpec,
    cfg: SearchConfig | None = None,
    *,
    external_command: str | None = None,
    action_cap: int | None = None,
) -> PlanResult:
    """Ground, search (or call an external planner), and validate the plan."""
    if external_command is not None:
        from .external import run_external_planner

        plan_result = run_external_planner(domain, problem, external_command)
    else:
        kwargs = {} if action_cap is None else {"action_cap": action_cap}
        task = ground(domain, problem, **kwargs)
        plan_result = search(task, cfg)
    if plan_result.plan is not None:
        report = validate_plan(domain, problem, plan_result.plan)
        if not report.valid:
            raise RuntimeError(
                "planner returned a plan that fails validation: "
                f"{report.to_payload()['failures']}"
            )
    return plan_result
