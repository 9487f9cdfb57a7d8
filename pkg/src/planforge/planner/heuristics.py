"""Delete-relaxation heuristics (additive and max cost fixpoints).

Implemented as a generalized Dijkstra sweep: facts are finalized in
nondecreasing cost order, and an action fires once its last precondition is
finalized, so the accumulated sum (h_add) or the last finalized cost (h_max)
is exact for the relaxed task.  Unit action costs throughout.
"""

from __future__ import annotations

import heapq
from typing import Iterable

from .grounding import GroundTask

INFINITY = float("inf")


def _relaxed_goal_cost(task: GroundTask, state: Iterable[int], additive: bool) -> float:
    fact_to_ops, pre_counts = task.relaxation_index()
    costs: list[float] = [INFINITY] * task.n_facts
    counters = list(pre_counts)
    acc: list[float] = [0.0] * len(task.ops)
    heap: list[tuple[float, int]] = []
    for f in state:
        heap.append((0.0, f))
    heapq.heapify(heap)

    def fire(op_index: int, op_cost: float) -> None:
        new_cost = op_cost + 1.0
        for g in task.ops[op_index].add:
            if new_cost < costs[g]:
                heapq.heappush(heap, (new_cost, g))

    for oi, count in enumerate(counters):
        if count == 0:
            fire(oi, 0.0)

    goal_remaining = set(task.goal)
    while heap and goal_remaining:
        cost, fact = heapq.heappop(heap)
        if costs[fact] != INFINITY:
            continue
        costs[fact] = cost
        goal_remaining.discard(fact)
        for oi in fact_to_ops[fact]:
            counters[oi] -= 1
            if additive:
                acc[oi] += cost
            else:
                acc[oi] = cost  # pops are nondecreasing, so this is the max
            if counters[oi] == 0:
                fire(oi, acc[oi])

    if goal_remaining:
        return INFINITY
    goal_costs = [costs[g] for g in task.goal]
    if not goal_costs:
        return 0.0
    return sum(goal_costs) if additive else max(goal_costs)


def h_add(task: GroundTask, state: Iterable[int]) -> float:
    """Additive cost fixpoint; infinity iff some goal fact is relaxed-unreachable."""
    return _relaxed_goal_cost(task, state, additive=True)


def h_max(task: GroundTask, state: Iterable[int]) -> float:
    """Max cost fixpoint; an admissible estimate of the true goal distance."""
    return _relaxed_goal_cost(task, state, additive=False)


def h_blind(task: GroundTask, state: Iterable[int]) -> float:
    state_set = state if isinstance(state, (set, frozenset)) else set(state)
    return 0.0 if task.goal <= state_set else 1.0
