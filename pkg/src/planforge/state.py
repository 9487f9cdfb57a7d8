"""Ground-state progression and plan validation.

This is the semantic authority the rest of the toolchain defers to: the
planner re-validates every plan it returns through here, and the feedback
translators render these reports into natural language.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .pddl import (
    ActionModel,
    DomainModel,
    Literal,
    Plan,
    PlanStep,
    ProblemSpec,
    format_literal,
    norm_name,
)

State = frozenset  # frozenset[Literal], ground positive facts, closed world

UNMET_PRECONDITION = "unmet-precondition"
INVALID_PARAMETER = "invalid-parameter"
UNMET_GOAL = "unmet-goal"


@dataclass(frozen=True)
class GroundAction:
    """An action schema with every variable bound to an object."""

    name: str
    binding: tuple[tuple[str, str], ...]  # (variable, object) in parameter order
    preconditions: tuple[Literal, ...]  # ground, mixed polarity
    add_effects: tuple[Literal, ...]  # ground positive
    del_effects: tuple[Literal, ...]  # ground positive

    @property
    def args(self) -> tuple[str, ...]:
        return tuple(obj for _, obj in self.binding)

    def precondition_sets(self) -> tuple[frozenset, frozenset]:
        """(positive, negated-atom) precondition sets, memoized; used for fast
        applicability filtering (reports still follow declaration order)."""
        cached = getattr(self, "_pre_sets", None)
        if cached is None:
            positive = frozenset(l for l in self.preconditions if l.positive)
            negative = frozenset(l.negate() for l in self.preconditions if not l.positive)
            cached = (positive, negative)
            object.__setattr__(self, "_pre_sets", cached)
        return cached

    def step(self) -> PlanStep:
        return PlanStep(self.name, self.args)

    def __str__(self) -> str:
        return str(self.step())


class NotApplicable(Exception):
    def __init__(self, action: GroundAction, unmet: tuple[Literal, ...]) -> None:
        rendered = ", ".join(format_literal(l) for l in unmet)
        super().__init__(f"action {action} is not applicable; unmet: {rendered}")
        self.action = action
        self.unmet = unmet


@dataclass(frozen=True)
class Failure:
    step_index: int
    kind: str
    unmet: tuple[Literal, ...] = ()
    detail: tuple[str, ...] = ()

    def to_payload(self) -> dict:
        return {
            "step": self.step_index,
            "kind": self.kind,
            "unmet": [format_literal(l) for l in self.unmet],
            "detail": list(self.detail),
        }


@dataclass(frozen=True)
class ValidationReport:
    verdict: str  # "valid" | "invalid"
    failures: tuple[Failure, ...]
    final_state: State
    not_evaluated: tuple[int, ...] = ()  # step indices never simulated

    @property
    def valid(self) -> bool:
        return self.verdict == "valid"

    def to_payload(self) -> dict:
        return {
            "verdict": self.verdict,
            "failures": [f.to_payload() for f in self.failures],
            "final_state": sorted(format_literal(l) for l in self.final_state),
            "not_evaluated": list(self.not_evaluated),
        }


def make_state(facts: Iterable[Literal]) -> State:
    return frozenset(facts)


def initial_state(problem: ProblemSpec) -> State:
    return frozenset(problem.init)


def unmet_preconditions(state: State, action: GroundAction) -> list[Literal]:
    """Positive preconditions absent from the state and negative ones present."""
    unmet: list[Literal] = []
    for lit in action.preconditions:
        if lit.positive:
            if lit not in state:
                unmet.append(lit)
        elif lit.negate() in state:
            unmet.append(lit)
    return unmet


def applicability(state: State, action: GroundAction) -> tuple[bool, list[Literal]]:
    unmet = unmet_preconditions(state, action)
    return (not unmet, unmet)


def apply_action(state: State, action: GroundAction) -> State:
    """Successor state; delete-before-add for literals in both effect lists."""
    applicable, unmet = applicability(state, action)
    if not applicable:
        raise NotApplicable(action, tuple(unmet))
    return (state - frozenset(action.del_effects)) | frozenset(action.add_effects)


def check_goal(state: State, goal: Iterable[Literal]) -> tuple[bool, list[Literal]]:
    unmet: list[Literal] = []
    for lit in goal:
        if lit.positive:
            if lit not in state:
                unmet.append(lit)
        elif lit.negate() in state:
            unmet.append(lit)
    return (not unmet, unmet)


def bind_action(schema: ActionModel, objects: Mapping[str, str]) -> GroundAction:
    """Ground a schema with a variable->object map (assumed already checked)."""
    binding = {norm_name(v): norm_name(objects[norm_name(v)]) for v, _ in schema.params}
    return GroundAction(
        name=norm_name(schema.name),
        binding=tuple((norm_name(v), binding[norm_name(v)]) for v, _ in schema.params),
        preconditions=tuple(l.substitute(binding) for l in schema.preconditions),
        add_effects=tuple(l.substitute(binding) for l in schema.add_effects),
        del_effects=tuple(l.substitute(binding) for l in schema.del_effects),
    )


def ground_step(
    domain: DomainModel, problem: ProblemSpec, step: PlanStep
) -> tuple[GroundAction | None, list[str]]:
    """Ground one plan step, or explain why its parameters are invalid."""
    schema = domain.action(step.action)
    if schema is None:
        return None, [f"unknown action '{norm_name(step.action)}'"]
    problems: list[str] = []
    if len(step.args) != schema.arity:
        problems.append(
            f"action '{norm_name(schema.name)}' takes {schema.arity} "
            f"argument(s), got {len(step.args)}"
        )
        return None, problems
    binding: dict[str, str] = {}
    for arg, (var, typ) in zip(step.args, schema.params):
        otype = problem.object_type(arg)
        if otype is None:
            problems.append(f"unknown object '{norm_name(arg)}'")
            continue
        if not domain.hierarchy.is_subtype(otype, typ):
            problems.append(
                f"object '{norm_name(arg)}' has type '{norm_name(otype)}' but "
                f"parameter '{norm_name(var)}' requires '{norm_name(typ)}'"
            )
        binding[norm_name(var)] = norm_name(arg)
    if problems:
        return None, problems
    for a, b in schema.inequalities:
        if binding.get(norm_name(a)) == binding.get(norm_name(b)):
            problems.append(
                f"parameters '{norm_name(a)}' and '{norm_name(b)}' must be "
                "bound to different objects"
            )
    if problems:
        return None, problems
    return bind_action(schema, binding), []


def validate_plan(domain: DomainModel, problem: ProblemSpec, plan: Plan) -> ValidationReport:
    """Simulate the plan from init and report every problem found.

    Simulation stops at the first step with an unmet precondition; steps with
    invalid parameters are reported and skipped without being simulated.  The
    goal is checked only if no step stopped the simulation.
    """
    state = initial_state(problem)
    failures: list[Failure] = []
    not_evaluated: list[int] = []
    stopped = False
    for idx, step in enumerate(plan.steps):
        if stopped:
            not_evaluated.append(idx)
            continue
        action, diagnostics = ground_step(domain, problem, step)
        if action is None:
            failures.append(Failure(idx, INVALID_PARAMETER, detail=tuple(diagnostics)))
            continue
        applicable, unmet = applicability(state, action)
        if not applicable:
            failures.append(Failure(idx, UNMET_PRECONDITION, unmet=tuple(unmet)))
            stopped = True
            continue
        state = apply_action(state, action)
    if not stopped:
        satisfied, unmet_goal = check_goal(state, problem.goal)
        if not satisfied:
            failures.append(Failure(len(plan.steps), UNMET_GOAL, unmet=tuple(unmet_goal)))
    verdict = "valid" if not failures else "invalid"
    return ValidationReport(verdict, tuple(failures), state, tuple(not_evaluated))


@dataclass(frozen=True)
class ErrorLocalization:
    failing_step: int | None
    unmet: tuple[Literal, ...]
    suspect_actions: tuple[str, ...]

    def to_payload(self) -> dict:
        return {
            "failing_step": self.failing_step,
            "unmet": [format_literal(l) for l in self.unmet],
            "suspect_actions": list(self.suspect_actions),
        }


def localize_error(
    domain: DomainModel, problem: ProblemSpec, suggested_plan: Plan
) -> ErrorLocalization:
    """Find the first failing step of a user-suggested plan.

    Returns the step index, its unmet literals, and the action schemas used up
    to and including that step, for human inspection of potentially erroneous
    models.  A plan that validates yields ``failing_step=None``.
    """
    report = validate_plan(domain, problem, suggested_plan)
    step_failures = [f for f in report.failures if f.kind != UNMET_GOAL]
    if not step_failures:
        goal_failures = [f for f in report.failures if f.kind == UNMET_GOAL]
        unmet = goal_failures[0].unmet if goal_failures else ()
        suspects = _schemas_up_to(suggested_plan, len(suggested_plan.steps) - 1) if goal_failures else ()
        return ErrorLocalization(None, tuple(unmet), tuple(suspects))
    first = step_failures[0]
    return ErrorLocalization(
        first.step_index,
        first.unmet,
        tuple(_schemas_up_to(suggested_plan, first.step_index)),
    )


def _schemas_up_to(plan: Plan, last_index: int) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for step in plan.steps[: last_index + 1]:
        key = norm_name(step.action)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out
