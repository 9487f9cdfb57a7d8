"""Downstream planning pipelines over a constructed domain.

Three routes: translate an instruction into a goal and hand it to the
built-in planner; validate plans proposed by an LLM planner and back-prompt
it with natural-language validation feedback (capped rounds); and translate
free-form plan text into admissible ground actions.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .builder import PredicateRegistry
from .correction import describe_literal, render_model_nl
from .gateway import Conversation, PromptTemplate, Transport, complete
from .messages import feedback_template
from .pddl import (
    DomainModel,
    Literal,
    PddlSyntaxError,
    Plan,
    PlanStep,
    ProblemSpec,
    UnsupportedFeature,
    format_literal,
    is_variable,
    norm_name,
    parse_condition_snippet,
)
from .pddl.blocks import _balanced_snippet, _FENCE_RE
from .planner import PlanResult, SearchConfig, solve
from .state import (
    INVALID_PARAMETER,
    UNMET_GOAL,
    UNMET_PRECONDITION,
    ValidationReport,
    validate_plan,
)

DEFAULT_FEEDBACK_CAP = 8

_ARTICLES = {"the", "a", "an"}


class UntranslatableGoal(Exception):
    """The goal reply failed validation against the registry and objects."""

    def __init__(self, raw_reply: str, violation: str) -> None:
        super().__init__(f"goal translation rejected: {violation}")
        self.raw_reply = raw_reply
        self.violation = violation


@dataclass(frozen=True)
class Instruction:
    """A user command plus the (goal-less) task context it refers to."""

    text: str
    problem: ProblemSpec


@dataclass(frozen=True)
class LoopOutcome:
    status: str  # "success" | "exhausted" | "invalid-translation"
    rounds: int
    plan: Plan | None
    duplicate_plans: bool
    conversation_id: str
    feedback_messages: int

    def to_payload(self) -> dict:
        return {
            "status": self.status,
            "rounds": self.rounds,
            "plan": [str(s) for s in self.plan.steps] if self.plan else None,
            "duplicate_plans": self.duplicate_plans,
            "conversation": self.conversation_id,
            "feedback_messages": self.feedback_messages,
        }


def _object_lines(problem: ProblemSpec) -> str:
    return "\n".join(f"- {norm_name(n)} ({norm_name(t)})" for n, t in problem.objects)


def translate_goal(
    instruction: Instruction,
    registry: PredicateRegistry,
    templates: dict[str, PromptTemplate],
    transport: Transport,
) -> tuple[Literal, ...]:
    """LLM-translate an instruction into a ground goal conjunction.

    Every predicate must exist in the registry and every object must be
    declared, with compatible types; otherwise the attempt is rejected.
    """
    problem = instruction.problem
    prompt = templates["goal_translation"].render(
        {
            "instruction": instruction.text,
            "predicate_list": registry.render_lines(),
            "object_list": _object_lines(problem),
        }
    )
    conversation = Conversation(
        f"goal-{norm_name(problem.name)}", tags={"kind": "goal-translation"}
    )
    conversation.append("user", prompt)
    reply = complete(conversation, transport).content

    body = reply
    fenced = _FENCE_RE.search(body)
    if fenced:
        body = fenced.group(1)
    snippet = _balanced_snippet(body)
    if snippet is None:
        raise UntranslatableGoal(reply, "no PDDL expression in the reply")
    try:
        literals, inequalities = parse_condition_snippet(snippet)
    except (PddlSyntaxError, UnsupportedFeature) as exc:
        raise UntranslatableGoal(reply, str(exc)) from exc
    if inequalities:
        raise UntranslatableGoal(reply, "inequality constraints are not goal conditions")
    if not literals:
        raise UntranslatableGoal(reply, "the goal conjunction is empty")

    hierarchy = registry.hierarchy
    for lit in literals:
        entry = registry.get(lit.predicate)
        if entry is None:
            raise UntranslatableGoal(reply, f"unknown predicate '{norm_name(lit.predicate)}'")
        if len(lit.args) != entry.arity:
            raise UntranslatableGoal(
                reply,
                f"predicate '{norm_name(lit.predicate)}' takes {entry.arity} "
                f"argument(s), got {len(lit.args)}",
            )
        for arg, (_, expected) in zip(lit.args, entry.params):
            if is_variable(arg):
                raise UntranslatableGoal(reply, f"goal literal {lit} is not ground")
            otype = problem.object_type(arg)
            if otype is None:
                raise UntranslatableGoal(reply, f"unknown object '{norm_name(arg)}'")
            if not hierarchy.is_subtype(otype, expected):
                raise UntranslatableGoal(
                    reply,
                    f"object '{norm_name(arg)}' has type '{norm_name(otype)}' but "
                    f"'{norm_name(lit.predicate)}' requires '{norm_name(expected)}'",
                )
    return tuple(literals)


def classical_pipeline(
    instruction: Instruction,
    domain: DomainModel,
    registry: PredicateRegistry,
    templates: dict[str, PromptTemplate],
    transport: Transport,
    cfg: SearchConfig | None = None,
    *,
    external_command: str | None = None,
    run_log: Callable[[dict], None] | None = None,
    task_id: str = "",
) -> PlanResult:
    """Instruction -> goal -> planner (built-in or external) -> validated plan."""
    start = time.monotonic()
    goal = translate_goal(instruction, registry, templates, transport)
    problem = instruction.problem.with_goal(goal)
    result = solve(domain, problem, cfg, external_command=external_command)
    if run_log is not None:
        run_log(
            {
                "task": task_id or norm_name(problem.name),
                "mode": "classical",
                "goal": [format_literal(l) for l in goal],
                "rounds": 1,
                "outcome": result.outcome,
                "plan": [str(s) for s in result.plan.steps] if result.plan else None,
                "stats": result.stats.to_payload(),
                "wall_time": round(time.monotonic() - start, 6),
            }
        )
    return result


def translate_validation_feedback(
    report: ValidationReport, registry: PredicateRegistry
) -> str:
    """Deterministic natural-language rendering of a validation report.

    Step numbers are 1-based as presented to the LLM planner.  A valid report
    renders as empty text.
    """
    if report.valid:
        return ""
    messages: list[str] = []
    for failure in report.failures:
        if failure.kind == UNMET_PRECONDITION:
            items = "\n".join(
                f"- {_describe_condition(lit, registry)}" for lit in failure.unmet
            )
            messages.append(
                feedback_template("unmet_precondition").format(
                    step=failure.step_index + 1, items=items
                )
            )
        elif failure.kind == UNMET_GOAL:
            items = "\n".join(
                f"- {_describe_condition(lit, registry)}" for lit in failure.unmet
            )
            messages.append(feedback_template("unmet_goal").format(items=items))
        elif failure.kind == INVALID_PARAMETER:
            messages.append(
                feedback_template("invalid_parameter").format(
                    step=failure.step_index + 1, detail="; ".join(failure.detail)
                )
            )
    return "\n\n".join(messages)


def _describe_condition(lit: Literal, registry: PredicateRegistry) -> str:
    body = describe_literal(lit, registry)
    if lit.positive:
        return body
    return f"it is not the case that: {body}"


@dataclass(frozen=True)
class ActionTranslation:
    plan: Plan | None
    error: str | None
    gateway_calls: int = 0

    @property
    def ok(self) -> bool:
        return self.plan is not None


_STEP_PREFIX_RE = re.compile(r"^\s*(?:step\s*)?\d+\s*[.):-]\s*", re.IGNORECASE)


def _normalize_line(line: str) -> str:
    line = _STEP_PREFIX_RE.sub("", line.strip())
    return line.strip()


def _exact_step(
    line: str, domain: DomainModel, problem: ProblemSpec
) -> PlanStep | None:
    match = re.fullmatch(r"\(([^()]+)\)", line.strip())
    if not match:
        return None
    tokens = match.group(1).split()
    if not tokens:
        return None
    schema = domain.action(tokens[0])
    if schema is None or len(tokens) - 1 != schema.arity:
        return None
    args = tuple(norm_name(t) for t in tokens[1:])
    if any(problem.object_type(a) is None for a in args):
        return None
    return PlanStep(norm_name(schema.name), args)


def _fuzzy_step(line: str, domain: DomainModel, problem: ProblemSpec) -> PlanStep | None:
    """Case, whitespace, punctuation and article normalization only; anything
    heavier goes through the gateway translation template."""
    cleaned = re.sub(r"[(),.]", " ", line.lower())
    tokens = [norm_name(t) for t in cleaned.split() if t not in _ARTICLES]
    if not tokens:
        return None
    schema = domain.action(tokens[0])
    if schema is None:
        return None
    objects = {norm_name(o) for o, _ in problem.objects}
    args = [t for t in tokens[1:] if t in objects]
    if len(args) != schema.arity:
        return None
    return PlanStep(norm_name(schema.name), tuple(args))


def translate_actions(
    raw_plan: str,
    domain: DomainModel,
    problem: ProblemSpec,
    templates: dict[str, PromptTemplate] | None = None,
    transport: Transport | None = None,
) -> ActionTranslation:
    """Turn an LLM planner completion into a Plan of admissible actions.

    Per line: exact canonical match, then fuzzy normalization, then a gateway
    translation call.  A line that stays unresolvable yields the regeneration
    message naming that step (1-based) instead of a plan.
    """
    text = raw_plan
    fenced = _FENCE_RE.search(text)
    if fenced:
        text = fenced.group(1)
    lines: list[str] = []
    for raw in text.splitlines():
        line = _normalize_line(raw)
        if not line or line.startswith("```"):
            continue
        if line.endswith(":") and "(" not in line:
            continue  # "Plan:" style preamble
        lines.append(line)

    steps: list[PlanStep] = []
    gateway_calls = 0
    for index, line in enumerate(lines):
        step = _exact_step(line, domain, problem) or _fuzzy_step(line, domain, problem)
        if step is None and templates is not None and transport is not None:
            gateway_calls += 1
            prompt = templates["action_translation"].render(
                {
                    "action_list": "\n".join(
                        f"- ({norm_name(a.name)} "
                        + " ".join(f"{v} - {norm_name(t)}" for v, t in a.params)
                        + ")"
                        if a.params
                        else f"- ({norm_name(a.name)})"
                        for a in domain.actions
                    ),
                    "object_list": _object_lines(problem),
                    "line": line,
                }
            )
            conversation = Conversation(
                f"translate-{index}", tags={"kind": "action-translation"}
            )
            conversation.append("user", prompt)
            reply = complete(conversation, transport).content
            first_line = next(
                (l.strip() for l in reply.splitlines() if l.strip()), ""
            )
            step = _exact_step(first_line, domain, problem) or _fuzzy_step(
                first_line, domain, problem
            )
        if step is None:
            return ActionTranslation(
                None,
                feedback_template("invalid_output").format(step=index + 1),
                gateway_calls,
            )
        steps.append(step)
    return ActionTranslation(Plan(tuple(steps)), None, gateway_calls)


def steps_in_order(plan: Plan, first_action: str, then_action: str) -> bool:
    """Post-check for ordering-constraint instructions: every occurrence of
    ``first_action`` precedes every occurrence of ``then_action``.  Ordering
    wishes are passed to the LLM planner verbatim, never encoded into PDDL."""
    first_key, then_key = norm_name(first_action), norm_name(then_action)
    last_first = None
    first_then = None
    for index, step in enumerate(plan.steps):
        key = norm_name(step.action)
        if key == first_key:
            last_first = index
        if key == then_key and first_then is None:
            first_then = index
    if last_first is None or first_then is None:
        return False
    return last_first < first_then


def build_planner_prompt(
    instruction: Instruction,
    domain: DomainModel,
    registry: PredicateRegistry,
    templates: dict[str, PromptTemplate],
    examples: str,
) -> str:
    action_descriptions = "\n\n".join(
        render_model_nl(action, registry) for action in domain.actions
    )
    init_description = "\n".join(
        f"- {describe_literal(lit, registry)}" for lit in instruction.problem.init
    )
    return templates["llm_planner"].render(
        {
            "domain_name": norm_name(domain.name),
            "action_descriptions": action_descriptions,
            "examples": examples,
            "init_description": init_description,
            "instruction": instruction.text,
        }
    )


def llm_plan_loop(
    instruction: Instruction,
    domain: DomainModel,
    registry: PredicateRegistry,
    templates: dict[str, PromptTemplate],
    transport: Transport,
    *,
    cap: int = DEFAULT_FEEDBACK_CAP,
    examples: str = "",
    goal: Sequence[Literal] | None = None,
    run_log: Callable[[dict], None] | None = None,
    task_id: str = "",
) -> tuple[LoopOutcome, Conversation]:
    """Back-prompted LLM planning: complete, translate, validate, re-prompt.

    ``rounds`` counts plan attempts; the loop gives up after ``cap`` attempts
    and flags loops that keep regenerating an identical plan.
    """
    start = time.monotonic()
    conversation = Conversation(
        f"llm-plan-{norm_name(instruction.problem.name)}", tags={"kind": "llm-planner"}
    )
    if goal is None:
        try:
            goal = translate_goal(instruction, registry, templates, transport)
        except UntranslatableGoal:
            outcome = LoopOutcome(
                "invalid-translation", 0, None, False, conversation.id, 0
            )
            if run_log is not None:
                run_log(_loop_record(task_id, instruction, outcome, start))
            return outcome, conversation
    problem = instruction.problem.with_goal(tuple(goal))

    prompt = build_planner_prompt(instruction, domain, registry, templates, examples)
    conversation.append("user", prompt)

    seen_plans: set[tuple] = set()
    duplicates = False
    feedback_messages = 0
    outcome: LoopOutcome | None = None
    for attempt in range(1, cap + 1):
        reply = complete(conversation, transport).content
        translation = translate_actions(reply, domain, problem, templates, transport)
        if translation.ok:
            plan_key = translation.plan.key()
            if plan_key in seen_plans:
                duplicates = True
            seen_plans.add(plan_key)
            report = validate_plan(domain, problem, translation.plan)
            if report.valid:
                outcome = LoopOutcome(
                    "success",
                    attempt,
                    translation.plan,
                    duplicates,
                    conversation.id,
                    feedback_messages,
                )
                break
            feedback = translate_validation_feedback(report, registry)
        else:
            feedback = translation.error or ""
        if attempt == cap:
            outcome = LoopOutcome(
                "exhausted", cap, None, duplicates, conversation.id, feedback_messages
            )
            break
        feedback_messages += 1
        conversation.append("user", feedback)
    assert outcome is not None
    if run_log is not None:
        run_log(_loop_record(task_id, instruction, outcome, start))
    return outcome, conversation


def _loop_record(
    task_id: str, instruction: Instruction, outcome: LoopOutcome, start: float
) -> dict:
    return {
        "task": task_id or norm_name(instruction.problem.name),
        "mode": "llm",
        "rounds": outcome.rounds,
        "outcome": outcome.status,
        "plan": [str(s) for s in outcome.plan.steps] if outcome.plan else None,
        "duplicate_plans": outcome.duplicate_plans,
        "wall_time": round(time.monotonic() - start, 6),
    }
