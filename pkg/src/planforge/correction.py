"""The correction interface layer.

Models are rendered into deterministic natural language for inspection,
corrective feedback (from the auditor, a human, or plan validation) is
appended to the stored construction dialogue, and the revised model is parsed
out of the continuation.  Every event is logged for the feedback ledger.
"""

from __future__ import annotations

import difflib
import re
from dataclasses import dataclass
from .auditor import audit
from .builder import (
    ConstructionSession,
    PredicateRegistry,
    complete_and_parse,
    merge_predicates,
)
from .pddl import ActionModel, Literal, is_variable, norm_name
from .pddl.printer import format_action

FEEDBACK_SOURCES = ("auditor", "human", "plan-validation")


class MissingDescription(Exception):
    def __init__(self, predicate: str) -> None:
        super().__init__(
            f"predicate '{predicate}' has no natural-language description"
        )
        self.predicate = predicate


@dataclass
class FeedbackEvent:
    source: str  # "auditor" | "human" | "plan-validation"
    target_action: str
    text: str
    target: str = ""  # optional finding reference; defaults to the text itself
    revision_index: int | None = None
    introduced_new_errors: bool = False
    resolved_target: bool = True

    def __post_init__(self) -> None:
        if self.source not in FEEDBACK_SOURCES:
            raise ValueError(f"unknown feedback source '{self.source}'")
        if not self.text.strip():
            raise ValueError("feedback text must be non-empty")

    def effective_target(self) -> str:
        return self.target or " ".join(self.text.split())

    def to_payload(self) -> dict:
        return {
            "source": self.source,
            "action": self.target_action,
            "text": self.text,
            "target": self.target,
            "revision": self.revision_index,
            "introduced_new_errors": self.introduced_new_errors,
            "resolved_target": self.resolved_target,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "FeedbackEvent":
        event = cls(
            source=payload["source"],
            target_action=payload["action"],
            text=payload["text"],
            target=payload.get("target", ""),
        )
        event.revision_index = payload.get("revision")
        event.introduced_new_errors = bool(payload.get("introduced_new_errors", False))
        event.resolved_target = bool(payload.get("resolved_target", True))
        return event


@dataclass(frozen=True)
class ModelRevision:
    action: str
    before: ActionModel
    after: ActionModel
    diff: str

    @property
    def changed(self) -> bool:
        return bool(self.diff)

    def to_payload(self) -> dict:
        return {
            "action": self.action,
            "before": format_action(self.before),
            "after": format_action(self.after),
            "diff": self.diff,
        }


def action_diff(before: ActionModel, after: ActionModel) -> str:
    """Line diff over the canonical action rendering (stable by construction)."""
    before_lines = format_action(before).splitlines()
    after_lines = format_action(after).splitlines()
    diff = difflib.unified_diff(
        before_lines, after_lines, fromfile="before", tofile="after", lineterm="", n=1
    )
    return "\n".join(diff)


def _strip_truth_prefix(description: str) -> str:
    lowered = description.lower()
    for prefix in ("true if ", "true when "):
        if lowered.startswith(prefix):
            return description[len(prefix):]
    return description


def describe_literal(lit: Literal, registry: PredicateRegistry) -> str:
    """Substitute the literal's arguments into its predicate description."""
    entry = registry.get(lit.predicate)
    if entry is None or not entry.description:
        raise MissingDescription(norm_name(lit.predicate))
    text = _strip_truth_prefix(entry.description)
    # Longest variable names first so ?x does not clobber ?x2.
    pairs = sorted(
        zip((v for v, _ in entry.params), lit.args),
        key=lambda p: len(p[0]),
        reverse=True,
    )
    for var, arg in pairs:
        replacement = arg if is_variable(arg) else norm_name(arg)
        text = re.sub(re.escape(var) + r"(?![\w-])", lambda _m: replacement, text)
    return text


def describe_fact_lines(facts, registry: PredicateRegistry) -> str:
    lines = [f"- {describe_literal(lit, registry)}" for lit in facts]
    return "\n".join(lines)


def llm_polish(pddl_text: str, registry: PredicateRegistry, templates, transport) -> str:
    """Optional LLM-polished wording of a PDDL snippet or message.

    The deterministic renderings stay canonical (tests never depend on
    generative phrasing); this exists for live operation only.
    """
    from .gateway import Conversation, complete

    prompt = templates["pddl_to_nl"].render(
        {"predicate_list": registry.render_lines(), "pddl": pddl_text}
    )
    conversation = Conversation("polish", tags={"kind": "pddl-to-nl"})
    conversation.append("user", prompt)
    return complete(conversation, transport).content


def render_model_nl(model: ActionModel, registry: PredicateRegistry) -> str:
    """Deterministic natural-language rendering of one action model.

    One line per parameter, precondition, and effect; predicate descriptions
    come from the registry with the literal's arguments substituted in.
    """
    lines = [f"Action: {norm_name(model.name)}"]
    if model.params:
        lines.append("Parameters:")
        for var, typ in model.params:
            lines.append(f"- {var}: an object of type {typ}")
    else:
        lines.append("This action has no parameters.")
    if model.preconditions or model.inequalities:
        lines.append("Preconditions (all must hold before the action):")
        for lit in model.preconditions:
            body = describe_literal(lit, registry)
            if lit.positive:
                lines.append(f"- {body}")
            else:
                lines.append(f"- it is not the case that: {body}")
        for a, b in model.inequalities:
            lines.append(f"- {a} and {b} are different objects")
    else:
        lines.append("This action has no preconditions.")
    if model.add_effects or model.del_effects:
        lines.append("Effects (what changes once the action is executed):")
        for lit in model.add_effects:
            lines.append(f"- it becomes true that: {describe_literal(lit, registry)}")
        for lit in model.del_effects:
            lines.append(f"- it becomes false that: {describe_literal(lit, registry)}")
    else:
        lines.append("This action has no effects.")
    return "\n".join(lines)


def apply_feedback(
    session: ConstructionSession, action: str, event: FeedbackEvent
) -> ModelRevision:
    """Replay-and-continue: append the feedback to the action's construction
    dialogue, parse the revised model out of the reply, and re-audit it."""
    action_key = norm_name(action)
    conversation = session.conversation_for(action_key)
    before = session.models[action_key]
    pre_report = audit(
        before,
        session.registry.entries,
        session.config.hierarchy,
        config=session.config.audit,
    )

    conversation.append("user", event.text)
    after, new_predicates = complete_and_parse(
        session, conversation, action_key, session.registry
    )
    session.registry, _ = merge_predicates(session.registry, new_predicates, action_key)
    post_report = audit(
        after,
        session.registry.entries,
        session.config.hierarchy,
        config=session.config.audit,
    )

    revision = ModelRevision(action_key, before, after, action_diff(before, after))
    session.models[action_key] = after
    session.revisions.append(revision)
    event.revision_index = session.revision_base + len(session.revisions) - 1

    pre_messages = {f.message for f in pre_report.findings}
    post_messages = {f.message for f in post_report.findings}
    event.introduced_new_errors = bool(post_messages - pre_messages)
    if event.source == "auditor" or event.target:
        # A targeted finding is resolved when its message disappears.
        event.resolved_target = event.effective_target() not in post_messages
    else:
        event.resolved_target = revision.changed
    session.events.append(event)
    return revision


def feedback_ledger(session: ConstructionSession) -> dict:
    """Counts derived solely from the event log.

    ``extra_rounds`` counts events whose predecessor on the same action
    targeted the same finding without resolving it, plus events cleaning up
    after a revision that introduced new errors.
    """
    per_action: dict[str, dict[str, int]] = {}
    previous: dict[str, FeedbackEvent] = {}
    extra_rounds = 0
    total_human = 0
    for event in session.events:
        counts = per_action.setdefault(
            event.target_action, {source: 0 for source in FEEDBACK_SOURCES}
        )
        counts[event.source] += 1
        if event.source != "auditor":
            if event.source == "human":
                total_human += 1
            prev = previous.get(event.target_action)
            if prev is not None and (
                (
                    prev.effective_target() == event.effective_target()
                    and not prev.resolved_target
                )
                or prev.introduced_new_errors
            ):
                extra_rounds += 1
            previous[event.target_action] = event
    return {
        "per_action": per_action,
        "total_human_messages": total_human,
        "errors_resolved": max(total_human - extra_rounds, 0),
        "extra_rounds": extra_rounds,
    }
