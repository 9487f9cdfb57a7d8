"""Action-by-action domain construction.

One conversation per action per pass; newly defined predicates accumulate in
a registry that is rendered into every subsequent prompt, and the whole pass
is repeated once so later predicates can inform earlier actions.  Syntax
problems found by the auditor are fed back to the model a bounded number of
times before a reply is accepted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from .auditor import (
    AuditConfig,
    Finding,
    audit,
    keyword_findings,
    predicate_clash_findings,
    render_feedback,
    type_clash_findings,
)
from .gateway import Conversation, PromptTemplate, Transport, complete
from .pddl import (
    ActionModel,
    DomainModel,
    MissingSection,
    PredicateDef,
    SnippetSyntaxError,
    TypeHierarchy,
    norm_name,
    parse_action_block,
)
from .pddl.blocks import split_sections

if TYPE_CHECKING:
    from .correction import FeedbackEvent


class ParseFailureAfterRetries(Exception):
    def __init__(self, action: str, rounds: int, last_error: Exception) -> None:
        super().__init__(
            f"the model kept violating the output format for action "
            f"'{action}' after {rounds} feedback round(s): {last_error}"
        )
        self.action = action
        self.rounds = rounds
        self.last_error = last_error


class DomainBuildError(Exception):
    pass


@dataclass(frozen=True)
class ActionDescription:
    """A skill with its short natural-language description."""

    name: str
    text: str
    extra_info: str = ""

    def prompt_text(self) -> str:
        if self.extra_info:
            return (
                f"{self.text}\n\nAdditional information from the user: "
                f"{self.extra_info}"
            )
        return self.text


@dataclass
class PredicateRegistry:
    """The actively maintained predicate list with NL descriptions."""

    hierarchy: TypeHierarchy
    entries: tuple[PredicateDef, ...] = ()
    origins: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def get(self, name: str) -> PredicateDef | None:
        key = norm_name(name)
        for entry in self.entries:
            if norm_name(entry.name) == key:
                return entry
        return None

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def record_use(self, predicate: str, action: str) -> None:
        key = norm_name(predicate)
        existing = self.origins.get(key, ())
        if norm_name(action) not in tuple(norm_name(a) for a in existing):
            self.origins[key] = existing + (action,)

    def render_lines(self) -> str:
        """Prompt rendering: one ``(signature): description`` line per entry."""
        if not self.entries:
            return "No predicate has been defined yet."
        return "\n".join(
            f"{i}. {p.signature()}: {p.description or 'no description given'}"
            for i, p in enumerate(self.entries, start=1)
        )


def merge_predicates(
    registry: PredicateRegistry,
    new_predicates: Sequence[PredicateDef],
    origin_action: str = "",
) -> tuple[PredicateRegistry, list[Finding]]:
    """Append genuinely new predicates; collisions come back as findings.

    Nothing is silently merged: a new predicate whose name clashes with an
    existing predicate or an object type stays out of the registry and its
    finding feeds the correction loop.
    """
    findings = type_clash_findings(origin_action, new_predicates, registry.hierarchy)
    findings += predicate_clash_findings(
        origin_action, new_predicates, registry.entries
    )
    clashing = {norm_name(f.snippet.split(" ")[0].lstrip("(").rstrip(")")) for f in findings}
    appended: list[PredicateDef] = []
    seen = {norm_name(p.name) for p in registry.entries}
    for pred in new_predicates:
        key = norm_name(pred.name)
        if key in clashing or key in seen:
            continue
        seen.add(key)
        appended.append(pred)
    new_registry = PredicateRegistry(
        registry.hierarchy,
        registry.entries + tuple(appended),
        dict(registry.origins),
    )
    for pred in appended:
        if origin_action:
            new_registry.record_use(pred.name, origin_action)
    return new_registry, findings


@dataclass
class SessionConfig:
    domain_name: str
    description: str
    hierarchy: TypeHierarchy
    actions: tuple[ActionDescription, ...]
    templates: dict[str, PromptTemplate]
    audit: AuditConfig = field(default_factory=AuditConfig)
    max_feedback_rounds: int = 3
    planner_examples: str = ""


@dataclass
class RegistrySnapshot:
    label: str
    entries: tuple[PredicateDef, ...]


class ConstructionSession:
    """Mutable state of one construction-and-correction lifecycle."""

    def __init__(self, config: SessionConfig, transport: Transport) -> None:
        self.config = config
        self.transport = transport
        self.registry = PredicateRegistry(config.hierarchy)
        self.pass_number = 0
        self.conversations: dict[str, Conversation] = {}
        self.action_conversation: dict[str, str] = {}  # action -> latest conv id
        self.models: dict[str, ActionModel] = {}  # action -> current model
        self.pass_models: dict[tuple[int, str], ActionModel] = {}
        self.snapshots: list[RegistrySnapshot] = []
        self.events: list["FeedbackEvent"] = []
        self.revisions: list = []
        self.revision_base = 0  # revisions already persisted before hydration
        self.draft: DomainModel | None = None

    def new_conversation(self, action: str, pass_number: int) -> Conversation:
        conv_id = f"{norm_name(action)}-pass{pass_number}"
        conv = Conversation(
            conv_id, tags={"action": norm_name(action), "pass": str(pass_number)}
        )
        self.conversations[conv_id] = conv
        self.action_conversation[norm_name(action)] = conv_id
        return conv

    def conversation_for(self, action: str) -> Conversation:
        conv_id = self.action_conversation.get(norm_name(action))
        if conv_id is None:
            raise KeyError(f"no construction conversation for action '{action}'")
        return self.conversations[conv_id]

    def snapshot_registry(self, label: str) -> None:
        self.snapshots.append(RegistrySnapshot(label, self.registry.entries))

    def record_auditor_feedback(self, action: str, text: str) -> None:
        from .correction import FeedbackEvent

        self.events.append(
            FeedbackEvent(source="auditor", target_action=norm_name(action), text=text)
        )


def _build_construction_prompt(
    session: ConstructionSession, action: ActionDescription, registry: PredicateRegistry
) -> str:
    templates = session.config.templates
    instructions = templates["construction_instructions"].body
    demonstrations = templates["demonstrations"].body
    return templates["construct_action"].render(
        {
            "task_instructions": instructions,
            "demonstrations": demonstrations,
            "domain_description": session.config.description,
            "action_description": action.prompt_text(),
            "predicate_list": registry.render_lines(),
        }
    )


def _model_from_block(name: str, block, provenance: str) -> ActionModel:
    return ActionModel(
        name=name,
        params=tuple(block.params),
        preconditions=tuple(block.preconditions),
        add_effects=tuple(block.add_effects),
        del_effects=tuple(block.del_effects),
        inequalities=tuple(block.inequalities),
        provenance=provenance,
    )


def complete_and_parse(
    session: ConstructionSession,
    conversation: Conversation,
    action_name: str,
    registry: PredicateRegistry,
) -> tuple[ActionModel, list[PredicateDef]]:
    """Get a reply and parse it, feeding syntax findings back a bounded number
    of times.  Returns the parsed model even if audit findings remain (those
    are correction-loop data); raises only on persistent format violations.
    """
    config = session.config
    reply = complete(conversation, session.transport).content
    last_error: Exception | None = None
    for round_number in range(config.max_feedback_rounds + 1):
        feedback: str | None = None
        sections = split_sections(reply)
        found_keywords = keyword_findings(
            action_name,
            {k: v for k, v in sections.items() if k in ("preconditions", "effects")},
            config.audit.unsupported_keywords,
        )
        if found_keywords:
            feedback = render_feedback(found_keywords)
            last_error = SnippetSyntaxError(
                "Preconditions", Exception(found_keywords[0].message)
            )
        else:
            try:
                block = parse_action_block(reply)
            except (MissingSection, SnippetSyntaxError) as exc:
                feedback = str(exc)
                last_error = exc
            else:
                provenance = f"{conversation.id}#{len(conversation.messages) - 1}"
                model = _model_from_block(action_name, block, provenance)
                report = audit(
                    model,
                    registry.entries,
                    config.hierarchy,
                    new_predicates=block.new_predicates,
                    config=config.audit,
                )
                if report.clean or round_number == config.max_feedback_rounds:
                    return model, block.new_predicates
                feedback = render_feedback(report.findings)
        if round_number == config.max_feedback_rounds:
            raise ParseFailureAfterRetries(
                action_name, config.max_feedback_rounds, last_error or Exception(feedback)
            )
        session.record_auditor_feedback(action_name, feedback)
        conversation.append("user", feedback)
        reply = complete(conversation, session.transport).content
    raise AssertionError("unreachable")


def construct_action(
    session: ConstructionSession,
    action: ActionDescription,
    registry: PredicateRegistry,
    *,
    pass_number: int = 1,
) -> tuple[ActionModel, list[PredicateDef]]:
    """Prompt the model for one action and parse the reply into a model."""
    conversation = session.new_conversation(action.name, pass_number)
    prompt = _build_construction_prompt(session, action, registry)
    conversation.append("user", prompt)
    return complete_and_parse(session, conversation, norm_name(action.name), registry)


def build_domain(session: ConstructionSession) -> tuple[DomainModel, PredicateRegistry]:
    """Run the full two-pass construction over every configured action."""
    config = session.config
    for pass_number in (1, 2):
        session.pass_number = pass_number
        for action in config.actions:
            model, new_predicates = construct_action(
                session, action, session.registry, pass_number=pass_number
            )
            session.registry, _findings = merge_predicates(
                session.registry, new_predicates, action.name
            )
            for _, lit in model.all_literals():
                session.registry.record_use(lit.predicate, action.name)
            session.pass_models[(pass_number, norm_name(action.name))] = model
            session.models[norm_name(action.name)] = model
            session.snapshot_registry(f"pass{pass_number}:{norm_name(action.name)}")
    draft = assemble_domain(session)
    session.draft = draft
    return draft, session.registry


def assemble_domain(session: ConstructionSession) -> DomainModel:
    """Build the draft domain from the current per-action models.

    Every referenced predicate must be registered with a non-empty
    description; that is the contract the correction loop relies on.
    """
    config = session.config
    actions = []
    missing: list[str] = []
    for action_desc in config.actions:
        model = session.models.get(norm_name(action_desc.name))
        if model is None:
            raise DomainBuildError(f"no model for action '{action_desc.name}'")
        actions.append(model)
        for _, lit in model.all_literals():
            entry = session.registry.get(lit.predicate)
            if entry is None or not entry.description:
                missing.append(f"{norm_name(lit.predicate)} (used by {model.name})")
    if missing:
        raise DomainBuildError(
            "predicates without a registered description: " + ", ".join(sorted(set(missing)))
        )
    return DomainModel(
        config.domain_name,
        config.hierarchy,
        session.registry.entries,
        tuple(actions),
    )
