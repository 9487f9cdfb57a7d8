"""Helpers for authoring scripted construction replies.

Used to build deterministic transports and replay cassettes: given a target
action model, render the reply text an ideal model would produce in the
construction response format.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .pddl import ActionModel, DomainModel, PredicateDef, norm_name


def render_action_reply(
    model: ActionModel, new_predicates: Sequence[PredicateDef]
) -> str:
    lines: list[str] = ["Parameters:"]
    if model.params:
        for i, (var, typ) in enumerate(model.params, start=1):
            lines.append(f"{i}. {var} - {typ}: the {typ} parameter {var}")
    else:
        lines.append("None")
    lines.append("")
    lines.append("Preconditions:")
    lines.append("```")
    lines.append("(and")
    for lit in model.preconditions:
        lines.append(f"    {lit}")
    for a, b in model.inequalities:
        lines.append(f"    (not (= {a} {b}))")
    lines.append(")")
    lines.append("```")
    lines.append("")
    lines.append("Effects:")
    lines.append("```")
    lines.append("(and")
    for lit in model.add_effects:
        lines.append(f"    {lit}")
    for lit in model.del_effects:
        lines.append(f"    (not {lit})")
    lines.append(")")
    lines.append("```")
    lines.append("")
    lines.append("New Predicates:")
    if new_predicates:
        for i, pred in enumerate(new_predicates, start=1):
            lines.append(f"{i}. {pred.signature()}: {pred.description}")
    else:
        lines.append("None")
    return "\n".join(lines)


def construction_replies(
    domain: DomainModel,
    *,
    overrides: Mapping[str, ActionModel] | None = None,
    passes: int = 2,
) -> list[str]:
    """The ordered reply queue a faultless model would produce for a two-pass
    build of ``domain``: new predicates appear on first reference, pass 2
    reuses everything."""
    overrides = {norm_name(k): v for k, v in (overrides or {}).items()}
    defs = {norm_name(p.name): p for p in domain.predicates}
    replies: list[str] = []
    known: set[str] = set()
    for pass_number in range(1, passes + 1):
        for action in domain.actions:
            model = overrides.get(norm_name(action.name), action)
            fresh: list[PredicateDef] = []
            for _, lit in model.all_literals():
                key = norm_name(lit.predicate)
                if key not in known and key in defs:
                    known.add(key)
                    fresh.append(defs[key])
            replies.append(render_action_reply(model, fresh))
    return replies


MASHED_ITEM_FEEDBACK = (
    "there is a missing effect: the item is no longer pickupable after being mashed"
)


def flawed_mash(domain: DomainModel) -> ActionModel:
    """The household mash model with its delete effect dropped (a factual
    error a human catches; the audit stays clean)."""
    mash = domain.action("mash")
    assert mash is not None
    return ActionModel(
        name=mash.name,
        params=mash.params,
        preconditions=mash.preconditions,
        add_effects=mash.add_effects,
        del_effects=(),
        inequalities=mash.inequalities,
        provenance="seeded",
    )
