"""Canonical PDDL printer: the single serialization authority.

Output is lowercase, two-space indented, and preserves declaration order, so
printing is deterministic and ``parse(print(x)) == x`` holds structurally.
Predicate descriptions are emitted as trailing ``;`` comments, which the
parser reads back.
"""

from __future__ import annotations

from .model import (
    ActionModel,
    DomainModel,
    Literal,
    Plan,
    ProblemSpec,
    norm_name,
)

_REQUIREMENTS_LINE = "(:requirements :strips :typing :negative-preconditions :equality)"


def format_term(term: str) -> str:
    return norm_name(term)


def format_literal(lit: Literal) -> str:
    return str(lit)


def _format_typed_pairs(pairs: tuple[tuple[str, str], ...]) -> str:
    return " ".join(f"{norm_name(n)} - {norm_name(t)}" for n, t in pairs)


def _format_condition_block(action: ActionModel, indent: str) -> str:
    items = [format_literal(l) for l in action.preconditions]
    items.extend(
        f"(not (= {norm_name(a)} {norm_name(b)}))" for a, b in action.inequalities
    )
    if not items:
        return "()"
    inner = "\n".join(f"{indent}  {item}" for item in items)
    return f"(and\n{inner}\n{indent})"


def _format_effect_block(action: ActionModel, indent: str) -> str:
    items = [format_literal(l) for l in action.add_effects]
    items.extend(format_literal(l.negate()) for l in action.del_effects)
    if not items:
        return "()"
    inner = "\n".join(f"{indent}  {item}" for item in items)
    return f"(and\n{inner}\n{indent})"


def format_action(action: ActionModel) -> str:
    lines = [f"  (:action {norm_name(action.name)}"]
    lines.append(f"    :parameters ({_format_typed_pairs(action.params)})")
    lines.append(f"    :precondition {_format_condition_block(action, '    ')}")
    lines.append(f"    :effect {_format_effect_block(action, '    ')}")
    lines.append("  )")
    return "\n".join(lines)


def print_domain(domain: DomainModel) -> str:
    lines = [f"(define (domain {norm_name(domain.name)})", f"  {_REQUIREMENTS_LINE}"]
    type_items = domain.hierarchy.items()
    if type_items:
        lines.append("  (:types")
        for tname, tparent in type_items:
            lines.append(f"    {norm_name(tname)} - {norm_name(tparent)}")
        lines.append("  )")
    if domain.predicates:
        lines.append("  (:predicates")
        for pred in domain.predicates:
            decl = "(" + " ".join(
                [norm_name(pred.name)]
                + [f"{norm_name(v)} - {norm_name(t)}" for v, t in pred.params]
            ) + ")"
            if pred.description:
                decl += f" ; {pred.description}"
            lines.append(f"    {decl}")
        lines.append("  )")
    for action in domain.actions:
        lines.append(format_action(action))
    lines.append(")")
    return "\n".join(lines) + "\n"


def print_problem(problem: ProblemSpec) -> str:
    lines = [
        f"(define (problem {norm_name(problem.name)})",
        f"  (:domain {norm_name(problem.domain_name)})",
    ]
    if problem.objects:
        lines.append("  (:objects")
        for oname, otype in problem.objects:
            lines.append(f"    {norm_name(oname)} - {norm_name(otype)}")
        lines.append("  )")
    lines.append("  (:init")
    for lit in problem.init:
        lines.append(f"    {format_literal(lit)}")
    lines.append("  )")
    if problem.goal:
        lines.append("  (:goal (and")
        for lit in problem.goal:
            lines.append(f"    {format_literal(lit)}")
        lines.append("  ))")
    else:
        lines.append("  (:goal (and))")
    lines.append(")")
    return "\n".join(lines) + "\n"


def print_plan(plan: Plan) -> str:
    return "".join(f"{step}\n" for step in plan.steps)
