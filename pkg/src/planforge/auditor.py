"""Deterministic PDDL auditing.

Each finding renders the exact natural-language feedback message used in the
correction dialogue; the wording lives in ``templates/feedback`` and is
golden-file tested.  Keyword scanning runs on raw reply snippets (quantified
formulas never survive parsing), while the structural categories run on
parsed action or domain models.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .messages import feedback_template, ordinal
from .pddl import (
    ActionModel,
    DomainModel,
    PredicateDef,
    TypeHierarchy,
    format_literal,
    is_variable,
    norm_name,
)

UNSUPPORTED_KEYWORD = "unsupported-keyword"
TYPE_NAME_CLASH = "type-name-clash"
PREDICATE_NAME_CLASH = "predicate-name-clash"
INVALID_OBJECT_TYPE = "invalid-object-type"
PREDICATE_USAGE_MISMATCH = "predicate-usage-mismatch"
CONTRADICTORY_EFFECTS = "contradictory-effects"
REDUNDANT_PRECONDITION = "redundant-precondition"

CATEGORY_ORDER = (
    UNSUPPORTED_KEYWORD,
    TYPE_NAME_CLASH,
    PREDICATE_NAME_CLASH,
    INVALID_OBJECT_TYPE,
    PREDICATE_USAGE_MISMATCH,
    CONTRADICTORY_EFFECTS,
)

DEFAULT_UNSUPPORTED_KEYWORDS = ("forall", "exists", "when", "imply", "oneof")


@dataclass(frozen=True)
class AuditConfig:
    unsupported_keywords: tuple[str, ...] = DEFAULT_UNSUPPORTED_KEYWORDS
    redundancy_lint: bool = False


@dataclass(frozen=True)
class Finding:
    category: str
    action: str
    section: str
    snippet: str
    message: str
    item: str = ""  # unnumbered item body, for batch re-rendering

    def to_payload(self) -> dict:
        return {
            "category": self.category,
            "action": self.action,
            "section": self.section,
            "snippet": self.snippet,
            "message": self.message,
        }


@dataclass(frozen=True)
class AuditReport:
    findings: tuple[Finding, ...]
    infos: tuple[Finding, ...] = ()  # non-blocking lint, reported separately

    @property
    def clean(self) -> bool:
        return not self.findings

    def by_category(self, category: str) -> list[Finding]:
        return [f for f in self.findings if f.category == category]

    def to_payload(self) -> dict:
        return {
            "clean": self.clean,
            "findings": [f.to_payload() for f in self.findings],
            "infos": [f.to_payload() for f in self.infos],
        }


def _numbered(items: Sequence[str], sep: str) -> str:
    return sep.join(f"{i}. {item}" for i, item in enumerate(items, start=1))


def keyword_findings(
    action: str, snippets: Mapping[str, str], keywords: Sequence[str]
) -> list[Finding]:
    out: list[Finding] = []
    seen: set[str] = set()
    for section, text in snippets.items():
        for keyword in keywords:
            if keyword in seen:
                continue
            match = re.search(rf"[(\s]{re.escape(keyword)}[)\s]", " " + text + " ")
            if match:
                seen.add(keyword)
                out.append(
                    Finding(
                        category=UNSUPPORTED_KEYWORD,
                        action=action,
                        section=section,
                        snippet=keyword,
                        message=feedback_template("unsupported_keyword").format(
                            keyword=keyword
                        ),
                        item=keyword,
                    )
                )
    return out


def _predicate_item(pred: PredicateDef) -> str:
    desc = pred.description or "no description given"
    return f"{pred.signature()}, {desc}"


def type_clash_findings(
    action: str, new_predicates: Sequence[PredicateDef], hierarchy: TypeHierarchy
) -> list[Finding]:
    out: list[Finding] = []
    for pred in new_predicates:
        if pred.name in hierarchy:
            item = f"'{hierarchy.display(pred.name)}'"
            out.append(
                Finding(
                    category=TYPE_NAME_CLASH,
                    action=action,
                    section="New Predicates",
                    snippet=pred.signature(),
                    message=feedback_template("type_name_clash").format(
                        items=f"1. {item}"
                    ),
                    item=item,
                )
            )
    return out


def predicate_clash_findings(
    action: str,
    new_predicates: Sequence[PredicateDef],
    existing: Sequence[PredicateDef],
) -> list[Finding]:
    by_name = {norm_name(p.name): p for p in existing}
    out: list[Finding] = []
    for pred in new_predicates:
        other = by_name.get(norm_name(pred.name))
        if other is None:
            continue
        item = (
            f"{_predicate_item(pred)} | existing predicate with the same name: "
            f"{_predicate_item(other)}"
        )
        out.append(
            Finding(
                category=PREDICATE_NAME_CLASH,
                action=action,
                section="New Predicates",
                snippet=pred.signature(),
                message=feedback_template("predicate_name_clash").format(
                    items=f"1. {item}"
                ),
                item=item,
            )
        )
    return out


def _invalid_type_findings(
    action: str,
    model: ActionModel,
    new_predicates: Sequence[PredicateDef],
    hierarchy: TypeHierarchy,
) -> list[Finding]:
    out: list[Finding] = []
    seen: set[tuple[str, str]] = set()

    def check(params: Iterable[tuple[str, str]], section: str, snippet: str) -> None:
        for var, typ in params:
            if typ in hierarchy:
                continue
            key = (norm_name(var), norm_name(typ))
            if key in seen:
                continue
            seen.add(key)
            out.append(
                Finding(
                    category=INVALID_OBJECT_TYPE,
                    action=action,
                    section=section,
                    snippet=snippet,
                    message=feedback_template("invalid_object_type").format(
                        type=typ, param=var
                    ),
                    item=f"'{typ}' for the parameter {var}",
                )
            )

    check(model.params, "Parameters", "(" + " ".join(v for v, _ in model.params) + ")")
    for pred in new_predicates:
        check(pred.params, "New Predicates", pred.signature())
    return out


def _usage_findings(
    action: str,
    model: ActionModel,
    known_predicates: Mapping[str, PredicateDef],
    hierarchy: TypeHierarchy,
) -> list[Finding]:
    out: list[Finding] = []
    reported: set[tuple] = set()
    for section, lit in model.all_literals():
        pred = known_predicates.get(norm_name(lit.predicate))
        snippet = format_literal(lit)
        if pred is None:
            key = ("unknown", norm_name(lit.predicate))
            if key not in reported:
                reported.add(key)
                out.append(
                    Finding(
                        category=PREDICATE_USAGE_MISMATCH,
                        action=action,
                        section=section,
                        snippet=snippet,
                        message=feedback_template("usage_mismatch_unknown").format(
                            predicate=norm_name(lit.predicate)
                        ),
                    )
                )
            continue
        if len(lit.args) != pred.arity:
            key = ("arity", norm_name(lit.predicate), len(lit.args))
            if key not in reported:
                reported.add(key)
                out.append(
                    Finding(
                        category=PREDICATE_USAGE_MISMATCH,
                        action=action,
                        section=section,
                        snippet=snippet,
                        message=feedback_template("usage_mismatch_arity").format(
                            predicate=norm_name(lit.predicate),
                            expected=pred.arity,
                            given=len(lit.args),
                        ),
                    )
                )
            continue
        for pos, (arg, (_, expected)) in enumerate(zip(lit.args, pred.params), start=1):
            if not is_variable(arg):
                given_type = None
            else:
                given_type = model.param_type(arg)
            if given_type is None:
                key = ("unbound", norm_name(arg), norm_name(lit.predicate))
                if key not in reported:
                    reported.add(key)
                    out.append(
                        Finding(
                            category=PREDICATE_USAGE_MISMATCH,
                            action=action,
                            section=section,
                            snippet=snippet,
                            message=feedback_template("usage_mismatch_unbound").format(
                                param=arg
                            ),
                        )
                    )
                continue
            if given_type not in hierarchy or expected not in hierarchy:
                continue  # invalid-object-type already reports unknown types
            if not hierarchy.is_subtype(given_type, expected):
                key = ("type", norm_name(lit.predicate), pos, norm_name(given_type))
                if key in reported:
                    continue
                reported.add(key)
                out.append(
                    Finding(
                        category=PREDICATE_USAGE_MISMATCH,
                        action=action,
                        section=section,
                        snippet=snippet,
                        message=feedback_template("usage_mismatch_type").format(
                            ordinal=ordinal(pos),
                            predicate=norm_name(lit.predicate),
                            expected=hierarchy.display(expected),
                            given=hierarchy.display(given_type),
                        ),
                    )
                )
    return out


def _contradiction_findings(action: str, model: ActionModel) -> list[Finding]:
    add_atoms = {lit.atom_key(): lit for lit in model.add_effects}
    out: list[Finding] = []
    for lit in model.del_effects:
        if lit.atom_key() in add_atoms:
            rendered = format_literal(lit)
            out.append(
                Finding(
                    category=CONTRADICTORY_EFFECTS,
                    action=action,
                    section="effect",
                    snippet=rendered,
                    message=feedback_template("contradictory_effects").format(
                        literal=rendered
                    ),
                    item=rendered,
                )
            )
    return out


def _redundancy_infos(action: str, model: ActionModel) -> list[Finding]:
    seen: set[tuple] = set()
    duplicated: list[str] = []
    for lit in model.preconditions:
        key = lit.key()
        if key in seen:
            duplicated.append(format_literal(lit))
        seen.add(key)
    if not duplicated:
        return []
    items = _numbered(duplicated, " ")
    return [
        Finding(
            category=REDUNDANT_PRECONDITION,
            action=action,
            section="precondition",
            snippet=duplicated[0],
            message=feedback_template("redundant_precondition").format(items=items),
        )
    ]


def _audit_action(
    model: ActionModel,
    registry_predicates: Sequence[PredicateDef],
    hierarchy: TypeHierarchy,
    new_predicates: Sequence[PredicateDef],
    snippets: Mapping[str, str] | None,
    config: AuditConfig,
) -> tuple[list[Finding], list[Finding]]:
    name = model.name
    findings: list[Finding] = []
    if snippets:
        findings.extend(
            keyword_findings(name, snippets, config.unsupported_keywords)
        )
    findings.extend(type_clash_findings(name, new_predicates, hierarchy))
    findings.extend(
        predicate_clash_findings(name, new_predicates, registry_predicates)
    )
    findings.extend(_invalid_type_findings(name, model, new_predicates, hierarchy))
    known: dict[str, PredicateDef] = {
        norm_name(p.name): p for p in registry_predicates
    }
    for pred in new_predicates:
        known.setdefault(norm_name(pred.name), pred)
    findings.extend(_usage_findings(name, model, known, hierarchy))
    findings.extend(_contradiction_findings(name, model))
    infos = _redundancy_infos(name, model) if config.redundancy_lint else []
    return findings, infos


def audit(
    model: ActionModel | DomainModel,
    registry_predicates: Sequence[PredicateDef],
    hierarchy: TypeHierarchy,
    *,
    new_predicates: Sequence[PredicateDef] = (),
    snippets: Mapping[str, str] | None = None,
    config: AuditConfig | None = None,
) -> AuditReport:
    """Check all six finding categories; findings sorted by (action, category)."""
    config = config or AuditConfig()
    findings: list[Finding] = []
    infos: list[Finding] = []
    if isinstance(model, DomainModel):
        for action in model.actions:
            f, i = _audit_action(
                action, model.predicates, model.hierarchy, (), None, config
            )
            findings.extend(f)
            infos.extend(i)
    else:
        findings, infos = _audit_action(
            model, registry_predicates, hierarchy, new_predicates, snippets, config
        )
    rank = {cat: n for n, cat in enumerate(CATEGORY_ORDER)}
    findings.sort(key=lambda f: (norm_name(f.action), rank.get(f.category, 99)))
    return AuditReport(tuple(findings), tuple(infos))


def render_feedback(findings: Sequence[Finding]) -> str:
    """Batch findings into feedback text; clash categories merge their items
    into one message with a renumbered 1./2. list, as in the dialogue fixtures."""
    if not findings:
        return ""
    merge_templates = {
        TYPE_NAME_CLASH: ("type_name_clash", " "),
        PREDICATE_NAME_CLASH: ("predicate_name_clash", "\n"),
    }
    slots: list[tuple[str, str]] = []  # ("msg", text) or ("cat", category)
    merged: dict[str, list[str]] = {}
    for finding in findings:
        if finding.category in merge_templates:
            if finding.category not in merged:
                slots.append(("cat", finding.category))
                merged[finding.category] = []
            merged[finding.category].append(finding.item)
        else:
            slots.append(("msg", finding.message))
    messages: list[str] = []
    for kind, payload in slots:
        if kind == "msg":
            messages.append(payload)
        else:
            template_name, sep = merge_templates[payload]
            messages.append(
                feedback_template(template_name).format(
                    items=_numbered(merged[payload], sep)
                )
            )
    return "\n\n".join(messages)
