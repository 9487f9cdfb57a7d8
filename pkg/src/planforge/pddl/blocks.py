"""Extraction of action models from structured LLM replies.

Replies follow the construction response format: a Parameters section, then
Preconditions and Effects as PDDL snippets, then New Predicates with one
``(signature): description`` entry per line (or ``None``).  Snippets may sit
inside fenced code blocks or chatty prose; scanning is parenthesis-balanced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .model import Literal, PredicateDef, norm_name
from .parser import (
    PddlSyntaxError,
    UnsupportedFeature,
    parse_condition_snippet,
    parse_effect_snippet,
    parse_predicate_signature,
)

SECTION_NAMES = ("Parameters", "Preconditions", "Effects", "New Predicates")

_HEADER_RE = re.compile(
    r"^\s*(?:[#>*-]+\s*)?(?:\d+[.)]\s*)?(parameters|preconditions|effects|new predicates)\b\s*:?\s*(.*)$",
    re.IGNORECASE,
)
_PARAM_RE = re.compile(r"(\?[A-Za-z0-9_-]+)\s*-\s*([A-Za-z0-9_-]+)")
_FENCE_RE = re.compile(r"```[a-zA-Z]*\n(.*?)```", re.DOTALL)


class MissingSection(Exception):
    """A required response section is absent; message is LLM-ready feedback."""

    def __init__(self, name: str) -> None:
        super().__init__(
            f"The response does not contain a '{name}' section. Please follow the "
            "response format and provide the Parameters, Preconditions, Effects "
            "and New Predicates sections."
        )
        self.section = name


class SnippetSyntaxError(Exception):
    """A PDDL snippet inside a section failed to parse."""

    def __init__(self, section: str, cause: Exception) -> None:
        super().__init__(
            f"The PDDL snippet under '{section}' could not be parsed: {cause} "
            "Please provide a valid PDDL expression."
        )
        self.section = section
        self.cause = cause


@dataclass
class ActionBlock:
    """Parsed pieces of one construction reply."""

    params: list[tuple[str, str]] = field(default_factory=list)
    preconditions: list[Literal] = field(default_factory=list)
    inequalities: list[tuple[str, str]] = field(default_factory=list)
    add_effects: list[Literal] = field(default_factory=list)
    del_effects: list[Literal] = field(default_factory=list)
    new_predicates: list[PredicateDef] = field(default_factory=list)


def split_sections(text: str) -> dict[str, str]:
    sections: dict[str, list[str]] = {}
    current: str | None = None
    for line in text.splitlines():
        match = _HEADER_RE.match(line)
        if match:
            current = match.group(1).lower()
            sections[current] = []
            rest = match.group(2).strip()
            if rest:
                sections[current].append(rest)
        elif current is not None:
            sections[current].append(line)
    return {name: "\n".join(body).strip() for name, body in sections.items()}


def _balanced_snippet(text: str) -> str | None:
    start = text.find("(")
    if start == -1:
        return None
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return text[start : i + 1]
    return None


def _extract_snippet(body: str, section: str, strict: bool) -> str | None:
    fenced = _FENCE_RE.search(body)
    if fenced:
        body = fenced.group(1)
    elif strict and body and not body.lstrip().startswith("("):
        raise SnippetSyntaxError(
            section, PddlSyntaxError("expected a fenced or bare PDDL snippet")
        )
    return _balanced_snippet(body)


def _parse_parameters(body: str) -> list[tuple[str, str]]:
    params: list[tuple[str, str]] = []
    seen: set[str] = set()
    for var, typ in _PARAM_RE.findall(body):
        key = norm_name(var)
        if key not in seen:
            seen.add(key)
            params.append((var, typ))
    return params


def _parse_new_predicates(body: str, strict: bool) -> list[PredicateDef]:
    stripped = body.strip().strip(".")
    if not stripped or re.fullmatch(r"(?:[-*\d.)\s]*)none\.?", stripped, re.IGNORECASE):
        return []
    out: list[PredicateDef] = []
    for raw in body.splitlines():
        line = raw.strip()
        if not line or line in ("```",):
            continue
        snippet = _balanced_snippet(line)
        if snippet is None:
            if strict:
                raise SnippetSyntaxError(
                    "New Predicates", PddlSyntaxError(f"no signature in '{line}'")
                )
            continue
        try:
            sig = parse_predicate_signature(snippet, normalize=False)
        except (PddlSyntaxError, UnsupportedFeature) as exc:
            raise SnippetSyntaxError("New Predicates", exc) from exc
        rest = line[line.find(snippet) + len(snippet) :]
        description = rest.lstrip(" \t:,.-").strip()
        out.append(PredicateDef(sig.name, sig.params, description))
    return out


def parse_action_block(text: str, *, strict: bool = False) -> ActionBlock:
    """Split a construction reply into sections and parse each of them.

    Raises :class:`MissingSection` or :class:`SnippetSyntaxError`; both carry
    messages ready to be sent back to the model as corrective feedback.
    """
    sections = split_sections(text)
    for name in SECTION_NAMES:
        if name.lower() not in sections:
            raise MissingSection(name)

    block = ActionBlock()
    block.params = _parse_parameters(sections["parameters"])

    pre_body = sections["preconditions"]
    snippet = _extract_snippet(pre_body, "Preconditions", strict)
    if snippet is not None:
        try:
            literals, ineqs = parse_condition_snippet(snippet)
        except (PddlSyntaxError, UnsupportedFeature) as exc:
            raise SnippetSyntaxError("Preconditions", exc) from exc
        block.preconditions = literals
        block.inequalities = ineqs
    elif re.search(r"none", pre_body, re.IGNORECASE) is None and pre_body and strict:
        raise SnippetSyntaxError(
            "Preconditions", PddlSyntaxError("no PDDL snippet found")
        )

    eff_body = sections["effects"]
    snippet = _extract_snippet(eff_body, "Effects", strict)
    if snippet is not None:
        try:
            adds, dels = parse_effect_snippet(snippet)
        except (PddlSyntaxError, UnsupportedFeature) as exc:
            raise SnippetSyntaxError("Effects", exc) from exc
        block.add_effects = adds
        block.del_effects = dels

    block.new_predicates = _parse_new_predicates(sections["new predicates"], strict)
    return block
