"""Typed-STRIPS abstract syntax shared by every other module.

Identifiers are case-insensitive (PDDL semantics) and `_` and `-` are
interchangeable.  Values keep the surface form they were constructed with so
that registries and feedback messages can show the author's casing; equality,
hashing and all lookups go through :func:`norm_name`.  The canonical printer
emits normalized (lowercase, kebab) names only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

OBJECT_TYPE = "object"


@lru_cache(maxsize=65536)
def norm_name(name: str) -> str:
    """Normalized form of an identifier: lowercase, underscores to hyphens."""
    return name.lower().replace("_", "-")


def is_variable(term: str) -> bool:
    return term.startswith("?")


def _collapse_ws(text: str) -> str:
    return " ".join(text.split())


class ModelError(ValueError):
    """Invalid construction of a PDDL value (cycles, duplicate names, ...)."""


class UnknownType(ModelError):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown type '{name}'")
        self.name = name


class TypeHierarchy:
    """Single-inheritance type forest rooted at the implicit `object` type."""

    def __init__(self, parents: Mapping[str, str | None] | None = None) -> None:
        # Insertion-ordered: declaration order is kept for printing.
        self._parents: dict[str, str | None] = {}
        self._display: dict[str, str] = {}
        if parents:
            for name, parent in parents.items():
                self.add(name, parent)

    def add(self, name: str, parent: str | None = None) -> None:
        key = norm_name(name)
        if key == OBJECT_TYPE:
            if parent is not None and norm_name(parent) != OBJECT_TYPE:
                raise ModelError("'object' must not have a parent")
            return
        pkey = norm_name(parent) if parent is not None else OBJECT_TYPE
        if key in self._parents and self._parents[key] != pkey:
            raise ModelError(
                f"type '{name}' redeclared with a different parent"
            )
        self._parents[key] = pkey
        self._display.setdefault(key, name)
        # Cycle check walks the (small) ancestor chain just written.
        seen = {key}
        cur: str | None = pkey
        while cur is not None and cur != OBJECT_TYPE:
            if cur in seen:
                del self._parents[key]
                raise ModelError(f"type hierarchy cycle through '{name}'")
            seen.add(cur)
            cur = self._parents.get(cur)

    def finalize(self) -> None:
        """Check every named parent is itself declared."""
        for name, parent in self._parents.items():
            if parent != OBJECT_TYPE and parent not in self._parents:
                raise UnknownType(self._display.get(parent, parent))

    def __contains__(self, name: str) -> bool:
        key = norm_name(name)
        return key == OBJECT_TYPE or key in self._parents

    def __iter__(self) -> Iterator[str]:
        return iter(self._display.values())

    def __len__(self) -> int:
        return len(self._parents)

    def display(self, name: str) -> str:
        key = norm_name(name)
        if key == OBJECT_TYPE:
            return OBJECT_TYPE
        return self._display.get(key, name)

    def parent(self, name: str) -> str | None:
        key = norm_name(name)
        if key == OBJECT_TYPE:
            return None
        if key not in self._parents:
            raise UnknownType(name)
        return self._parents[key]

    def is_subtype(self, sub: str, sup: str) -> bool:
        """Reflexive-transitive ancestry test."""
        skey, pkey = norm_name(sub), norm_name(sup)
        if skey != OBJECT_TYPE and skey not in self._parents:
            raise UnknownType(sub)
        if pkey != OBJECT_TYPE and pkey not in self._parents:
            raise UnknownType(sup)
        cur: str | None = skey
        while cur is not None:
            if cur == pkey:
                return True
            cur = None if cur == OBJECT_TYPE else self._parents[cur]
        return False

    def items(self) -> list[tuple[str, str]]:
        """(type, parent) pairs in declaration order, display casing."""
        return [
            (self._display[k], self._display.get(p, OBJECT_TYPE))
            for k, p in self._parents.items()
        ]

    def key(self) -> frozenset[tuple[str, str]]:
        return frozenset(self._parents.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TypeHierarchy):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"TypeHierarchy({dict(self.items())!r})"


def is_subtype(sub: str, sup: str, hierarchy: TypeHierarchy) -> bool:
    return hierarchy.is_subtype(sub, sup)


@dataclass(frozen=True)
class PredicateDef:
    """A fluent schema: name, typed parameters, natural-language description."""

    name: str
    params: tuple[tuple[str, str], ...]  # (variable, type) in order
    description: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple((v, t) for v, t in self.params))
        object.__setattr__(self, "description", _collapse_ws(self.description))
        vars_seen = set()
        for var, _ in self.params:
            if not is_variable(var):
                raise ModelError(
                    f"predicate '{self.name}' parameter '{var}' is not a variable"
                )
            key = norm_name(var)
            if key in vars_seen:
                raise ModelError(
                    f"predicate '{self.name}' has duplicate parameter '{var}'"
                )
            vars_seen.add(key)

    @property
    def arity(self) -> int:
        return len(self.params)

    def signature(self) -> str:
        """Display form, e.g. ``(object-on ?o - householdObject ?f - furnitureAppliance)``."""
        parts = [self.name]
        parts.extend(f"{v} - {t}" for v, t in self.params)
        return "(" + " ".join(parts) + ")"

    def key(self) -> tuple:
        return (
            norm_name(self.name),
            tuple((norm_name(v), norm_name(t)) for v, t in self.params),
            self.description,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PredicateDef):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True)
class Literal:
    """A possibly negated predicate over variables and/or object names."""

    predicate: str
    args: tuple[str, ...]
    positive: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        atom = (norm_name(self.predicate), tuple(norm_name(a) for a in self.args))
        object.__setattr__(self, "_atom_key", atom)
        object.__setattr__(self, "_key", (*atom, self.positive))
        object.__setattr__(self, "_hash", hash((*atom, self.positive)))

    def negate(self) -> "Literal":
        return Literal(self.predicate, self.args, not self.positive)

    def substitute(self, binding: Mapping[str, str]) -> "Literal":
        args = tuple(
            binding.get(norm_name(a), a) if is_variable(a) else a for a in self.args
        )
        return Literal(self.predicate, args, self.positive)

    @property
    def is_ground(self) -> bool:
        return not any(is_variable(a) for a in self.args)

    def atom_key(self) -> tuple:
        return self._atom_key  # type: ignore[attr-defined]

    def key(self) -> tuple:
        return self._key  # type: ignore[attr-defined]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Literal):
            return NotImplemented
        return self._key == other._key  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    def __str__(self) -> str:
        atom = "(" + " ".join([norm_name(self.predicate), *map(norm_name, self.args)]) + ")"
        return atom if self.positive else f"(not {atom})"


@dataclass(frozen=True)
class ActionModel:
    """One lifted action: typed parameters, precondition, add/delete effects."""

    name: str
    params: tuple[tuple[str, str], ...]
    preconditions: tuple[Literal, ...] = ()
    add_effects: tuple[Literal, ...] = ()
    del_effects: tuple[Literal, ...] = ()
    inequalities: tuple[tuple[str, str], ...] = ()  # variable pairs that must differ
    provenance: str = "handwritten"

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple((v, t) for v, t in self.params))
        object.__setattr__(self, "preconditions", tuple(self.preconditions))
        object.__setattr__(self, "add_effects", tuple(self.add_effects))
        object.__setattr__(self, "del_effects", tuple(self.del_effects))
        object.__setattr__(self, "inequalities", tuple(tuple(p) for p in self.inequalities))
        for lit in self.add_effects + self.del_effects:
            if not lit.positive:
                raise ModelError(
                    f"action '{self.name}': effect lists hold positive literals only"
                )

    @property
    def arity(self) -> int:
        return len(self.params)

    def param_type(self, var: str) -> str | None:
        key = norm_name(var)
        for v, t in self.params:
            if norm_name(v) == key:
                return t
        return None

    def all_literals(self) -> Iterator[tuple[str, Literal]]:
        """(section, literal) pairs over precondition and both effect lists."""
        for lit in self.preconditions:
            yield "precondition", lit
        for lit in self.add_effects:
            yield "effect", lit
        for lit in self.del_effects:
            yield "effect", lit

    def free_variables(self) -> list[str]:
        """Variables used in the body but not declared as parameters."""
        declared = {norm_name(v) for v, _ in self.params}
        out: list[str] = []
        seen: set[str] = set()
        terms: list[str] = []
        for _, lit in self.all_literals():
            terms.extend(lit.args)
        for a, b in self.inequalities:
            terms.extend((a, b))
        for term in terms:
            key = norm_name(term)
            if is_variable(term) and key not in declared and key not in seen:
                seen.add(key)
                out.append(term)
        return out

    def key(self) -> tuple:
        return (
            norm_name(self.name),
            tuple((norm_name(v), norm_name(t)) for v, t in self.params),
            tuple(l.key() for l in self.preconditions),
            tuple(l.key() for l in self.add_effects),
            tuple(l.key() for l in self.del_effects),
            frozenset(
                frozenset((norm_name(a), norm_name(b))) for a, b in self.inequalities
            ),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ActionModel):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True)
class DomainModel:
    """A planning domain: type hierarchy, fluent schemas, lifted actions."""

    name: str
    hierarchy: TypeHierarchy
    predicates: tuple[PredicateDef, ...] = ()
    actions: tuple[ActionModel, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "predicates", tuple(self.predicates))
        object.__setattr__(self, "actions", tuple(self.actions))
        seen: set[str] = set()
        for pred in self.predicates:
            key = norm_name(pred.name)
            if key in seen:
                raise ModelError(f"duplicate predicate '{pred.name}'")
            seen.add(key)
        type_keys = {norm_name(t) for t in self.hierarchy}
        for pred in self.predicates:
            if norm_name(pred.name) in type_keys:
                raise ModelError(
                    f"predicate '{pred.name}' collides with a type name"
                )
        action_seen: set[str] = set()
        for action in self.actions:
            key = norm_name(action.name)
            if key in action_seen:
                raise ModelError(f"duplicate action '{action.name}'")
            action_seen.add(key)

    def predicate(self, name: str) -> PredicateDef | None:
        key = norm_name(name)
        for pred in self.predicates:
            if norm_name(pred.name) == key:
                return pred
        return None

    def action(self, name: str) -> ActionModel | None:
        key = norm_name(name)
        for act in self.actions:
            if norm_name(act.name) == key:
                return act
        return None

    def with_actions(self, actions: Sequence[ActionModel]) -> "DomainModel":
        return DomainModel(self.name, self.hierarchy, self.predicates, tuple(actions))

    def key(self) -> tuple:
        return (
            norm_name(self.name),
            self.hierarchy.key(),
            tuple(p.key() for p in self.predicates),
            tuple(a.key() for a in self.actions),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DomainModel):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True)
class ProblemSpec:
    """A ground task: typed objects, closed-world init, goal conjunction."""

    name: str
    domain_name: str
    objects: tuple[tuple[str, str], ...]
    init: tuple[Literal, ...] = ()
    goal: tuple[Literal, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple((n, t) for n, t in self.objects))
        object.__setattr__(self, "init", tuple(self.init))
        object.__setattr__(self, "goal", tuple(self.goal))
        seen: set[str] = set()
        for obj, _ in self.objects:
            key = norm_name(obj)
            if key in seen:
                raise ModelError(f"duplicate object '{obj}'")
            seen.add(key)
        for lit in self.init:
            if not lit.positive:
                raise ModelError("init holds positive ground literals only")
            if not lit.is_ground:
                raise ModelError(f"init literal {lit} is not ground")
        for lit in self.goal:
            if not lit.is_ground:
                raise ModelError(f"goal literal {lit} is not ground")

    def object_type(self, name: str) -> str | None:
        key = norm_name(name)
        for obj, typ in self.objects:
            if norm_name(obj) == key:
                return typ
        return None

    def with_goal(self, goal: Sequence[Literal]) -> "ProblemSpec":
        return ProblemSpec(self.name, self.domain_name, self.objects, self.init, tuple(goal))

    def key(self) -> tuple:
        return (
            norm_name(self.name),
            norm_name(self.domain_name),
            tuple((norm_name(n), norm_name(t)) for n, t in self.objects),
            tuple(l.key() for l in self.init),
            tuple(l.key() for l in self.goal),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProblemSpec):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


@dataclass(frozen=True)
class PlanStep:
    """A ground action occurrence: action name plus object arguments."""

    action: str
    args: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))

    def key(self) -> tuple:
        return (norm_name(self.action), tuple(norm_name(a) for a in self.args))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlanStep):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        return "(" + " ".join([norm_name(self.action), *map(norm_name, self.args)]) + ")"


@dataclass(frozen=True)
class Plan:
    steps: tuple[PlanStep, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[PlanStep]:
        return iter(self.steps)

    def key(self) -> tuple:
        return tuple(s.key() for s in self.steps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Plan):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        return "\n".join(str(s) for s in self.steps)


def make_literal(predicate: str, *args: str, positive: bool = True) -> Literal:
    return Literal(predicate, tuple(args), positive)
