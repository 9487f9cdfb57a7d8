"""Grounding: enumerate type-consistent action instances over a task's objects.

Negative preconditions are compiled away with complement facts so the search
core stays positive-STRIPS; the state engine remains the semantic authority
for the original task.  Delete-before-add overlaps are normalized here (the
auditor flags them separately).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from ..pddl import DomainModel, Literal, ProblemSpec, norm_name
from ..state import GroundAction, bind_action

DEFAULT_ACTION_CAP = 1_000_000


class GroundingExplosion(Exception):
    def __init__(self, count: int, cap: int) -> None:
        super().__init__(
            f"grounding would create {count} action instances (cap {cap})"
        )
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class GroundOp:
    """A ground action over fact indices."""

    name: str
    args: tuple[str, ...]
    pre: frozenset[int]
    add: frozenset[int]
    delete: frozenset[int]


@dataclass
class GroundTask:
    """Indexed STRIPS task; immutable after construction and shareable."""

    domain: DomainModel
    problem: ProblemSpec
    atoms: tuple[Literal, ...]  # positive ground atom universe
    ops: tuple[GroundOp, ...]
    init: frozenset[int]
    goal: frozenset[int]  # includes complement indices for negative goals
    neg_goal: frozenset[int]  # raw atom indices that must be absent
    complement_of: dict[int, int]  # atom idx -> complement fact idx
    n_facts: int
    _fact_to_ops: list[list[int]] | None = field(default=None, repr=False)
    _pre_counts: list[int] | None = field(default=None, repr=False)

    def state_literals(self, facts: Iterable[int]) -> frozenset[Literal]:
        return frozenset(self.atoms[i] for i in facts if i < len(self.atoms))

    def relaxation_index(self) -> tuple[list[list[int]], list[int]]:
        """Fact->consuming-op adjacency and per-op precondition counts."""
        if self._fact_to_ops is None:
            fact_to_ops: list[list[int]] = [[] for _ in range(self.n_facts)]
            pre_counts: list[int] = []
            for oi, op in enumerate(self.ops):
                pre_counts.append(len(op.pre))
                for f in op.pre:
                    fact_to_ops[f].append(oi)
            self._fact_to_ops = fact_to_ops
            self._pre_counts = pre_counts
        return self._fact_to_ops, self._pre_counts  # type: ignore[return-value]


def enumerate_bindings(
    domain: DomainModel, problem: ProblemSpec, action_name: str
) -> list[dict[str, str]]:
    """All type-consistent bindings of one schema honoring its inequalities."""
    schema = domain.action(action_name)
    if schema is None:
        raise KeyError(action_name)
    candidates: list[list[str]] = []
    for _, typ in schema.params:
        candidates.append(
            [
                norm_name(obj)
                for obj, otype in problem.objects
                if domain.hierarchy.is_subtype(otype, typ)
            ]
        )
    out: list[dict[str, str]] = []
    variables = [norm_name(v) for v, _ in schema.params]
    ineqs = [(norm_name(a), norm_name(b)) for a, b in schema.inequalities]
    for combo in itertools.product(*candidates):
        binding = dict(zip(variables, combo))
        if any(binding.get(a) == binding.get(b) for a, b in ineqs):
            continue
        out.append(binding)
    return out


def _estimate_instances(domain: DomainModel, problem: ProblemSpec) -> int:
    total = 0
    counts: dict[str, int] = {}
    for typ in list(domain.hierarchy) + ["object"]:
        counts[norm_name(typ)] = sum(
            1 for _, otype in problem.objects if domain.hierarchy.is_subtype(otype, typ)
        )
    for action in domain.actions:
        n = 1
        for _, typ in action.params:
            n *= counts.get(norm_name(typ), 0)
        total += n
    return total


def ground(
    domain: DomainModel,
    problem: ProblemSpec,
    *,
    action_cap: int = DEFAULT_ACTION_CAP,
    prune_unreachable: bool = False,
) -> GroundTask:
    estimate = _estimate_instances(domain, problem)
    if estimate > action_cap:
        raise GroundingExplosion(estimate, action_cap)

    ground_actions: list[GroundAction] = []
    for action in domain.actions:
        for binding in enumerate_bindings(domain, problem, action.name):
            ground_actions.append(bind_action(action, binding))

    # Predicates needing complement facts: negated in any precondition or goal.
    negated_preds: set[str] = set()
    for action in domain.actions:
        for lit in action.preconditions:
            if not lit.positive:
                negated_preds.add(norm_name(lit.predicate))
    for lit in problem.goal:
        if not lit.positive:
            negated_preds.add(norm_name(lit.predicate))

    atom_index: dict[tuple, int] = {}
    atoms: list[Literal] = []

    def intern(lit: Literal) -> int:
        key = lit.atom_key()
        idx = atom_index.get(key)
        if idx is None:
            idx = len(atoms)
            atom_index[key] = idx
            atoms.append(lit if lit.positive else lit.negate())
        return idx

    for lit in problem.init:
        intern(lit)
    for lit in problem.goal:
        intern(lit)
    for ga in ground_actions:
        for lit in ga.preconditions:
            intern(lit)
        for lit in ga.add_effects:
            intern(lit)
        for lit in ga.del_effects:
            intern(lit)
    # Complement universe: every type-consistent instance of negated predicates.
    for pred in domain.predicates:
        if norm_name(pred.name) not in negated_preds:
            continue
        candidate_sets = [
            [
                norm_name(obj)
                for obj, otype in problem.objects
                if domain.hierarchy.is_subtype(otype, typ)
            ]
            for _, typ in pred.params
        ]
        for combo in itertools.product(*candidate_sets):
            intern(Literal(norm_name(pred.name), tuple(combo)))

    complement_of: dict[int, int] = {}
    n_facts = len(atoms)
    for idx, lit in enumerate(atoms):
        if norm_name(lit.predicate) in negated_preds:
            complement_of[idx] = n_facts
            n_facts += 1

    ops: list[GroundOp] = []
    for ga in ground_actions:
        pre: set[int] = set()
        for lit in ga.preconditions:
            idx = intern(lit)
            if lit.positive:
                pre.add(idx)
            else:
                pre.add(complement_of[idx])
        add_idx = {intern(l) for l in ga.add_effects}
        del_idx = {intern(l) for l in ga.del_effects}
        del_idx -= add_idx  # delete-before-add normalization
        add = set(add_idx)
        delete = set(del_idx)
        for idx in add_idx:
            comp = complement_of.get(idx)
            if comp is not None:
                delete.add(comp)
        for idx in del_idx:
            comp = complement_of.get(idx)
            if comp is not None:
                add.add(comp)
        ops.append(
            GroundOp(ga.name, ga.args, frozenset(pre), frozenset(add), frozenset(delete))
        )

    init = {intern(l) for l in problem.init}
    for atom_idx, comp_idx in complement_of.items():
        if atom_idx not in init:
            init.add(comp_idx)

    goal: set[int] = set()
    neg_goal: set[int] = set()
    for lit in problem.goal:
        idx = intern(lit)
        if lit.positive:
            goal.add(idx)
        else:
            goal.add(complement_of[idx])
            neg_goal.add(idx)

    if len(ops) > action_cap:
        raise GroundingExplosion(len(ops), action_cap)

    if prune_unreachable:
        ops = _prune_relaxed_unreachable(ops, frozenset(init))

    return GroundTask(
        domain=domain,
        problem=problem,
        atoms=tuple(atoms),
        ops=tuple(ops),
        init=frozenset(init),
        goal=frozenset(goal),
        neg_goal=frozenset(neg_goal),
        complement_of=complement_of,
        n_facts=n_facts,
    )


def _prune_relaxed_unreachable(
    ops: list[GroundOp], init: frozenset[int]
) -> list[GroundOp]:
    reachable = set(init)
    kept: set[int] = set()
    changed = True
    while changed:
        changed = False
        for oi, op in enumerate(ops):
            if oi in kept:
                continue
            if op.pre <= reachable:
                kept.add(oi)
                before = len(reachable)
                reachable |= op.add
                if len(reachable) != before:
                    changed = True
    return [op for oi, op in enumerate(ops) if oi in kept]
