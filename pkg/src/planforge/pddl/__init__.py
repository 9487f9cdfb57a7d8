"""PDDL abstract syntax, parser, canonical printer, and LLM-output extraction."""

from .blocks import ActionBlock, MissingSection, SnippetSyntaxError, parse_action_block
from .model import (
    OBJECT_TYPE,
    ActionModel,
    DomainModel,
    Literal,
    ModelError,
    Plan,
    PlanStep,
    PredicateDef,
    ProblemSpec,
    TypeHierarchy,
    UnknownType,
    is_subtype,
    is_variable,
    make_literal,
    norm_name,
)
from .parser import (
    PddlSyntaxError,
    TypeMismatch,
    UnknownPredicate,
    UnsupportedFeature,
    parse_condition_snippet,
    parse_domain,
    parse_effect_snippet,
    parse_plan,
    parse_predicate_signature,
    parse_problem,
)
from .printer import (
    format_literal,
    print_domain,
    print_plan,
    print_problem,
)

__all__ = [
    "OBJECT_TYPE",
    "ActionBlock",
    "ActionModel",
    "DomainModel",
    "Literal",
    "MissingSection",
    "ModelError",
    "PddlSyntaxError",
    "Plan",
    "PlanStep",
    "PredicateDef",
    "ProblemSpec",
    "SnippetSyntaxError",
    "TypeHierarchy",
    "TypeMismatch",
    "UnknownPredicate",
    "UnknownType",
    "UnsupportedFeature",
    "format_literal",
    "is_subtype",
    "is_variable",
    "make_literal",
    "norm_name",
    "parse_action_block",
    "parse_condition_snippet",
    "parse_domain",
    "parse_effect_snippet",
    "parse_plan",
    "parse_predicate_signature",
    "parse_problem",
    "print_domain",
    "print_plan",
    "print_problem",
]
