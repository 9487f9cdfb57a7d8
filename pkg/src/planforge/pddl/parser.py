"""Parser for the supported PDDL subset: STRIPS + typing + negative
preconditions + parameter inequality via ``(not (= ?x ?y))``.

Anything outside that subset raises :class:`UnsupportedFeature` whose message
is the same natural-language feedback sent to an LLM during construction, so
a parse failure can be forwarded to the correction loop verbatim.

Comments are ignored, with one deliberate exception: a ``;`` comment trailing
a predicate declaration on the same line is read back as that predicate's
natural-language description.  The canonical printer emits descriptions in
exactly that position, which keeps print -> parse lossless.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..messages import unsupported_keyword_message
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
    is_variable,
    norm_name,
)

SUPPORTED_REQUIREMENTS = frozenset(
    {":strips", ":typing", ":negative-preconditions", ":equality"}
)


class PddlSyntaxError(Exception):
    """Malformed PDDL text; carries position and the offending token."""

    def __init__(self, message: str, line: int = 0, col: int = 0, token: str = "") -> None:
        loc = f" at line {line}, column {col}" if line else ""
        tok = f" (near '{token}')" if token else ""
        super().__init__(f"{message}{loc}{tok}")
        self.line = line
        self.col = col
        self.token = token


class UnsupportedFeature(Exception):
    """A keyword outside the supported STRIPS subset, e.g. ``forall``."""

    def __init__(self, keyword: str, line: int = 0, col: int = 0) -> None:
        super().__init__(unsupported_keyword_message(keyword))
        self.keyword = keyword
        self.line = line
        self.col = col


class TypeMismatch(Exception):
    """An object or variable used where an incompatible type is required."""


class UnknownPredicate(Exception):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown predicate '{name}'")
        self.name = name


@dataclass
class _Sym:
    text: str
    line: int
    col: int


class _SExpr(list):
    line = 0
    col = 0
    end_line = 0
    end_col = 0


_CONNECTIVES = {"and", "not", "or", "forall", "exists", "when", "imply", "oneof"}


def _tokenize(text: str) -> tuple[list[_Sym], dict[int, list[tuple[int, str]]]]:
    tokens: list[_Sym] = []
    comments: dict[int, list[tuple[int, str]]] = {}
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == ";":
            start_col = col
            j = text.find("\n", i)
            j = n if j == -1 else j
            body = text[i + 1 : j].strip()
            comments.setdefault(line, []).append((start_col, body))
            col += j - i
            i = j
        elif ch in "()":
            tokens.append(_Sym(ch, line, col))
            i += 1
            col += 1
        else:
            j = i
            while j < n and text[j] not in " \t\r\n();":
                j += 1
            tokens.append(_Sym(text[i:j], line, col))
            col += j - i
            i = j
    return tokens, comments


def _read(tokens: list[_Sym], pos: int) -> tuple[object, int]:
    if pos >= len(tokens):
        raise PddlSyntaxError("unexpected end of input")
    tok = tokens[pos]
    if tok.text == "(":
        node = _SExpr()
        node.line, node.col = tok.line, tok.col
        pos += 1
        while True:
            if pos >= len(tokens):
                raise PddlSyntaxError("unbalanced '('", node.line, node.col, "(")
            if tokens[pos].text == ")":
                node.end_line, node.end_col = tokens[pos].line, tokens[pos].col
                return node, pos + 1
            child, pos = _read(tokens, pos)
            node.append(child)
    if tok.text == ")":
        raise PddlSyntaxError("unbalanced ')'", tok.line, tok.col, ")")
    return tok, pos + 1


def read_sexpr(text: str) -> tuple[object, dict[int, list[tuple[int, str]]]]:
    """Read exactly one top-level s-expression; trailing tokens are an error."""
    tokens, comments = _tokenize(text)
    if not tokens:
        raise PddlSyntaxError("empty input")
    node, pos = _read(tokens, 0)
    if pos != len(tokens):
        extra = tokens[pos]
        raise PddlSyntaxError("trailing input after form", extra.line, extra.col, extra.text)
    return node, comments


def _sym_text(node: object, what: str) -> _Sym:
    if not isinstance(node, _Sym):
        where = node if isinstance(node, _SExpr) else None
        raise PddlSyntaxError(
            f"expected {what}",
            getattr(where, "line", 0),
            getattr(where, "col", 0),
        )
    return node


def _name(node: object, what: str, normalize: bool) -> str:
    sym = _sym_text(node, what)
    return norm_name(sym.text) if normalize else sym.text


def _parse_typed_list(
    items: list[object], what: str, normalize: bool
) -> list[tuple[str, str]]:
    """``a b - t c - u d`` style list; untyped trailing names default to object."""
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    i = 0
    while i < len(items):
        sym = _sym_text(items[i], what)
        if sym.text == "-":
            if not pending:
                raise PddlSyntaxError("dangling '-' in typed list", sym.line, sym.col, "-")
            if i + 1 >= len(items):
                raise PddlSyntaxError("missing type after '-'", sym.line, sym.col, "-")
            typ = _name(items[i + 1], "type name", normalize)
            out.extend((name, typ) for name in pending)
            pending = []
            i += 2
        else:
            pending.append(norm_name(sym.text) if normalize else sym.text)
            i += 1
    out.extend((name, OBJECT_TYPE) for name in pending)
    return out


def _parse_literal(node: object, normalize: bool, *, allow_negative: bool) -> Literal:
    if not isinstance(node, _SExpr) or not node:
        raise PddlSyntaxError(
            "expected a literal",
            getattr(node, "line", 0),
            getattr(node, "col", 0),
        )
    head = _sym_text(node[0], "predicate name")
    head_key = norm_name(head.text)
    if head_key == "not":
        if not allow_negative:
            raise PddlSyntaxError("negation not allowed here", head.line, head.col, "not")
        if len(node) != 2:
            raise PddlSyntaxError("'not' takes exactly one literal", head.line, head.col, "not")
        inner = _parse_literal(node[1], normalize, allow_negative=False)
        return inner.negate()
    if head_key in _CONNECTIVES or head_key == "=":
        raise UnsupportedFeature(head.text, head.line, head.col)
    args = tuple(_name(a, "term", normalize) for a in node[1:])
    pred = norm_name(head.text) if normalize else head.text
    return Literal(pred, args)


def _parse_condition(
    node: object, normalize: bool
) -> tuple[list[Literal], list[tuple[str, str]]]:
    """Conjunction context: (), (and ...), a literal, (not lit), (not (= ?x ?y))."""
    literals: list[Literal] = []
    inequalities: list[tuple[str, str]] = []

    def walk(n: object) -> None:
        if not isinstance(n, _SExpr):
            raise PddlSyntaxError(
                "expected a condition",
                getattr(n, "line", 0),
                getattr(n, "col", 0),
            )
        if not n:
            return
        head = _sym_text(n[0], "condition")
        key = norm_name(head.text)
        if key == "and":
            for child in n[1:]:
                walk(child)
            return
        if key == "not" and len(n) == 2 and isinstance(n[1], _SExpr) and n[1]:
            inner_head = _sym_text(n[1][0], "condition")
            if norm_name(inner_head.text) == "=":
                terms = [_name(t, "term", normalize) for t in n[1][1:]]
                if len(terms) != 2:
                    raise PddlSyntaxError(
                        "'=' takes exactly two terms", inner_head.line, inner_head.col, "="
                    )
                inequalities.append((terms[0], terms[1]))
                return
        if key == "=":
            raise UnsupportedFeature("=", head.line, head.col)
        literals.append(_parse_literal(n, normalize, allow_negative=True))

    walk(node)
    return literals, inequalities


def _parse_effect(node: object, normalize: bool) -> tuple[list[Literal], list[Literal]]:
    adds: list[Literal] = []
    dels: list[Literal] = []

    def walk(n: object) -> None:
        if not isinstance(n, _SExpr):
            raise PddlSyntaxError(
                "expected an effect",
                getattr(n, "line", 0),
                getattr(n, "col", 0),
            )
        if not n:
            return
        head = _sym_text(n[0], "effect")
        key = norm_name(head.text)
        if key == "and":
            for child in n[1:]:
                walk(child)
            return
        lit = _parse_literal(n, normalize, allow_negative=True)
        if lit.positive:
            adds.append(lit)
        else:
            dels.append(lit.negate())

    walk(node)
    return adds, dels


def parse_condition_snippet(
    text: str, *, normalize: bool = True
) -> tuple[list[Literal], list[tuple[str, str]]]:
    """Parse a bare precondition form, e.g. ``(and (p ?x) (not (= ?x ?y)))``."""
    node, _ = read_sexpr(text)
    return _parse_condition(node, normalize)


def parse_effect_snippet(
    text: str, *, normalize: bool = True
) -> tuple[list[Literal], list[Literal]]:
    node, _ = read_sexpr(text)
    return _parse_effect(node, normalize)


def parse_predicate_signature(text: str, *, normalize: bool = False) -> PredicateDef:
    """Parse ``(name ?v - type ...)``; surface casing kept by default."""
    node, _ = read_sexpr(text)
    if not isinstance(node, _SExpr) or not node:
        raise PddlSyntaxError("expected a predicate signature")
    name = _name(node[0], "predicate name", normalize)
    params = _parse_typed_list(list(node[1:]), "parameter", normalize)
    try:
        return PredicateDef(name, tuple(params))
    except ModelError as exc:
        raise PddlSyntaxError(str(exc), node.line, node.col) from exc


def _check_action_literals(action: ActionModel, domain: DomainModel) -> None:
    param_types = {norm_name(v): t for v, t in action.params}
    for section, lit in action.all_literals():
        pred = domain.predicate(lit.predicate)
        if pred is None:
            raise UnknownPredicate(lit.predicate)
        if len(lit.args) != pred.arity:
            raise TypeMismatch(
                f"action '{action.name}' {section}: predicate '{lit.predicate}' "
                f"takes {pred.arity} argument(s), got {len(lit.args)}"
            )
        for arg, (_, expected) in zip(lit.args, pred.params):
            if not is_variable(arg):
                raise TypeMismatch(
                    f"action '{action.name}' {section}: object name '{arg}' "
                    "used in a lifted action (constants are not supported)"
                )
            given = param_types.get(norm_name(arg))
            if given is None:
                raise TypeMismatch(
                    f"action '{action.name}' {section}: variable '{arg}' "
                    "is not an action parameter"
                )
            if not domain.hierarchy.is_subtype(given, expected):
                raise TypeMismatch(
                    f"action '{action.name}' {section}: parameter '{arg}' has type "
                    f"'{given}' but '{lit.predicate}' requires '{expected}'"
                )
    for a, b in action.inequalities:
        for term in (a, b):
            if norm_name(term) not in param_types:
                raise TypeMismatch(
                    f"action '{action.name}': inequality over unknown parameter '{term}'"
                )


def parse_domain(text: str) -> DomainModel:
    """Parse a domain file into a :class:`DomainModel` (identifiers lowercased)."""
    node, comments = read_sexpr(text)
    if not isinstance(node, _SExpr) or not node:
        raise PddlSyntaxError("expected (define (domain ...))")
    if norm_name(_sym_text(node[0], "define").text) != "define":
        head = _sym_text(node[0], "define")
        raise PddlSyntaxError("expected 'define'", head.line, head.col, head.text)
    if (
        len(node) < 2
        or not isinstance(node[1], _SExpr)
        or len(node[1]) != 2
        or norm_name(_sym_text(node[1][0], "domain").text) != "domain"
    ):
        raise PddlSyntaxError("expected (domain <name>)", node.line, node.col)
    name = _name(node[1][1], "domain name", True)

    hierarchy = TypeHierarchy()
    predicates: list[PredicateDef] = []
    actions: list[ActionModel] = []
    seen_sections: set[str] = set()

    for section in node[2:]:
        if not isinstance(section, _SExpr) or not section:
            raise PddlSyntaxError(
                "expected a (:section ...)",
                getattr(section, "line", node.line),
                getattr(section, "col", node.col),
            )
        head = _sym_text(section[0], "section keyword")
        key = norm_name(head.text)
        if key == ":requirements":
            for req in section[1:]:
                req_name = norm_name(_sym_text(req, "requirement").text)
                if req_name not in SUPPORTED_REQUIREMENTS:
                    raise UnsupportedFeature(req_name, head.line, head.col)
        elif key == ":types":
            if key in seen_sections:
                raise PddlSyntaxError("duplicate :types section", head.line, head.col)
            seen_sections.add(key)
            for tname, tparent in _parse_typed_list(list(section[1:]), "type", True):
                try:
                    hierarchy.add(tname, tparent)
                except ModelError as exc:
                    raise PddlSyntaxError(str(exc), head.line, head.col) from exc
        elif key == ":predicates":
            if key in seen_sections:
                raise PddlSyntaxError("duplicate :predicates section", head.line, head.col)
            seen_sections.add(key)
            for decl in section[1:]:
                if not isinstance(decl, _SExpr) or not decl:
                    raise PddlSyntaxError(
                        "expected a predicate declaration", head.line, head.col
                    )
                pname = _name(decl[0], "predicate name", True)
                params = _parse_typed_list(list(decl[1:]), "parameter", True)
                description = ""
                for ccol, ctext in comments.get(decl.end_line, []):
                    if ccol > decl.end_col:
                        description = ctext
                        break
                try:
                    predicates.append(PredicateDef(pname, tuple(params), description))
                except ModelError as exc:
                    raise PddlSyntaxError(str(exc), decl.line, decl.col) from exc
        elif key == ":action":
            if len(section) < 2:
                raise PddlSyntaxError("action needs a name", head.line, head.col)
            aname = _name(section[1], "action name", True)
            fields: dict[str, object] = {}
            i = 2
            while i < len(section):
                fkey_sym = _sym_text(section[i], "action field keyword")
                fkey = norm_name(fkey_sym.text)
                if fkey not in (":parameters", ":precondition", ":effect"):
                    raise UnsupportedFeature(fkey, fkey_sym.line, fkey_sym.col)
                if i + 1 >= len(section):
                    raise PddlSyntaxError(
                        f"missing value for {fkey}", fkey_sym.line, fkey_sym.col
                    )
                fields[fkey] = section[i + 1]
                i += 2
            params_node = fields.get(":parameters")
            if params_node is None:
                raise PddlSyntaxError(":parameters is required", head.line, head.col)
            if not isinstance(params_node, _SExpr):
                raise PddlSyntaxError(
                    ":parameters expects a list", head.line, head.col
                )
            params = _parse_typed_list(list(params_node), "parameter", True)
            for var, _ in params:
                if not is_variable(var):
                    raise PddlSyntaxError(
                        f"parameter '{var}' is not a variable", head.line, head.col, var
                    )
            pre_node = fields.get(":precondition")
            literals, inequalities = (
                _parse_condition(pre_node, True) if pre_node is not None else ([], [])
            )
            eff_node = fields.get(":effect")
            adds, dels = _parse_effect(eff_node, True) if eff_node is not None else ([], [])
            actions.append(
                ActionModel(
                    name=aname,
                    params=tuple(params),
                    preconditions=tuple(literals),
                    add_effects=tuple(adds),
                    del_effects=tuple(dels),
                    inequalities=tuple(inequalities),
                )
            )
        else:
            raise UnsupportedFeature(key, head.line, head.col)

    try:
        hierarchy.finalize()
        domain = DomainModel(name, hierarchy, tuple(predicates), tuple(actions))
    except ModelError as exc:
        raise PddlSyntaxError(str(exc)) from exc
    for action in domain.actions:
        _check_action_literals(action, domain)
    return domain


def _check_ground_literal(
    lit: Literal, problem_objects: dict[str, str], domain: DomainModel, where: str
) -> None:
    pred = domain.predicate(lit.predicate)
    if pred is None:
        raise UnknownPredicate(lit.predicate)
    if len(lit.args) != pred.arity:
        raise TypeMismatch(
            f"{where}: predicate '{lit.predicate}' takes {pred.arity} "
            f"argument(s), got {len(lit.args)}"
        )
    for arg, (_, expected) in zip(lit.args, pred.params):
        if is_variable(arg):
            raise TypeMismatch(f"{where}: literal {lit} is not ground")
        otype = problem_objects.get(norm_name(arg))
        if otype is None:
            raise TypeMismatch(f"{where}: unknown object '{arg}'")
        if not domain.hierarchy.is_subtype(otype, expected):
            raise TypeMismatch(
                f"{where}: object '{arg}' has type '{otype}' but "
                f"'{lit.predicate}' requires '{expected}'"
            )


def parse_problem(text: str, domain: DomainModel) -> ProblemSpec:
    """Parse a problem file and type-check it against an already parsed domain."""
    node, _ = read_sexpr(text)
    if not isinstance(node, _SExpr) or not node:
        raise PddlSyntaxError("expected (define (problem ...))")
    if norm_name(_sym_text(node[0], "define").text) != "define":
        raise PddlSyntaxError("expected 'define'", node.line, node.col)
    if (
        len(node) < 2
        or not isinstance(node[1], _SExpr)
        or len(node[1]) != 2
        or norm_name(_sym_text(node[1][0], "problem").text) != "problem"
    ):
        raise PddlSyntaxError("expected (problem <name>)", node.line, node.col)
    name = _name(node[1][1], "problem name", True)

    domain_name = domain.name
    objects: list[tuple[str, str]] = []
    init: list[Literal] = []
    goal: list[Literal] = []
    for section in node[2:]:
        if not isinstance(section, _SExpr) or not section:
            raise PddlSyntaxError("expected a (:section ...)", node.line, node.col)
        head = _sym_text(section[0], "section keyword")
        key = norm_name(head.text)
        if key == ":domain":
            domain_name = _name(section[1], "domain name", True)
        elif key == ":objects":
            objects = _parse_typed_list(list(section[1:]), "object", True)
        elif key == ":init":
            for decl in section[1:]:
                lit = _parse_literal(decl, True, allow_negative=False)
                init.append(lit)
        elif key == ":goal":
            if len(section) != 2:
                raise PddlSyntaxError(":goal expects one form", head.line, head.col)
            literals, inequalities = _parse_condition(section[1], True)
            if inequalities:
                raise UnsupportedFeature("=", head.line, head.col)
            goal = literals
        else:
            raise UnsupportedFeature(key, head.line, head.col)

    obj_types: dict[str, str] = {}
    for oname, otype in objects:
        if otype not in domain.hierarchy:
            raise TypeMismatch(f"object '{oname}' has undeclared type '{otype}'")
        obj_types[norm_name(oname)] = otype
    for lit in init:
        _check_ground_literal(lit, obj_types, domain, "init")
    for lit in goal:
        _check_ground_literal(lit, obj_types, domain, "goal")
    try:
        return ProblemSpec(name, domain_name, tuple(objects), tuple(init), tuple(goal))
    except ModelError as exc:
        raise PddlSyntaxError(str(exc)) from exc


def parse_plan(text: str) -> Plan:
    """One ``(action obj ...)`` per line; blank lines and ; comments skipped."""
    steps: list[PlanStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        node, _ = read_sexpr(line)
        if not isinstance(node, _SExpr) or not node:
            raise PddlSyntaxError("expected (action obj ...)", lineno, 1)
        parts = [_name(p, "plan token", True) for p in node]
        steps.append(PlanStep(parts[0], tuple(parts[1:])))
    return Plan(tuple(steps))
