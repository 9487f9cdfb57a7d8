"""Finding categories and their exact feedback messages."""

import pytest

from planforge.auditor import (
    AuditConfig,
    CONTRADICTORY_EFFECTS,
    INVALID_OBJECT_TYPE,
    PREDICATE_NAME_CLASH,
    PREDICATE_USAGE_MISMATCH,
    TYPE_NAME_CLASH,
    UNSUPPORTED_KEYWORD,
    audit,
    render_feedback,
)
from planforge.domains import FIXTURE_DOMAINS, household, logistics
from planforge.pddl import ActionModel, Literal, PredicateDef

from mutations import seeded_mutations


def _audit_mutation(mutation):
    domain = FIXTURE_DOMAINS[mutation.domain]()
    return audit(
        mutation.action,
        domain.predicates,
        domain.hierarchy,
        new_predicates=mutation.new_predicates,
        snippets=mutation.snippets,
    )


def test_clean_fixture_domains_have_zero_findings():
    for name, factory in FIXTURE_DOMAINS.items():
        domain = factory()
        report = audit(domain, domain.predicates, domain.hierarchy)
        assert report.clean, (name, [f.message for f in report.findings])


def test_every_seeded_mutation_detected_with_right_category():
    corpus = seeded_mutations()
    per_category: dict[str, int] = {}
    for mutation in corpus:
        report = _audit_mutation(mutation)
        got = {f.category for f in report.findings}
        assert mutation.category in got, (mutation.domain, mutation.category, mutation.note)
        per_category[mutation.category] = per_category.get(mutation.category, 0) + 1
    for category in (
        UNSUPPORTED_KEYWORD,
        TYPE_NAME_CLASH,
        PREDICATE_NAME_CLASH,
        INVALID_OBJECT_TYPE,
        PREDICATE_USAGE_MISMATCH,
        CONTRADICTORY_EFFECTS,
    ):
        assert per_category[category] >= 10, (category, per_category)


def test_forall_message_verbatim():
    domain = logistics()
    action = domain.actions[0]
    report = audit(
        action,
        domain.predicates,
        domain.hierarchy,
        snippets={"preconditions": "(and (forall (?p - package) (package-at ?p ?l)))"},
    )
    finding = report.by_category(UNSUPPORTED_KEYWORD)[0]
    assert finding.message == (
        "The precondition or effect contain the keyword 'forall' that is not "
        "supported in a standard STRIPS style model. Please express the same "
        "logic in a simplified way. You can come up with new predicates if "
        "needed (but note that you should use existing predicates as much as "
        "possible)."
    )


def test_type_name_clash_message_verbatim():
    domain = household()
    action = domain.action("pick-up")
    report = audit(
        action,
        domain.predicates,
        domain.hierarchy,
        new_predicates=(
            PredicateDef("smallReceptacle", (("?x", "householdObject"),), "true if ?x is small"),
        ),
    )
    finding = report.by_category(TYPE_NAME_CLASH)[0]
    assert finding.message == (
        "The following predicate(s) have the same name(s) as existing object "
        "types: 1. 'smallReceptacle'. Please rename these predicates."
    )


def test_predicate_name_clash_message_verbatim():
    domain = household()
    action = domain.action("slice")
    report = audit(
        action,
        domain.predicates,
        domain.hierarchy,
        new_predicates=(
            PredicateDef(
                "cutting-board",
                (("?z", "householdObject"),),
                "true if the object ?z is a cutting board",
            ),
        ),
    )
    finding = report.by_category(PREDICATE_NAME_CLASH)[0]
    assert finding.message == (
        "The following predicate(s) have the same name(s) as existing "
        "predicate(s): 1. (cutting-board ?z - householdObject), true if the "
        "object ?z is a cutting board | existing predicate with the same "
        "name: (cutting-board ?s - smallReceptacle), true if the small "
        "receptacle ?s is a cutting board. You should reuse existing "
        "predicates whenever possible. If you are reusing existing "
        "predicate(s), you shouldn't list them under 'New Predicates'. If "
        "existing predicates are not enough and you are devising new "
        "predicate(s), please use names that are different from existing "
        "ones. Please revise the PDDL model to fix this error."
    )


def test_invalid_object_type_message_verbatim():
    domain = household()
    action = ActionModel(
        "inflate-tyre",
        params=(("?p", "pump"),),
        preconditions=(),
        add_effects=(),
        del_effects=(),
    )
    report = audit(action, domain.predicates, domain.hierarchy)
    finding = report.by_category(INVALID_OBJECT_TYPE)[0]
    assert finding.message == "There is an invalid object type 'pump' for the parameter ?p."


def test_usage_mismatch_message_verbatim():
    domain = household()
    # object-on's second parameter must be a furnitureAppliance; bind it to a
    # householdObject-typed variable instead.
    action = ActionModel(
        "heat-with-pan",
        params=(("?x", "householdObject"), ("?p", "householdObject")),
        preconditions=(Literal("object-on", ("?x", "?p")),),
        add_effects=(),
        del_effects=(),
    )
    report = audit(action, domain.predicates, domain.hierarchy)
    finding = report.by_category(PREDICATE_USAGE_MISMATCH)[0]
    assert finding.message == (
        "There is a syntax error, the second parameter of 'object-on' should "
        "be a furnitureAppliance, but a householdObject was given. Please use "
        "the correct predicate or devise new one(s) if needed."
    )


def test_contradictory_effects_detected():
    domain = household()
    lit = Literal("object-in-receptacle", ("?o", "?b"))
    action = ActionModel(
        "mash",
        params=(("?o", "householdObject"), ("?b", "smallReceptacle")),
        preconditions=(),
        add_effects=(lit,),
        del_effects=(lit,),
    )
    report = audit(action, domain.predicates, domain.hierarchy)
    findings = report.by_category(CONTRADICTORY_EFFECTS)
    assert len(findings) == 1
    assert "(object-in-receptacle ?o ?b)" in findings[0].message


def test_findings_ordered_by_action_and_category():
    corpus = [m for m in seeded_mutations() if m.domain == "logistics"]
    domain = logistics()
    # audit a whole domain built from two mutated actions
    bad_actions = []
    for mutation in corpus:
        if mutation.category in (CONTRADICTORY_EFFECTS, PREDICATE_USAGE_MISMATCH):
            bad_actions.append(mutation.action)
        if len(bad_actions) == 2:
            break
    report = audit(
        domain.with_actions(tuple({a.name: a for a in bad_actions}.values())),
        domain.predicates,
        domain.hierarchy,
    )
    keys = [(f.action, f.category) for f in report.findings]
    assert keys == sorted(
        keys,
        key=lambda k: (
            k[0],
            [
                UNSUPPORTED_KEYWORD,
                TYPE_NAME_CLASH,
                PREDICATE_NAME_CLASH,
                INVALID_OBJECT_TYPE,
                PREDICATE_USAGE_MISMATCH,
                CONTRADICTORY_EFFECTS,
            ].index(k[1]),
        ),
    )


def test_minimal_fix_removes_exactly_that_finding():
    for mutation in seeded_mutations():
        if mutation.category != CONTRADICTORY_EFFECTS:
            continue
        report = _audit_mutation(mutation)
        assert not report.clean
        domain = FIXTURE_DOMAINS[mutation.domain]()
        fixed = domain.action(mutation.action.name)
        fixed_report = audit(fixed, domain.predicates, domain.hierarchy)
        assert fixed_report.clean


def test_audit_idempotent_on_clean_model():
    domain = logistics()
    action = domain.actions[0]
    first = audit(action, domain.predicates, domain.hierarchy)
    assert first.clean
    second = audit(action, domain.predicates, domain.hierarchy)
    assert second.clean and second.findings == first.findings


def test_render_feedback_empty_batch():
    assert render_feedback([]) == ""


def test_render_feedback_single_clash_contains_reuse_hint():
    domain = household()
    report = audit(
        domain.action("slice"),
        domain.predicates,
        domain.hierarchy,
        new_predicates=(
            PredicateDef("cutting-board", (("?z", "householdObject"),), "true if z"),
        ),
    )
    text = render_feedback(report.findings)
    assert "You should reuse existing predicates whenever possible" in text


def test_render_feedback_two_clashes_numbered(golden_dir):
    domain = household()
    report = audit(
        domain.action("slice"),
        domain.predicates,
        domain.hierarchy,
        new_predicates=(
            PredicateDef("smallReceptacle", (("?x", "householdObject"),), "true if small"),
            PredicateDef("householdObject", (("?y", "householdObject"),), "true if object"),
        ),
    )
    text = render_feedback(report.findings)
    golden = (golden_dir / "two_type_clashes.txt").read_text(encoding="utf-8")
    assert text == golden
    assert "1. 'smallReceptacle'" in text and "2. 'householdObject'" in text


def test_unknown_predicate_usage_flagged():
    domain = logistics()
    action = ActionModel(
        "load-truck",
        params=(("?p", "package"),),
        preconditions=(Literal("package-ready", ("?p",)),),
        add_effects=(),
        del_effects=(),
    )
    report = audit(action, domain.predicates, domain.hierarchy)
    findings = report.by_category(PREDICATE_USAGE_MISMATCH)
    assert findings and "'package-ready' is not defined" in findings[0].message


def test_unbound_variable_flagged():
    domain = logistics()
    action = ActionModel(
        "load-truck",
        params=(("?p", "package"),),
        preconditions=(Literal("package-at", ("?p", "?l")),),
        add_effects=(),
        del_effects=(),
    )
    report = audit(action, domain.predicates, domain.hierarchy)
    findings = report.by_category(PREDICATE_USAGE_MISMATCH)
    assert findings and "variable ?l is used but not listed" in findings[0].message


def test_redundancy_lint_off_by_default_and_non_blocking():
    domain = logistics()
    base = domain.actions[0]
    dup = ActionModel(
        base.name,
        base.params,
        base.preconditions + (base.preconditions[0],),
        base.add_effects,
        base.del_effects,
        base.inequalities,
    )
    default_report = audit(dup, domain.predicates, domain.hierarchy)
    assert default_report.clean
    assert default_report.infos == ()
    lint_report = audit(
        dup,
        domain.predicates,
        domain.hierarchy,
        config=AuditConfig(redundancy_lint=True),
    )
    assert lint_report.clean  # informational only
    assert len(lint_report.infos) == 1
    assert "only affects conciseness" in lint_report.infos[0].message
