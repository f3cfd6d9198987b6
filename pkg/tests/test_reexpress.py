"""Equivalence catalog, matching, and the re-expression session."""

import random

import pytest

from setproof.errors import (InvalidPath, NothingToRedo, NothingToUndo,
                             RuleNotApplicable, UnknownRule)
from setproof.formulas import Iff, alpha_eq
from setproof.oracle import assignments, evaluate
from setproof.parser import parse
from setproof.reexpress import (BACKWARD, CATALOG, FORWARD,
                                applicable_equivalences, apply_equivalence,
                                rex_apply, rex_open, rex_redo, rex_result,
                                rex_undo, rule_by_id)
from setproof.render import render

RULE_IDS = [r.id for r in CATALOG]


def test_catalog_contents():
    assert len(CATALOG) == 19
    assert len(set(RULE_IDS)) == 19
    definitional = [r for r in CATALOG if r.kind == "definitional"]
    logical = [r for r in CATALOG if r.kind == "logical"]
    assert len(definitional) == 10
    assert len(logical) == 9
    assert rule_by_id("subset-def").name == "Definition of subset"
    with pytest.raises(UnknownRule):
        rule_by_id("made-up")


def test_unfold_membership_rules():
    cases = [
        ("x in A union B", "member-of-union", "x in A | x in B"),
        ("x in A inter B", "member-of-intersection", "x in A & x in B"),
        (r"x in A \ B", "member-of-difference", "x in A & ~x in B"),
        ("x in pow(A)", "member-of-power", "x sub A"),
        ("x in {}", "member-of-empty", "contra"),
    ]
    for source, rule, expected in cases:
        out = apply_equivalence(parse(source), (), rule, FORWARD)
        assert out == parse(expected), rule
        if rule != "member-of-empty":  # backward underdetermined, never offered
            back = apply_equivalence(out, (), rule, BACKWARD)
            assert back == parse(source), rule


def test_member_of_empty_backward_never_offered():
    options = applicable_equivalences(parse("contra"), ())
    assert ("member-of-empty", BACKWARD) not in [
        (r.id, d) for r, d, _ in options]
    with pytest.raises(RuleNotApplicable):
        apply_equivalence(parse("contra"), (), "member-of-empty", BACKWARD)


def test_family_rules_introduce_fresh_binder():
    out = apply_equivalence(parse("x in Union(F)"), (),
                            "member-of-family-union", FORWARD)
    assert render(out, "ascii") == "exists S (S in F & x in S)"
    clash = apply_equivalence(parse("S in Union(F)"), (),
                              "member-of-family-union", FORWARD)
    assert render(clash, "ascii") == "exists S0 (S0 in F & S in S0)"


def test_family_rules_backward_reject_capture():
    folds = apply_equivalence(parse("exists S (S in F & x in S)"), (),
                              "member-of-family-union", BACKWARD)
    assert folds == parse("x in Union(F)")
    with pytest.raises(RuleNotApplicable):
        apply_equivalence(parse("exists S (S in F & S in S)"), (),
                          "member-of-family-union", BACKWARD)
    with pytest.raises(RuleNotApplicable):
        apply_equivalence(parse("forall S (S in F -> S in S)"), (),
                          "member-of-family-intersection", BACKWARD)


def test_subset_def_binder_avoids_all_names():
    out = apply_equivalence(parse("x in A & A sub B"), (1,),
                            "subset-def", FORWARD)
    assert render(out, "ascii") == "x in A & forall x0 (x0 in A -> x0 in B)"


def test_exists_unique_def_round_trip():
    f = parse("exists! x (x in A)")
    out = apply_equivalence(f, (), "exists-unique-def", FORWARD)
    assert render(out, "ascii") == \
        "exists x (x in A & forall y (y in A -> y = x))"
    assert alpha_eq(apply_equivalence(out, (), "exists-unique-def", BACKWARD), f)


def test_exists_unique_backward_requires_matching_schema():
    wrong = parse("exists x (x in A & forall y (y in B -> y = x))")
    with pytest.raises(RuleNotApplicable):
        apply_equivalence(wrong, (), "exists-unique-def", BACKWARD)


def test_rewrite_at_inner_path():
    f = parse("~(x in A union B) -> contra")
    out = apply_equivalence(f, (0, 0), "member-of-union", FORWARD)
    assert render(out, "ascii") == "~(x in A | x in B) -> contra"


def test_path_and_direction_errors():
    f = parse("x in A")
    with pytest.raises(InvalidPath):
        apply_equivalence(f, (3,), "double-negation", FORWARD)
    with pytest.raises(RuleNotApplicable):
        apply_equivalence(f, (0,), "double-negation", FORWARD)
    with pytest.raises(RuleNotApplicable):
        apply_equivalence(f, (), "double-negation", "sideways")


def test_applicable_listing_order_and_previews():
    options = applicable_equivalences(parse("~forall x (x in A)"), ())
    tags = [(r.id, d) for r, d, _ in options]
    assert tags == [("quantifier-negation-forall", FORWARD),
                    ("double-negation", BACKWARD)]
    previews = [render(p, "ascii") for _, _, p in options]
    assert previews == ["exists x (~x in A)", "~~~forall x (x in A)"]


def test_applicable_listing_empty_for_terms():
    assert applicable_equivalences(parse("x in A"), (0,)) == []


def test_every_rule_sound_on_one_instance():
    instances = {
        "member-of-union": "x in A union B",
        "member-of-intersection": "x in A inter B",
        "member-of-difference": r"x in A \ B",
        "member-of-power": "x in pow(A)",
        "member-of-family-union": "x in Union(A)",
        "member-of-family-intersection": "x in Inter(A)",
        "member-of-empty": "x in {}",
        "subset-def": "A sub B",
        "set-equality": "A = B",
        "exists-unique-def": "exists! x (x in A)",
        "de-morgan-and": "~(x in A & x in B)",
        "de-morgan-or": "~(x in A | x in B)",
        "quantifier-negation-forall": "~forall x (x in A)",
        "quantifier-negation-exists": "~exists x (x in A)",
        "double-negation": "~~x in A",
        "conditional-law": "x in A -> x in B",
        "negated-conditional": "~(x in A -> x in B)",
        "contrapositive": "x in A -> x in B",
        "biconditional-split": "x in A <-> x in B",
    }
    assert set(instances) == set(RULE_IDS)
    for rule_id, source in instances.items():
        f = parse(source)
        out = apply_equivalence(f, (), rule_id, FORWARD)
        names = ("x", "A", "B")
        for model in assignments(2, names):
            assert evaluate(Iff(f, out), model), rule_id


# -- re-expression session ----------------------------------------------------

def test_session_apply_records_ops():
    s = rex_open(parse("x in A inter B"))
    s = rex_apply(s, (), "member-of-intersection", FORWARD)
    s = rex_apply(s, (0,), "double-negation", BACKWARD)
    assert render(rex_result(s), "ascii") == "~~x in A & x in B"
    assert s.ops == (((), "member-of-intersection", FORWARD),
                     ((0,), "double-negation", BACKWARD))
    assert s.origin == parse("x in A inter B")


def test_session_undo_redo_round_trip():
    s = rex_open(parse("~(x in A union B)"))
    s = rex_apply(s, (0,), "member-of-union", FORWARD)
    s = rex_apply(s, (), "de-morgan-or", FORWARD)
    final = rex_result(s)
    assert not s.can_redo
    s = rex_undo(rex_undo(s))
    assert rex_result(s) == s.origin
    assert not s.can_undo and s.can_redo
    s = rex_redo(rex_redo(s))
    assert rex_result(s) == final
    assert s.ops[-1] == ((), "de-morgan-or", FORWARD)


def test_session_apply_clears_redo():
    s = rex_open(parse("x in A inter B"))
    s = rex_apply(s, (), "member-of-intersection", FORWARD)
    s = rex_undo(s)
    s = rex_apply(s, (), "member-of-intersection", FORWARD)
    assert not s.can_redo
    with pytest.raises(NothingToRedo):
        rex_redo(s)


def test_session_history_limits():
    s = rex_open(parse("x in A"))
    with pytest.raises(NothingToUndo):
        rex_undo(s)
    with pytest.raises(NothingToRedo):
        rex_redo(s)


def test_session_failed_apply_leaves_session_usable():
    s = rex_open(parse("x in A"))
    with pytest.raises(RuleNotApplicable):
        rex_apply(s, (), "de-morgan-and", FORWARD)
    assert rex_result(s) == parse("x in A")


def test_session_random_walk_undoes_to_origin():
    rng = random.Random(4)
    s = rex_open(parse("~(x in A inter B) -> x in pow(A) union {}"))
    applied = 0
    while applied < 25:
        options = applicable_equivalences(rex_result(s), ())
        if not options:
            break
        rule, direction, _ = rng.choice(options)
        s = rex_apply(s, (), rule.id, direction)
        applied += 1
    for _ in range(applied):
        s = rex_undo(s)
    assert rex_result(s) == s.origin
