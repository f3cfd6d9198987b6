"""Formula AST, concrete syntax, rendering, substitution, alpha-equivalence."""

import random

import pytest

from setproof.errors import CategoryMismatch, InvalidPath, ParseError
from setproof.formulas import (And, Diff, EmptySet, Eq, Exists, ExistsUnique,
                               FamInter, FamUnion, ForAll, Iff, Implies, In,
                               Inter, Not, Or, Pow, Subset, Union, Var,
                               all_var_names, alpha_eq, children,
                               contains_contradiction, free_vars, fresh_var,
                               is_var_name, rebuild, replace_at, subformula_at,
                               substitute)
from setproof.parser import parse, parse_term
from setproof.render import render

from ._gen import random_formula


# -- parsing ---------------------------------------------------------------

def test_precedence_iff_implies_or_and():
    f = parse("P in Q <-> x in A -> x in B | x in C & x in D")
    assert isinstance(f, Iff)
    assert isinstance(f.right, Implies)
    assert isinstance(f.right.right, Or)
    assert isinstance(f.right.right.right, And)


def test_implies_is_right_associative():
    f = parse("x in A -> x in B -> x in C")
    assert f == Implies(In(Var("x"), Var("A")),
                        Implies(In(Var("x"), Var("B")), In(Var("x"), Var("C"))))


def test_term_operators_bind_tighter_than_connectives():
    f = parse("x in A union B & x in C")
    assert f == And(In(Var("x"), Union(Var("A"), Var("B"))),
                    In(Var("x"), Var("C")))


def test_term_operators_left_associative_one_level():
    t = parse_term(r"A union B inter C \ D")
    assert t == Diff(Inter(Union(Var("A"), Var("B")), Var("C")), Var("D"))


def test_quantifier_scope_extends_right():
    f = parse("forall x x in A -> x in B")
    assert isinstance(f, ForAll)
    assert isinstance(f.body, Implies)


def test_exists_unique_and_optional_comma():
    f = parse("exists! x, x in A")
    assert f == ExistsUnique("x", In(Var("x"), Var("A")))
    assert parse("exists x (x in A)") == Exists("x", In(Var("x"), Var("A")))


def test_parenthesized_formula_vs_term_backtracking():
    f = parse("(x in A) & (A union B) sub C")
    assert f == And(In(Var("x"), Var("A")),
                    Subset(Union(Var("A"), Var("B")), Var("C")))


def test_empty_set_and_prefix_operators():
    f = parse("pow({}) in Union(F) & {} in Inter(F)")
    assert f.left == In(Pow(EmptySet()), FamUnion(Var("F")))
    assert f.right == In(EmptySet(), FamInter(Var("F")))


def test_contradiction_keyword():
    f = parse("x in A -> contra")
    assert contains_contradiction(f)
    assert not contains_contradiction(f.left)


def test_keywords_are_not_variables():
    assert not is_var_name("forall")
    assert not is_var_name("in")
    assert is_var_name("x_long_name2")
    assert not is_var_name("2x")
    with pytest.raises(ParseError):
        parse("in in A")


def test_parse_error_reports_1_based_offset():
    with pytest.raises(ParseError) as e:
        parse("x in ")
    assert e.value.offset == 6
    with pytest.raises(ParseError) as e:
        parse("x in A &")
    assert e.value.offset == 9


def test_trailing_input_rejected():
    with pytest.raises(ParseError):
        parse("x in A x")
    with pytest.raises(ParseError):
        parse_term("A union B)")


# -- rendering -------------------------------------------------------------

def test_render_ascii_golden():
    f = parse("forall x (x in A inter B -> x in A union B)")
    assert render(f, "ascii") == "forall x (x in A inter B -> x in A union B)"


def test_render_unicode_golden():
    f = parse("forall x (x in {} -> ~ exists y (y in x))")
    assert render(f, "unicode") == "∀x (x ∈ ∅ → ¬∃y (y ∈ x))"
    assert render(parse("exists! x, x = pow(A)"), "unicode") == "∃!x (x = 𝒫(A))"
    assert render(parse("contra"), "unicode") == "⊥"


def test_render_quantifier_body_always_parenthesized():
    f = ForAll("x", In(Var("x"), Var("A")))
    assert render(f, "ascii") == "forall x (x in A)"


def test_render_quantifier_parenthesized_when_not_rightmost():
    f = And(Exists("x", In(Var("x"), Var("A"))), In(Var("y"), Var("B")))
    assert render(f, "ascii") == "(exists x (x in A)) & y in B"
    g = Implies(In(Var("y"), Var("B")), Exists("x", In(Var("x"), Var("A"))))
    assert render(g, "ascii") == "y in B -> exists x (x in A)"


def test_render_html_token_classes_and_paths():
    html = render(parse("x in A & y in B"), "html")
    assert '<span class="connective" data-path="">&amp;</span>' in html
    assert '<span class="variable" data-path="0.0">x</span>' in html
    assert '<span class="relation" data-path="1">in</span>' in html


def test_render_html_escapes_tokens():
    html = render(parse("x in A -> y in B"), "html")
    assert "-&gt;" in html
    assert "->" not in html.replace("-&gt;", "")


def test_round_trip_500_random_formulas():
    rng = random.Random(20259)
    for _ in range(500):
        f = random_formula(rng, rng.randrange(7))
        assert alpha_eq(parse(render(f, "ascii")), f)


# -- structure helpers -------------------------------------------------------

def test_children_skip_binder_names():
    f = ForAll("x", In(Var("x"), Var("A")))
    assert children(f) == (In(Var("x"), Var("A")),)
    assert rebuild(f, [In(Var("y"), Var("A"))]) == ForAll("x", In(Var("y"), Var("A")))


def test_free_and_all_names():
    f = parse("forall x (x in A) & y in B")
    assert free_vars(f) == {"A", "y", "B"}
    assert all_var_names(f) == {"x", "A", "y", "B"}


def test_fresh_var_numeric_suffixes():
    assert fresh_var("x", set()) == "x"
    assert fresh_var("x", {"x"}) == "x0"
    assert fresh_var("x", {"x", "x0", "x1"}) == "x2"


def test_substitute_capture_avoiding_renames_binder():
    f = Exists("y", In(Var("x"), Var("y")))
    g = substitute(f, "x", Var("y"))
    assert g == Exists("y0", In(Var("y"), Var("y0")))


def test_substitute_skips_bound_occurrences():
    f = ForAll("x", In(Var("x"), Var("A")))
    assert substitute(f, "x", Var("z")) == f


def test_substitute_in_terms():
    t = parse_term("pow(x union A)")
    assert substitute(t, "x", EmptySet()) == Pow(Union(EmptySet(), Var("A")))


def test_alpha_eq_bound_renaming():
    assert alpha_eq(parse("forall x (x in A)"), parse("forall y (y in A)"))
    assert not alpha_eq(parse("forall x (x in A)"), parse("forall y (y in B)"))
    assert not alpha_eq(parse("x in A"), parse("y in A"))
    assert alpha_eq(parse("exists x forall y (x in y)"),
                    parse("exists y forall x (y in x)"))


def test_subformula_and_replace_paths():
    f = parse("x in A & (y in B -> contra)")
    assert subformula_at(f, ()) == f
    assert subformula_at(f, (1, 0)) == In(Var("y"), Var("B"))
    assert subformula_at(f, (0, 1)) == Var("A")
    g = replace_at(f, (1, 0), In(Var("y"), Var("C")))
    assert render(g, "ascii") == "x in A & (y in C -> contra)"


def test_replace_at_category_checks():
    f = parse("x in A")
    with pytest.raises(CategoryMismatch):
        replace_at(f, (0,), In(Var("x"), Var("A")))
    with pytest.raises(CategoryMismatch):
        replace_at(f, (), Var("x"))
    with pytest.raises(InvalidPath):
        subformula_at(f, (5,))
    with pytest.raises(InvalidPath):
        subformula_at(f, (0, 0))


def test_quantifier_binder_not_addressable():
    f = parse("forall x (x in A)")
    assert subformula_at(f, (0,)) == In(Var("x"), Var("A"))
    with pytest.raises(InvalidPath):
        subformula_at(f, (1,))
