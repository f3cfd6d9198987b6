"""Goal-form automation: one obvious step, never a guess."""

import random

import pytest

from setproof.auto import auto_run, auto_step, choose_step
from setproof.errors import UnknownGoal
from setproof.kernel import (StepDescriptor, applicable_steps, apply_step,
                             is_complete, new_proof, open_goals)
from setproof.parser import parse

from ._gen import random_state


def proof(goal, givens=()):
    return new_proof([parse(g) for g in givens], parse(goal))


def test_conclude_takes_priority_over_goal_form():
    state = proof("x in A -> x in B", givens=("x in A -> x in B",))
    step = choose_step(state, "0")
    assert step.kind == "conclude" and step.given == "H1"


def test_contradiction_pair_closes_contra_goal():
    state = proof("y in B", givens=("x in A", "~x in A"))
    state = apply_step(state, StepDescriptor("prove-by-contradiction", goal="0"))
    step = choose_step(state, "0.0")
    assert step.kind == "contradiction-close"
    assert (step.given, step.given2) == ("H1", "H2")


def test_goal_form_table():
    expected = {
        "x in A -> x in B": "suppose",
        "forall x (x in A)": "let-arbitrary",
        "x in A & x in B": "split-and",
        "x in A <-> x in B": "split-iff",
        "A sub B": "unfold-subset-goal",
        "A = B": "double-inclusion",
        "~x in A": "prove-by-contradiction",
    }
    for goal, kind in expected.items():
        assert choose_step(proof(goal), "0").kind == kind, goal


def test_no_move_on_existential_disjunctive_atomic():
    for goal in ("exists x (x in A)", "x in A | x in B", "x in A"):
        assert choose_step(proof(goal), "0") is None
        state, applied = auto_step(proof(goal), "0")
        assert applied is None and open_goals(state)[0][1].goal == parse(goal)


def test_choose_step_rejects_closed_or_missing_goals():
    state = proof("x in A", givens=("x in A",))
    done = apply_step(state, StepDescriptor("conclude", goal="0", given="H1"))
    with pytest.raises(UnknownGoal):
        choose_step(done, "0")
    with pytest.raises(UnknownGoal):
        auto_run(state, "0.7")


def test_auto_run_stops_after_two_steps_on_stuck_goal():
    state = proof("forall x (x in A inter B -> x in A)")
    state, applied = auto_run(state, "0")
    assert [s.kind for s in applied] == ["let-arbitrary", "suppose"]
    assert not is_complete(state)
    assert open_goals(state)[0][1].goal == parse("x0 in A")


def test_auto_run_completes_reflexive_subset():
    state, applied = auto_run(proof("A sub A"), "0")
    assert [s.kind for s in applied] == ["unfold-subset-goal", "conclude"]
    assert is_complete(state)


def test_auto_run_respects_subtree_boundary():
    state = proof("(x in A -> x in A) & (y in B -> y in B)")
    state = apply_step(state, StepDescriptor("split-and", goal="0"))
    state, applied = auto_run(state, "0.1")
    assert all(s.goal.startswith("0.1") for s in applied)
    remaining = [gid for gid, _ in open_goals(state)]
    assert remaining == ["0.0"]


def test_auto_run_max_steps_cap():
    state = proof("x in A -> (x in B -> (x in C -> x in D))")
    _, applied = auto_run(state, "0", max_steps=2)
    assert [s.kind for s in applied] == ["suppose", "suppose"]


def test_auto_only_emits_applicable_steps():
    rng = random.Random(77)
    for _ in range(50):
        state = random_state(rng)
        for gid, _ in open_goals(state):
            step = choose_step(state, gid)
            if step is None:
                continue
            menu = [(t.kind, t.given, t.given2)
                    for t in applicable_steps(state, gid)]
            assert (step.kind, step.given, step.given2) in menu
