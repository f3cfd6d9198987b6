"""Limited automation: one obvious step at a time, driven by the logical form
of the goal.

Auto closes a goal outright when a given matches it (or, for a contradiction
goal, when two givens contradict each other); otherwise it decomposes the
goal's main connective.  It never guesses: no witnesses, no disjunct choices,
no case splits, and no inferences from givens.
"""

from __future__ import annotations

from typing import Optional

from .errors import UnknownGoal
from .formulas import (
    And, Contradiction, Eq, ForAll, Iff, Implies, Not, Subset, alpha_eq,
)
from .kernel import (
    Open, ProofState, StepDescriptor, apply_step, node_at, open_goals,
)

_GOAL_FORMS = {
    Implies: "suppose",
    ForAll: "let-arbitrary",
    And: "split-and",
    Iff: "split-iff",
    Subset: "unfold-subset-goal",
    Eq: "double-inclusion",
    Not: "prove-by-contradiction",
}


def choose_step(state: ProofState, goal_id: str) -> Optional[StepDescriptor]:
    """The step auto would take at an open goal, or None when it has none."""
    leaf = node_at(state, goal_id)
    if not isinstance(leaf, Open):
        raise UnknownGoal(f"goal {goal_id!r} is not open")
    for g in leaf.givens:
        if alpha_eq(g.formula, leaf.goal):
            return StepDescriptor("conclude", goal=goal_id, given=g.label)
    if isinstance(leaf.goal, Contradiction):
        for g1 in leaf.givens:
            for g2 in leaf.givens:
                if g1.label != g2.label and alpha_eq(g2.formula, Not(g1.formula)):
                    return StepDescriptor("contradiction-close", goal=goal_id,
                                          given=g1.label, given2=g2.label)
    kind = _GOAL_FORMS.get(type(leaf.goal))
    if kind is not None:
        return StepDescriptor(kind, goal=goal_id)
    return None  # existential, disjunctive, or atomic goal: auto has no move


def auto_step(state: ProofState, goal_id: str):
    """Apply at most one automatic step.  Returns (state, applied step or None)."""
    step = choose_step(state, goal_id)
    if step is None:
        return state, None
    return apply_step(state, step), step


def auto_run(state: ProofState, goal_id: str, max_steps: int = 50):
    """Repeatedly auto-step the first open descendant of ``goal_id`` until
    nothing fires, the subtree closes, or ``max_steps`` is reached.  Returns
    (state, list of applied steps)."""
    node_at(state, goal_id)  # validate the target exists
    applied: list[StepDescriptor] = []
    while len(applied) < max_steps:
        target = _first_open_within(state, goal_id)
        if target is None:
            break
        step = choose_step(state, target)
        if step is None:
            break
        state = apply_step(state, step)
        applied.append(step)
    return state, applied


def _first_open_within(state: ProofState, goal_id: str) -> Optional[str]:
    prefix = goal_id + "."
    for gid, _ in open_goals(state):
        if gid == goal_id or gid.startswith(prefix):
            return gid
    return None
