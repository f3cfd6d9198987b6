"""Seeded random generators for structural tests.

Formulas are built over a small variable pool so the finite-model oracle can
enumerate assignments; depth bounds keep renders and evaluations fast.
"""

from __future__ import annotations

import random

from setproof.formulas import (And, Contradiction, Diff, EmptySet, Eq, Exists,
                               ExistsUnique, FamInter, FamUnion, ForAll, Iff,
                               Implies, In, Inter, Not, Or, Pow, Subset, Union,
                               Var)

VARS = ("x", "y", "z", "A", "B", "C")


def random_state(rng: random.Random):
    """A valid proof state: a random theorem with a few random menu steps
    applied.  Only templates with no free arguments are used."""
    from setproof.errors import InvalidTheorem
    from setproof.kernel import (StepDescriptor, applicable_steps, apply_step,
                                 new_proof, open_goals)
    while True:
        goal = random_formula(rng, 3)
        givens = [random_formula(rng, 2) for _ in range(rng.randrange(3))]
        try:
            state = new_proof(givens, goal)
            break
        except InvalidTheorem:
            continue
    for _ in range(rng.randrange(6)):
        goals = open_goals(state)
        if not goals:
            break
        gid, leaf = goals[rng.randrange(len(goals))]
        if leaf.givens and rng.random() < 0.5:
            picked = leaf.givens[rng.randrange(len(leaf.givens))]
            menu = applicable_steps(state, gid, picked.label)
        else:
            menu = applicable_steps(state, gid)
        doable = [t for t in menu if not t.needs]
        if not doable:
            continue
        t = doable[rng.randrange(len(doable))]
        state = apply_step(state, StepDescriptor(
            t.kind, goal=gid, given=t.given, given2=t.given2))
    return state


def random_term(rng: random.Random, depth: int):
    if depth <= 0 or rng.random() < 0.4:
        if rng.random() < 0.15:
            return EmptySet()
        return Var(rng.choice(VARS))
    kind = rng.randrange(6)
    if kind == 0:
        return Union(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if kind == 1:
        return Inter(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if kind == 2:
        return Diff(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if kind == 3:
        return Pow(random_term(rng, depth - 1))
    if kind == 4:
        return FamUnion(random_term(rng, depth - 1))
    return FamInter(random_term(rng, depth - 1))


def random_atom(rng: random.Random, depth: int):
    kind = rng.randrange(4)
    if kind == 0:
        return In(random_term(rng, depth), random_term(rng, depth))
    if kind == 1:
        return Subset(random_term(rng, depth), random_term(rng, depth))
    if kind == 2:
        return Eq(random_term(rng, depth), random_term(rng, depth))
    return Contradiction()


def random_formula(rng: random.Random, depth: int):
    if depth <= 0 or rng.random() < 0.25:
        return random_atom(rng, max(0, depth - 1))
    kind = rng.randrange(8)
    if kind == 0:
        return Not(random_formula(rng, depth - 1))
    if kind == 1:
        return And(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 2:
        return Or(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 3:
        return Implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 4:
        return Iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    binder = rng.choice((ForAll, Exists, ExistsUnique))
    return binder(rng.choice(VARS), random_formula(rng, depth - 1))
