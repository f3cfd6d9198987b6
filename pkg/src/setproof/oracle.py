"""Finite-model semantics over hereditarily finite sets.

A model of rank k interprets variables as elements of V_k (the sets of rank
< k) and restricts quantifiers to that universe.  Term evaluation itself is
exact: unions, intersections, differences, power sets, and family operations
are computed on the actual finite sets, so a term's value may have rank k or
higher.  The one operation with no exact value, the intersection of an empty
family, is completed model-relatively as the whole universe (V_k is itself a
hereditarily finite set).
"""

from __future__ import annotations

from functools import lru_cache, reduce
from itertools import chain, combinations, product
from typing import Iterable, Iterator, Mapping

from .errors import UnboundVariable
from .formulas import (
    And, Contradiction, Diff, EmptySet, Eq, Exists, ExistsUnique, FamInter,
    FamUnion, ForAll, Formula, Iff, Implies, In, Inter, Not, Or, Pow, Subset,
    Term, Union, Var,
)

HF = frozenset


def _subsets(elems: tuple) -> Iterator[HF]:
    return (frozenset(c) for c in
            chain.from_iterable(combinations(elems, n) for n in range(len(elems) + 1)))


def _canon(s: HF) -> tuple:
    return tuple(sorted(_canon(x) for x in s))


@lru_cache(maxsize=None)
def universe(rank: int) -> tuple[HF, ...]:
    """All hereditarily finite sets of rank < rank, canonically ordered."""
    elems: tuple[HF, ...] = ()
    for _ in range(rank):
        elems = tuple(_subsets(elems))
    return tuple(sorted(elems, key=_canon))


class FiniteModel:
    """A rank together with an assignment of universe elements to variables."""

    def __init__(self, rank: int, assignment: Mapping[str, HF]):
        self.rank = rank
        self.assignment = dict(assignment)
        self.universe = universe(rank)

    def bind(self, var: str, value: HF) -> "FiniteModel":
        m = FiniteModel.__new__(FiniteModel)
        m.rank = self.rank
        m.assignment = {**self.assignment, var: value}
        m.universe = self.universe
        return m


def eval_term(t: Term, model: FiniteModel) -> HF:
    match t:
        case Var(name):
            try:
                return model.assignment[name]
            except KeyError:
                raise UnboundVariable(f"variable {name!r} has no assigned value") from None
        case EmptySet():
            return frozenset()
        case Union(l, r):
            return eval_term(l, model) | eval_term(r, model)
        case Inter(l, r):
            return eval_term(l, model) & eval_term(r, model)
        case Diff(l, r):
            return eval_term(l, model) - eval_term(r, model)
        case Pow(a):
            return frozenset(_subsets(tuple(eval_term(a, model))))
        case FamUnion(a):
            fam = eval_term(a, model)
            return reduce(frozenset.union, fam, frozenset())
        case FamInter(a):
            fam = eval_term(a, model)
            if not fam:
                return frozenset(model.universe)
            return reduce(frozenset.intersection, fam)
    raise TypeError(f"not a term: {t!r}")


def evaluate(f: Formula, model: FiniteModel) -> bool:
    match f:
        case In(e, s):
            return eval_term(e, model) in eval_term(s, model)
        case Subset(l, r):
            return eval_term(l, model) <= eval_term(r, model)
        case Eq(l, r):
            return eval_term(l, model) == eval_term(r, model)
        case Contradiction():
            return False
        case Not(b):
            return not evaluate(b, model)
        case And(l, r):
            return evaluate(l, model) and evaluate(r, model)
        case Or(l, r):
            return evaluate(l, model) or evaluate(r, model)
        case Implies(l, r):
            return (not evaluate(l, model)) or evaluate(r, model)
        case Iff(l, r):
            return evaluate(l, model) == evaluate(r, model)
        case ForAll(v, b):
            return all(evaluate(b, model.bind(v, e)) for e in model.universe)
        case Exists(v, b):
            return any(evaluate(b, model.bind(v, e)) for e in model.universe)
        case ExistsUnique(v, b):
            hits = 0
            for e in model.universe:
                if evaluate(b, model.bind(v, e)):
                    hits += 1
                    if hits > 1:
                        return False
            return hits == 1
    raise TypeError(f"not a formula: {f!r}")


def assignments(rank: int, names: Iterable[str]) -> Iterator[FiniteModel]:
    """Every model of the given rank over the given variable names."""
    names = sorted(set(names))
    for values in product(universe(rank), repeat=len(names)):
        yield FiniteModel(rank, dict(zip(names, values)))


def holds(f: Formula, rank: int) -> bool:
    """True when f evaluates true under every rank-bounded assignment of its
    free variables."""
    from .formulas import free_vars
    return all(evaluate(f, m) for m in assignments(rank, free_vars(f)))
