"""Re-expression: rewriting a subformula by a catalog of logical and
definitional equivalences.

Rule sides are patterns: ``Var`` leaves are term metavariables, ``FVar`` nodes
are formula metavariables, and quantifier binder names are bound-variable
metavariables.  Matching is first-order; a metavariable may not absorb a bound
variable of the site it matched under (that would un-bind it on the other
side).  A direction applies only if matching its source side determines every
metavariable of its target side — which is why member-of-empty cannot be
applied backward: nothing determines x when rewriting contra to x in {}.

Bound-variable metavariables that only exist on the target side (a rule that
introduces a quantifier) instantiate with names fresh against every name
occurring in the whole formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import NothingToRedo, NothingToUndo, RuleNotApplicable, UnknownRule
from .formulas import (
    And, Contradiction, Diff, EmptySet, Eq, Exists, ExistsUnique, FamInter,
    FamUnion, ForAll, Formula, Iff, Implies, In, Inter, Node, Not, Or, Path,
    Pow, Subset, Term, Union, Var, all_var_names, alpha_eq, children,
    free_vars, fresh_var, rebuild, replace_at, subformula_at, substitute,
)
from .history import History

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class FVar(Formula):
    """Formula metavariable (pattern-only node)."""
    name: str


@dataclass(frozen=True)
class FSubst(Formula):
    """Pattern-only node: the value of metavariable ``name`` with binder
    ``src`` renamed to binder ``dst``.  Matchable only after ``name`` is bound."""
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class EquivRule:
    id: str
    name: str
    kind: str  # "definitional" | "logical"
    lhs: Formula
    rhs: Formula


def _r(rule_id: str, name: str, kind: str, lhs: Formula, rhs: Formula) -> EquivRule:
    return EquivRule(rule_id, name, kind, lhs, rhs)


_x, _A, _B, _F, _S = Var("x"), Var("A"), Var("B"), Var("F"), Var("S")
_P, _Q = FVar("P"), FVar("Q")

CATALOG: tuple[EquivRule, ...] = (
    _r("member-of-union", "Membership in a union", "definitional",
       In(_x, Union(_A, _B)), Or(In(_x, _A), In(_x, _B))),
    _r("member-of-intersection", "Membership in an intersection", "definitional",
       In(_x, Inter(_A, _B)), And(In(_x, _A), In(_x, _B))),
    _r("member-of-difference", "Membership in a difference", "definitional",
       In(_x, Diff(_A, _B)), And(In(_x, _A), Not(In(_x, _B)))),
    _r("member-of-power", "Membership in a power set", "definitional",
       In(_x, Pow(_A)), Subset(_x, _A)),
    _r("member-of-family-union", "Membership in a family union", "definitional",
       In(_x, FamUnion(_F)), Exists("S", And(In(_S, _F), In(_x, _S)))),
    _r("member-of-family-intersection", "Membership in a family intersection",
       "definitional",
       In(_x, FamInter(_F)), ForAll("S", Implies(In(_S, _F), In(_x, _S)))),
    _r("member-of-empty", "Membership in the empty set", "definitional",
       In(_x, EmptySet()), Contradiction()),
    _r("subset-def", "Definition of subset", "definitional",
       Subset(_A, _B), ForAll("x", Implies(In(_x, _A), In(_x, _B)))),
    _r("set-equality", "Extensionality of equality", "definitional",
       Eq(_A, _B), ForAll("x", Iff(In(_x, _A), In(_x, _B)))),
    _r("exists-unique-def", "Definition of unique existence", "definitional",
       ExistsUnique("x", _P),
       Exists("x", And(_P, ForAll("y", Implies(FSubst("P", "x", "y"),
                                               Eq(Var("y"), Var("x"))))))),
    _r("de-morgan-and", "De Morgan (negated conjunction)", "logical",
       Not(And(_P, _Q)), Or(Not(_P), Not(_Q))),
    _r("de-morgan-or", "De Morgan (negated disjunction)", "logical",
       Not(Or(_P, _Q)), And(Not(_P), Not(_Q))),
    _r("quantifier-negation-forall", "Negated universal", "logical",
       Not(ForAll("x", _P)), Exists("x", Not(_P))),
    _r("quantifier-negation-exists", "Negated existential", "logical",
       Not(Exists("x", _P)), ForAll("x", Not(_P))),
    _r("double-negation", "Double negation", "logical",
       Not(Not(_P)), _P),
    _r("conditional-law", "Conditional as disjunction", "logical",
       Implies(_P, _Q), Or(Not(_P), _Q)),
    _r("negated-conditional", "Negated conditional", "logical",
       Not(Implies(_P, _Q)), And(_P, Not(_Q))),
    _r("contrapositive", "Contrapositive", "logical",
       Implies(_P, _Q), Implies(Not(_Q), Not(_P))),
    _r("biconditional-split", "Biconditional as two conditionals", "logical",
       Iff(_P, _Q), And(Implies(_P, _Q), Implies(_Q, _P))),
)

_BY_ID = {rule.id: rule for rule in CATALOG}


def rule_by_id(rule_id: str) -> EquivRule:
    try:
        return _BY_ID[rule_id]
    except KeyError:
        raise UnknownRule(f"no equivalence rule with id {rule_id!r}") from None


# -- matching ------------------------------------------------------------

# A metavariable's value may mention a bound variable only when every
# occurrence of that metavariable, on both sides of the rule, lies inside
# that binder's scope (an FSubst occurrence discharges its src binder: the
# substitution replaces it).  Otherwise the variable would escape its binder
# on the other side.  Computed once per rule.


def _occurrence_scopes(pat: Node, scope: frozenset[str], out: dict) -> None:
    match pat:
        case FVar(name):
            out.setdefault(name, []).append(scope)
        case FSubst(name, src, _):
            out.setdefault(name, []).append(scope | {src})
        case Var(name):
            if name not in scope:
                out.setdefault(name, []).append(scope)
        case ForAll(v, b) | Exists(v, b) | ExistsUnique(v, b):
            _occurrence_scopes(b, scope | {v}, out)
        case _:
            for c in children(pat):
                _occurrence_scopes(c, scope, out)


def _allowed_binders(rule: EquivRule) -> dict:
    """For each metavariable, the pattern binders its value may mention."""
    occ: dict = {}
    _occurrence_scopes(rule.lhs, frozenset(), occ)
    _occurrence_scopes(rule.rhs, frozenset(), occ)
    return {name: frozenset.intersection(*scopes)
            for name, scopes in occ.items()}


_ALLOWED: dict[str, dict] = {}


def _allowed_for(rule: EquivRule) -> dict:
    if rule.id not in _ALLOWED:
        _ALLOWED[rule.id] = _allowed_binders(rule)
    return _ALLOWED[rule.id]


def _match(pat: Node, node: Node, sigma: dict, bmap: dict,
           scope: dict, allowed: dict):
    """Extend sigma (metavariable values) and bmap (pattern binder -> concrete
    name) so that pat instantiates to node, or return None.  ``scope`` maps
    concrete binder names in force to their pattern binders."""
    match pat:
        case FVar(name):
            if not isinstance(node, Formula):
                return None
            return _bind(name, node, sigma, bmap, scope, allowed)
        case FSubst(name, src, dst):
            if name not in sigma or not isinstance(node, Formula):
                return None
            want = substitute(sigma[name], bmap[src], Var(bmap[dst]))
            return (sigma, bmap) if alpha_eq(node, want) else None
        case Var(name):
            if name in bmap:
                return (sigma, bmap) if node == Var(bmap[name]) else None
            if not isinstance(node, Term):
                return None
            return _bind(name, node, sigma, bmap, scope, allowed)
        case ForAll(v, body) | Exists(v, body) | ExistsUnique(v, body):
            if type(node) is not type(pat):
                return None
            return _match(body, node.body, sigma, {**bmap, v: node.var},
                          {**scope, node.var: v}, allowed)
        case EmptySet() | Contradiction():
            return (sigma, bmap) if type(node) is type(pat) else None
        case _:
            if type(node) is not type(pat):
                return None
            out = (sigma, bmap)
            for pk, nk in zip(children(pat), children(node)):
                out = _match(pk, nk, out[0], out[1], scope, allowed)
                if out is None:
                    return None
            return out


def _bind(name: str, value: Node, sigma: dict, bmap: dict,
          scope: dict, allowed: dict):
    permitted = allowed.get(name, frozenset())
    for concrete in free_vars(value):
        if concrete in scope and scope[concrete] not in permitted:
            return None  # value would smuggle the bound variable out of scope
    if name in sigma:
        return (sigma, bmap) if sigma[name] == value else None
    return ({**sigma, name: value}, bmap)


def _metavars(pat: Node) -> frozenset[str]:
    match pat:
        case FVar(name) | FSubst(name, _, _):
            return frozenset((name,))
        case Var(name):
            return frozenset((name,))
        case ForAll(v, b) | Exists(v, b) | ExistsUnique(v, b):
            return _metavars(b) - {v}
        case _:
            out: frozenset[str] = frozenset()
            for c in children(pat):
                out |= _metavars(c)
            return out


def _binders(pat: Node) -> list[str]:
    """Binder metavariable names of a pattern, in traversal order."""
    match pat:
        case ForAll(v, b) | Exists(v, b) | ExistsUnique(v, b):
            return [v] + _binders(b)
        case FVar() | FSubst() | Var():
            return []
        case _:
            out: list[str] = []
            for c in children(pat):
                out.extend(_binders(c))
            return out


def _instantiate(pat: Node, sigma: dict, bmap: dict) -> Node:
    match pat:
        case FVar(name):
            return sigma[name]
        case FSubst(name, src, dst):
            return substitute(sigma[name], bmap[src], Var(bmap[dst]))
        case Var(name):
            return Var(bmap[name]) if name in bmap else sigma[name]
        case ForAll(v, b) | Exists(v, b) | ExistsUnique(v, b):
            return type(pat)(bmap[v], _instantiate(b, sigma, bmap))
        case EmptySet() | Contradiction():
            return pat
        case _:
            return rebuild(pat, [_instantiate(c, sigma, bmap) for c in children(pat)])


def _rewrite(whole: Formula, node: Formula, rule: EquivRule, direction: str):
    """The instantiated target side, or None when the rule does not apply."""
    if direction == FORWARD:
        src, dst = rule.lhs, rule.rhs
    elif direction == BACKWARD:
        src, dst = rule.rhs, rule.lhs
    else:
        raise RuleNotApplicable(f"unknown direction {direction!r}")
    hit = _match(src, node, {}, {}, {}, _allowed_for(rule))
    if hit is None:
        return None
    sigma, bmap = hit
    if not _metavars(dst) <= sigma.keys():
        return None  # target side underdetermined (member-of-empty backward)
    avoid = set(all_var_names(whole)) | set(bmap.values())
    for binder in _binders(dst):
        if binder not in bmap:
            name = fresh_var(binder, avoid)
            avoid.add(name)
            bmap = {**bmap, binder: name}
    return _instantiate(dst, sigma, bmap)


def applicable_equivalences(f: Formula, path: Sequence[int]):
    """All (rule, direction, preview) triples applicable at ``path``, in
    catalog order with forward before backward.  The preview is the whole
    formula after the replacement."""
    node = subformula_at(f, tuple(path))
    out: list[tuple[EquivRule, str, Formula]] = []
    if not isinstance(node, Formula):
        return out
    for rule in CATALOG:
        for direction in (FORWARD, BACKWARD):
            result = _rewrite(f, node, rule, direction)
            if result is not None:
                out.append((rule, direction, replace_at(f, tuple(path), result)))
    return out


def apply_equivalence(f: Formula, path: Sequence[int], rule_id: str,
                      direction: str) -> Formula:
    """Rewrite the subformula at ``path`` by the rule, in the given direction."""
    rule = rule_by_id(rule_id)
    node = subformula_at(f, tuple(path))
    if not isinstance(node, Formula):
        raise RuleNotApplicable("path addresses a term, not a formula")
    result = _rewrite(f, node, rule, direction)
    if result is None:
        raise RuleNotApplicable(
            f"rule {rule_id!r} ({direction}) does not match the subformula")
    return replace_at(f, tuple(path), result)


# -- interactive re-expression session ------------------------------------


ReexOp = tuple[Path, str, str]  # (path, rule id, direction)
_Snapshot = tuple[Formula, tuple[ReexOp, ...]]


@dataclass(frozen=True)
class ReexpressSession:
    origin: Formula
    current: Formula
    ops: tuple[ReexOp, ...]
    history: History

    @property
    def can_undo(self) -> bool:
        return self.history.can_undo

    @property
    def can_redo(self) -> bool:
        return self.history.can_redo


def rex_open(f: Formula) -> ReexpressSession:
    return ReexpressSession(f, f, (), History())


def rex_apply(s: ReexpressSession, path: Sequence[int], rule_id: str,
              direction: str) -> ReexpressSession:
    result = apply_equivalence(s.current, path, rule_id, direction)
    snapshot: _Snapshot = (s.current, s.ops)
    return ReexpressSession(s.origin, result,
                            s.ops + ((tuple(path), rule_id, direction),),
                            s.history.push(snapshot))


def rex_undo(s: ReexpressSession) -> ReexpressSession:
    (formula, ops), hist = s.history.undo((s.current, s.ops))
    return ReexpressSession(s.origin, formula, ops, hist)


def rex_redo(s: ReexpressSession) -> ReexpressSession:
    (formula, ops), hist = s.history.redo((s.current, s.ops))
    return ReexpressSession(s.origin, formula, ops, hist)


def rex_result(s: ReexpressSession) -> Formula:
    return s.current
