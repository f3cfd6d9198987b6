"""Immutable AST for elementary set-theory formulas, plus the variable machinery:
free variables, capture-avoiding substitution, alpha-equivalence, fresh names,
and positional (path) addressing of subformulas."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union as TyUnion

from .errors import CategoryMismatch, InvalidPath

RESERVED_WORDS = frozenset({
    "forall", "exists", "in", "sub", "union", "inter", "pow",
    "Union", "Inter", "contra",
})


def is_var_name(text: str) -> bool:
    """Identifier syntax (letter, then letters/digits/underscores), not a keyword."""
    if not text or text in RESERVED_WORDS:
        return False
    if not (text[0].isascii() and text[0].isalpha()):
        return False
    return all(c.isascii() and (c.isalnum() or c == "_") for c in text[1:])


class Term:
    """Base class of set-valued terms."""
    __slots__ = ()


class Formula:
    """Base class of formulas."""
    __slots__ = ()


Node = TyUnion[Term, Formula]
Path = tuple[int, ...]


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class EmptySet(Term):
    pass


@dataclass(frozen=True)
class Union(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Inter(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Diff(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Pow(Term):
    arg: Term


@dataclass(frozen=True)
class FamUnion(Term):
    """Union of a family of sets."""
    arg: Term


@dataclass(frozen=True)
class FamInter(Term):
    """Intersection of a family of sets."""
    arg: Term


@dataclass(frozen=True)
class In(Formula):
    elem: Term
    container: Term


@dataclass(frozen=True)
class Subset(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Contradiction(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ExistsUnique(Formula):
    var: str
    body: Formula


QUANTIFIERS = (ForAll, Exists, ExistsUnique)


def children(node: Node) -> tuple[Node, ...]:
    """The positional children of a node; binder variables are not children."""
    match node:
        case Var() | EmptySet() | Contradiction():
            return ()
        case Union(l, r) | Inter(l, r) | Diff(l, r):
            return (l, r)
        case Pow(t) | FamUnion(t) | FamInter(t):
            return (t,)
        case In(l, r) | Subset(l, r) | Eq(l, r):
            return (l, r)
        case Not(b):
            return (b,)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return (l, r)
        case ForAll(_, b) | Exists(_, b) | ExistsUnique(_, b):
            return (b,)
    raise TypeError(f"not a formula or term: {node!r}")


def rebuild(node: Node, kids: Sequence[Node]) -> Node:
    """The same constructor applied to replacement children."""
    cls = type(node)
    match node:
        case Var() | EmptySet() | Contradiction():
            return node
        case ForAll(v, _) | Exists(v, _) | ExistsUnique(v, _):
            return cls(v, kids[0])
        case Pow() | FamUnion() | FamInter() | Not():
            return cls(kids[0])
        case _:
            return cls(kids[0], kids[1])


def free_vars(node: Node) -> frozenset[str]:
    match node:
        case Var(name):
            return frozenset((name,))
        case ForAll(v, b) | Exists(v, b) | ExistsUnique(v, b):
            return free_vars(b) - {v}
        case _:
            out: frozenset[str] = frozenset()
            for c in children(node):
                out |= free_vars(c)
            return out


def all_var_names(node: Node) -> frozenset[str]:
    """Every variable name occurring anywhere in the node, bound or free."""
    match node:
        case Var(name):
            return frozenset((name,))
        case ForAll(v, b) | Exists(v, b) | ExistsUnique(v, b):
            return all_var_names(b) | {v}
        case _:
            out: frozenset[str] = frozenset()
            for c in children(node):
                out |= all_var_names(c)
            return out


def fresh_var(base: str, avoid: Iterable[str]) -> str:
    """``base`` if unused, else the first of base0, base1, ... not in ``avoid``."""
    taken = set(avoid)
    if base not in taken:
        return base
    i = 0
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def substitute(node: Node, var: str, replacement: Term) -> Node:
    """Replace free occurrences of ``var`` by ``replacement``, renaming bound
    variables where they would capture a free variable of the replacement."""
    match node:
        case Var(name):
            return replacement if name == var else node
        case ForAll(v, b) | Exists(v, b) | ExistsUnique(v, b):
            if v == var or var not in free_vars(b):
                return node
            cls = type(node)
            if v in free_vars(replacement):
                avoid = free_vars(b) | free_vars(replacement) | {var}
                v2 = fresh_var(v, avoid)
                b = substitute(b, v, Var(v2))
                return cls(v2, substitute(b, var, replacement))
            return cls(v, substitute(b, var, replacement))
        case _:
            kids = children(node)
            if not kids:
                return node
            return rebuild(node, [substitute(c, var, replacement) for c in kids])


def alpha_eq(a: Node, b: Node) -> bool:
    """Structural equality up to consistent renaming of bound variables."""
    return _alpha(a, b, {}, {}, 0)


def _alpha(a: Node, b: Node, amap: dict, bmap: dict, depth: int) -> bool:
    if type(a) is not type(b):
        return False
    match a:
        case Var(name):
            da, db = amap.get(name), bmap.get(b.name)
            if da is None and db is None:
                return name == b.name
            return da == db
        case ForAll(v, body) | Exists(v, body) | ExistsUnique(v, body):
            return _alpha(body, b.body,
                          {**amap, v: depth}, {**bmap, b.var: depth}, depth + 1)
        case _:
            ka, kb = children(a), children(b)
            return len(ka) == len(kb) and all(
                _alpha(x, y, amap, bmap, depth) for x, y in zip(ka, kb))


def subformula_at(node: Node, path: Sequence[int]) -> Node:
    """The node reached by following 0-based child indices."""
    cur = node
    for depth, idx in enumerate(path):
        kids = children(cur)
        if not 0 <= idx < len(kids):
            raise InvalidPath(
                f"index {idx} at depth {depth} does not address a child "
                f"of {type(cur).__name__} (arity {len(kids)})")
        cur = kids[idx]
    return cur


def replace_at(node: Node, path: Sequence[int], replacement: Node) -> Node:
    """A copy of ``node`` with the subtree at ``path`` swapped for ``replacement``.
    The replacement must be of the same category (term/formula) as the target."""
    target = subformula_at(node, path)
    if isinstance(target, Formula) != isinstance(replacement, Formula):
        have = "formula" if isinstance(replacement, Formula) else "term"
        want = "formula" if isinstance(target, Formula) else "term"
        raise CategoryMismatch(f"cannot replace a {want} with a {have}")
    return _replace(node, tuple(path), replacement)


def _replace(node: Node, path: Path, replacement: Node) -> Node:
    if not path:
        return replacement
    kids = list(children(node))
    kids[path[0]] = _replace(kids[path[0]], path[1:], replacement)
    return rebuild(node, kids)


def contains_contradiction(node: Node) -> bool:
    if isinstance(node, Contradiction):
        return True
    return any(contains_contradiction(c) for c in children(node))
