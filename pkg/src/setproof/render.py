"""Rendering of formulas and terms.

Three styles: ``ascii`` (the concrete input syntax; parses back to an
alpha-equal formula), ``unicode`` (mathematical symbols), and ``html``
(the ascii token stream, each token wrapped in a span carrying one of the
classes connective/quantifier/variable/set-op/relation/punct plus a
``data-path`` attribute addressing the token's node).

Parenthesization follows the grammar's precedence levels.  Quantifier bodies
are always parenthesized, and a quantified formula appearing where more input
could follow it (anywhere but a rightmost position) is parenthesized as a
whole, since a quantifier's scope would otherwise swallow what follows.
"""

from __future__ import annotations

from html import escape

from .formulas import (
    And, Contradiction, Diff, EmptySet, Eq, Exists, ExistsUnique, FamInter,
    FamUnion, ForAll, Formula, Iff, Implies, In, Inter, Node, Not, Or, Path,
    Pow, QUANTIFIERS, Subset, Term, Union, Var,
)

_UNICODE = {
    "<->": "↔", "->": "→", "|": "∨", "&": "∧",
    "~": "¬", "forall": "∀", "exists": "∃",
    "exists!": "∃!", "in": "∈", "sub": "⊆", "=": "=",
    "contra": "⊥", "union": "∪", "inter": "∩", "\\": "\\",
    "pow": "\U0001d4ab", "Union": "⋃", "Inter": "⋂", "{}": "∅",
}

# piece := (text, token_class | None, path | None); None class marks glue
_Piece = tuple[str, "str | None", "Path | None"]


class _Emitter:
    def __init__(self, symbols: bool):
        self.symbols = symbols  # True: unicode glyphs
        self.pieces: list[_Piece] = []

    def tok(self, text: str, cls: str, path: Path) -> None:
        if self.symbols:
            text = _UNICODE.get(text, text)
        self.pieces.append((text, cls, path))

    def glue(self, text: str) -> None:
        self.pieces.append((text, None, None))


def _level(f: Formula) -> int:
    match f:
        case Iff():
            return 1
        case Implies():
            return 2
        case Or():
            return 3
        case And():
            return 4
        case Not() | ForAll() | Exists() | ExistsUnique():
            return 5
        case _:
            return 6


def _formula(e: _Emitter, f: Formula, min_level: int, guarded: bool, path: Path) -> None:
    parens = _level(f) < min_level or (isinstance(f, QUANTIFIERS) and not guarded)
    if parens:
        e.tok("(", "punct", path)
        guarded = True
    match f:
        case Iff(l, r):
            _formula(e, l, 1, False, path + (0,))
            _op(e, "<->", path)
            _formula(e, r, 2, guarded, path + (1,))
        case Implies(l, r):
            _formula(e, l, 3, False, path + (0,))
            _op(e, "->", path)
            _formula(e, r, 2, guarded, path + (1,))
        case Or(l, r):
            _formula(e, l, 3, False, path + (0,))
            _op(e, "|", path)
            _formula(e, r, 4, guarded, path + (1,))
        case And(l, r):
            _formula(e, l, 4, False, path + (0,))
            _op(e, "&", path)
            _formula(e, r, 5, guarded, path + (1,))
        case Not(b):
            e.tok("~", "connective", path)
            _formula(e, b, 5, guarded, path + (0,))
        case ForAll(v, b) | Exists(v, b) | ExistsUnique(v, b):
            word = {ForAll: "forall", Exists: "exists",
                    ExistsUnique: "exists!"}[type(f)]
            e.tok(word, "quantifier", path)
            if not e.symbols:
                e.glue(" ")
            e.tok(v, "variable", path)
            e.glue(" ")
            e.tok("(", "punct", path)
            _formula(e, b, 1, True, path + (0,))
            e.tok(")", "punct", path)
        case In(l, r):
            _relation(e, l, "in", r, path)
        case Subset(l, r):
            _relation(e, l, "sub", r, path)
        case Eq(l, r):
            _relation(e, l, "=", r, path)
        case Contradiction():
            e.tok("contra", "connective", path)
    if parens:
        e.tok(")", "punct", path)


def _op(e: _Emitter, op: str, path: Path) -> None:
    e.glue(" ")
    e.tok(op, "connective", path)
    e.glue(" ")


def _relation(e: _Emitter, left: Term, rel: str, right: Term, path: Path) -> None:
    _term(e, left, False, path + (0,))
    e.glue(" ")
    e.tok(rel, "relation", path)
    e.glue(" ")
    _term(e, right, False, path + (1,))


def _term(e: _Emitter, t: Term, factor: bool, path: Path) -> None:
    match t:
        case Var(name):
            e.tok(name, "variable", path)
        case EmptySet():
            e.tok("{}", "set-op", path)
        case Union(l, r) | Inter(l, r) | Diff(l, r):
            if factor:
                e.tok("(", "punct", path)
            _term(e, l, False, path + (0,))
            op = {Union: "union", Inter: "inter", Diff: "\\"}[type(t)]
            e.glue(" ")
            e.tok(op, "set-op", path)
            e.glue(" ")
            _term(e, r, True, path + (1,))
            if factor:
                e.tok(")", "punct", path)
        case Pow(a) | FamUnion(a) | FamInter(a):
            word = {Pow: "pow", FamUnion: "Union", FamInter: "Inter"}[type(t)]
            e.tok(word, "set-op", path)
            e.tok("(", "punct", path)
            _term(e, a, False, path + (0,))
            e.tok(")", "punct", path)


def _pieces(node: Node, symbols: bool) -> list[_Piece]:
    e = _Emitter(symbols)
    if isinstance(node, Formula):
        _formula(e, node, 1, True, ())
    else:
        _term(e, node, False, ())
    return e.pieces


def render(node: Node, style: str = "ascii") -> str:
    """Render a formula or term in one of the styles ascii/unicode/html."""
    if style == "ascii":
        return "".join(text for text, _, _ in _pieces(node, False))
    if style == "unicode":
        return "".join(text for text, _, _ in _pieces(node, True))
    if style == "html":
        out = []
        for text, cls, path in _pieces(node, False):
            if cls is None:
                out.append(escape(text))
            else:
                dotted = ".".join(str(i) for i in path)
                out.append(f'<span class="{cls}" data-path="{dotted}">'
                           f'{escape(text)}</span>')
        return "".join(out)
    raise ValueError(f"unknown render style {style!r}")
