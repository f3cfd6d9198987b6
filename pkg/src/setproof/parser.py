"""Tokenizer and recursive-descent parser for the ascii formula syntax.

Grammar (whitespace-insensitive between tokens):

    formula := iff
    iff     := imp {"<->" imp}            left-associative
    imp     := or ["->" imp]              right-associative
    or      := and {"|" and}
    and     := unary {"&" unary}
    unary   := "~" unary | quant | atom
    quant   := ("forall" | "exists" | "exists!") ident [","] formula
    atom    := "contra" | "(" formula ")" | term rel term
    rel     := "in" | "sub" | "="
    term    := factor {("union" | "inter" | "\\") factor}
    factor  := ident | "{}" | "pow" "(" term ")"
             | "Union" "(" term ")" | "Inter" "(" term ")" | "(" term ")"

A quantifier's body extends as far right as possible.  At ``atom``, an opening
parenthesis is ambiguous (parenthesized formula vs. parenthesized term inside a
relation); the parser backtracks and reports the error of the attempt that got
furthest.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .formulas import (
    And, Contradiction, Diff, EmptySet, Eq, Exists, ExistsUnique, FamInter,
    FamUnion, ForAll, Formula, Iff, Implies, In, Inter, Not, Or, Pow,
    RESERVED_WORDS, Subset, Term, Union, Var,
)

_SYMBOLS = (
    ("<->", "iff"),
    ("->", "imp"),
    ("{}", "empty"),
    ("(", "lparen"),
    (")", "rparen"),
    ("|", "or"),
    ("&", "and"),
    ("~", "not"),
    ("=", "eq"),
    ("\\", "diff"),
    (",", "comma"),
    ("!", "bang"),
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int  # 1-based character offset


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isascii() and c.isalpha():
            j = i + 1
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = word if word in RESERVED_WORDS else "ident"
            tokens.append(Token(kind, word, i + 1))
            i = j
            continue
        for sym, kind in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(kind, sym, i + 1))
                i += len(sym)
                break
        else:
            raise ParseError(i + 1, f"unexpected character {c!r}")
    tokens.append(Token("eof", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, description: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.pos, f"expected {description}" + self._found())
        return self.advance()

    def _found(self) -> str:
        tok = self.peek()
        if tok.kind == "eof":
            return ", found end of input"
        return f", found {tok.text!r}"

    # -- formulas ------------------------------------------------------

    def formula(self) -> Formula:
        f = self._imp()
        while self.peek().kind == "iff":
            self.advance()
            f = Iff(f, self._imp())
        return f

    def _imp(self) -> Formula:
        f = self._or()
        if self.peek().kind == "imp":
            self.advance()
            return Implies(f, self._imp())
        return f

    def _or(self) -> Formula:
        f = self._and()
        while self.peek().kind == "or":
            self.advance()
            f = Or(f, self._and())
        return f

    def _and(self) -> Formula:
        f = self._unary()
        while self.peek().kind == "and":
            self.advance()
            f = And(f, self._unary())
        return f

    def _unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.advance()
            return Not(self._unary())
        if tok.kind in ("forall", "exists"):
            return self._quant()
        return self._atom()

    def _quant(self) -> Formula:
        head = self.advance()
        cls = ForAll
        if head.kind == "exists":
            cls = Exists
            if self.peek().kind == "bang":
                self.advance()
                cls = ExistsUnique
        var = self.expect("ident", "identifier")
        if self.peek().kind == "comma":
            self.advance()
        return cls(var.text, self.formula())

    def _atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "contra":
            self.advance()
            return Contradiction()
        if tok.kind == "lparen":
            # Ambiguous: "(term) rel term" or "(formula)".  Try the relation
            # reading first; on failure rewind and read a parenthesized formula.
            save = self.pos
            try:
                return self._relation()
            except ParseError as rel_err:
                self.pos = save
                try:
                    self.advance()
                    f = self.formula()
                    self.expect("rparen", "')'")
                    return f
                except ParseError as par_err:
                    raise rel_err if rel_err.offset >= par_err.offset else par_err
        return self._relation()

    def _relation(self) -> Formula:
        left = self.term()
        tok = self.peek()
        if tok.kind == "in":
            self.advance()
            return In(left, self.term())
        if tok.kind == "sub":
            self.advance()
            return Subset(left, self.term())
        if tok.kind == "eq":
            self.advance()
            return Eq(left, self.term())
        raise ParseError(tok.pos, "expected 'in', 'sub', or '='" + self._found())

    # -- terms ---------------------------------------------------------

    def term(self) -> Term:
        t = self._factor()
        while True:
            kind = self.peek().kind
            if kind == "union":
                self.advance()
                t = Union(t, self._factor())
            elif kind == "inter":
                self.advance()
                t = Inter(t, self._factor())
            elif kind == "diff":
                self.advance()
                t = Diff(t, self._factor())
            else:
                return t

    def _factor(self) -> Term:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind == "empty":
            self.advance()
            return EmptySet()
        if tok.kind in ("pow", "Union", "Inter"):
            self.advance()
            self.expect("lparen", "'('")
            t = self.term()
            self.expect("rparen", "')'")
            return {"pow": Pow, "Union": FamUnion, "Inter": FamInter}[tok.kind](t)
        if tok.kind == "lparen":
            self.advance()
            t = self.term()
            self.expect("rparen", "')'")
            return t
        raise ParseError(tok.pos, "expected a term" + self._found())


def parse(text: str) -> Formula:
    """Parse one formula; the whole input must be consumed."""
    p = _Parser(tokenize(text))
    f = p.formula()
    tok = p.peek()
    if tok.kind != "eof":
        raise ParseError(tok.pos, f"unexpected {tok.text!r} after formula")
    return f


def parse_term(text: str) -> Term:
    """Parse one term; the whole input must be consumed."""
    p = _Parser(tokenize(text))
    t = p.term()
    tok = p.peek()
    if tok.kind != "eof":
        raise ParseError(tok.pos, f"unexpected {tok.text!r} after term")
    return t
