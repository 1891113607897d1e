"""Recursive-descent parser for the expression language.

Grammar, loosest binding first::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := primary ("^" unary)?          right associative
    primary := number | x | y | func "(" expr ")" | "(" expr ")"

``func`` is one of sin, cos, tan, exp, log, sqrt; ``**`` is accepted for
``^``.  Thus ``-x^2`` is ``-(x^2)`` and ``2^-1`` is ``0.5``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .expr import FUNCTIONS, VARIABLES, BinOp, Call, Expr, Neg, Num, Var

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
""", re.VERBOSE)


class ParseError(ValueError):
    """Syntax error; ``column`` is 1-based."""

    def __init__(self, message: str, column: int, text: str = ""):
        self.column = column
        self.text = text
        super().__init__(f"{message} at column {column}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


def tokenize(text: str) -> List[Token]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1, text)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            out.append(Token(kind, "^" if tok == "**" else tok, pos + 1))
        pos = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.open_parens: List[int] = []

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _fail(self, what: Optional[str] = None):
        t = self.tok
        if t.kind == "end" and self.open_parens:
            raise ParseError("unclosed '('", self.open_parens[-1], self.text)
        if t.kind == "end":
            raise ParseError(what or "unexpected end of input", t.column, self.text)
        raise ParseError(what or f"unexpected {t.text!r}", t.column, self.text)

    def _eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def _open(self):
        self.open_parens.append(self.tok.column)
        self.i += 1

    def _close(self):
        if not self._eat(")"):
            self._fail("expected ')'")
        self.open_parens.pop()

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            self._fail()
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in ("*", "/"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self._eat("-"):
            return Neg(self.unary())
        if self._eat("+"):
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self._eat("^"):
            return BinOp("^", base, self.unary())
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(float(t.text))
        if t.kind == "ident":
            if t.text in VARIABLES:
                self.i += 1
                return Var(t.text)
            if t.text in FUNCTIONS:
                self.i += 1
                if not (self.tok.kind == "op" and self.tok.text == "("):
                    self._fail(f"expected '(' after {t.text!r}")
                self._open()
                arg = self.expr()
                self._close()
                return Call(t.text, arg)
            raise ParseError(f"unknown identifier {t.text!r}", t.column, self.text)
        if t.kind == "op" and t.text == "(":
            self._open()
            node = self.expr()
            self._close()
            return node
        self._fail()


def parse_expression(text: str) -> Expr:
    return _Parser(text).parse()
