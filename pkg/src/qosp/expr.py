"""Parser for expressions over generators and deformation parameters.

Grammar (whitespace between factors means multiplication)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (('*'|'/'|<juxtaposition>) factor)*
    factor  := atom ['^' ['-'] INT]
    atom    := INT | NAME | '(' expr ')'

Parameters are central; generators are not. ``/`` and negative powers are
allowed only on Laurent-monomial scalars.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .element import EnvelopingElement
from .scalar import LaurentPoly

__all__ = ["ExprSyntaxError", "parse_expr", "parse_scalar"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        kind = ("int", "name", "op")[m.lastindex - 1]
        toks.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, variables, generators, aliases):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)
        self.gens = set(generators)
        self.aliases = dict(aliases or {})

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, tok[2], self.text)

    def expect(self, value):
        t = self.peek()
        if t[0] != "op" or t[1] != value:
            self.error(f"expected {value!r}")
        return self.take()

    def parse(self) -> EnvelopingElement:
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term() * sign
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def _starts_factor(self, t):
        return t[0] in ("int", "name") or (t[0] == "op" and t[1] == "(")

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif t[0] == "op" and t[1] == "/":
                self.take()
                d = self.factor()
                acc = acc * self._invert(d, t)
            elif self._starts_factor(t):
                acc = acc * self.factor()
            else:
                return acc

    def _invert(self, e: EnvelopingElement, tok):
        if not e.is_scalar():
            self.error("division by a non-scalar", tok)
        c = e.scalar_part()
        if c.is_zero():
            self.error("division by zero", tok)
        if not c.is_monomial():
            self.error("division by a non-monomial scalar", tok)
        return EnvelopingElement.scalar(c.inverse(), self.vars)

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            neg = False
            t2 = self.peek()
            if t2[0] == "op" and t2[1] == "-":
                self.take()
                neg = True
            t3 = self.peek()
            if t3[0] != "int":
                self.error("expected integer exponent")
            self.take()
            k = int(t3[1])
            if neg:
                base = self._invert(base, t)
            out = EnvelopingElement.scalar(1, self.vars)
            for _ in range(k):
                out = out * base
            return out
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "int":
            self.take()
            return EnvelopingElement.scalar(Fraction(int(t[1])), self.vars)
        if t[0] == "name":
            self.take()
            name = t[1]
            if name in self.gens:
                return EnvelopingElement.word((name,), self.vars)
            if name in self.vars:
                return EnvelopingElement.scalar(LaurentPoly.var(name, self.vars), self.vars)
            if name in self.aliases:
                return EnvelopingElement.scalar(self.aliases[name], self.vars)
            self.error(f"unknown name {name!r}", t)
        if t[0] == "op" and t[1] == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if t[0] == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {t[1]!r}")


def parse_expr(text: str, variables, generators=(), aliases: Mapping[str, LaurentPoly] | None = None
               ) -> EnvelopingElement:
    """Parse ``text`` into an element; positions in errors are 0-based character offsets."""
    return _Parser(text, variables, generators, aliases).parse()


def parse_scalar(text: str, variables, aliases=None) -> LaurentPoly:
    e = parse_expr(text, variables, (), aliases)
    return e.scalar_part()
