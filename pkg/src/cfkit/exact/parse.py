"""Parser for rational-function expressions such as "2*(m+1)/(2*m+1)".

Grammar (see docs/grammar.md):

    expr    = term { ("+" | "-") term }
    term    = factor { ("*" | "/" | implicit) factor }
    factor  = ("+" | "-") factor | power
    power   = primary [ ("^" | "**") factor ]
    primary = number | name | "(" expr ")"
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .ratfunc import RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_α][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at position {pos}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", "alpha" if name == "α" else name))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, allowed):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allowed = allowed

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> RationalFunction:
        if not self.toks:
            raise ParseError("empty expression")
        r = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return r

    def expr(self):
        r = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            r = r + rhs if op == "+" else r - rhs
        return r

    def term(self):
        r = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("*", "/"):
                self.take()
                rhs = self.factor()
                if val == "/":
                    if rhs.is_zero():
                        raise ParseError(f"division by zero in {self.text!r}")
                    r = r / rhs
                else:
                    r = r * rhs
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                r = r * self.power()
            else:
                return r

    def factor(self):
        kind, val = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.take()
            f = self.factor()
            return -f if val == "-" else f
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek() in (("op", "^"), ("op", "**")):
            self.take()
            e = self.factor()
            if not e.is_const() or e.const_value().denominator != 1:
                raise ParseError(f"exponent must be an integer constant in {self.text!r}")
            n = int(e.const_value())
            if n < 0 and base.is_zero():
                raise ParseError("zero raised to a negative power")
            return base ** n
        return base

    def primary(self):
        kind, val = self.take()
        if kind == "num":
            return RationalFunction.const(Fraction(val))
        if kind == "name":
            if self.allowed is not None and val not in self.allowed:
                raise ParseError(f"unknown variable {val!r}; allowed: {sorted(self.allowed)}")
            return RationalFunction.var(val)
        if kind == "op" and val == "(":
            r = self.expr()
            self.expect(")")
            return r
        if kind is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_rf(text: str, variables=None) -> RationalFunction:
    """Parse an expression into a canonical RationalFunction.

    `variables` restricts the accepted names (None accepts any identifier).
    """
    allowed = None if variables is None else set(variables)
    return _Parser(text, allowed).parse()
