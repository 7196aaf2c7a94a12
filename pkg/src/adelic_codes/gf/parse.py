"""Recursive-descent parser for the rational-function text grammar.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' ['-'] INT)?
    atom   := INT | 'x' | 't' | '(' expr ')'

Integer literals denote multiples of 1 in F_q; ``t`` is the field generator.
"""

from __future__ import annotations

import re

from .field import Field
from .rational import RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([xt])|(\^|\*|/|\+|-|\(|\)))")


class ParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", col)
        kind = "int" if m.group(1) else "var" if m.group(2) else "op"
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, F: Field):
        self.toks = _tokenize(text)
        self.i = 0
        self.F = F

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def expr(self):
        sign = None
        if self.peek()[1] in ("+", "-"):
            sign = self.take()[1]
        value = self.term()
        if sign == "-":
            value = -value
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[1] in ("*", "/"):
            _, op, col = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", col)
                value = value / rhs
        return value

    def factor(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            kind, val, col = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer", col)
            n = int(val)
            if neg:
                if base.is_zero():
                    raise ParseError("negative power of zero", col)
                n = -n
            base = base ** n
        return base

    def atom(self):
        F = self.F
        kind, val, col = self.take()
        if kind == "int":
            return RationalFunction.const(F, F(int(val)))
        if kind == "var":
            if val == "x":
                return RationalFunction.x(F)
            if F.e == 1:
                raise ParseError("generator 't' used over a prime field", col)
            return RationalFunction.const(F, F.generator)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", col)


def parse_rational(text: str, F: Field) -> RationalFunction:
    """Parse text such as ``"(x^2+3)/(x+1)"`` into a reduced rational function over F."""
    parser = _Parser(text, F)
    value = parser.expr()
    kind, val, col = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing {val!r}", col)
    return value


def parse_poly(text: str, F: Field):
    f = parse_rational(text, F)
    if not f.is_polynomial():
        raise ParseError("expected a polynomial", 1)
    return f.num


def parse_element(text: str, F: Field) -> int:
    f = parse_rational(text, F)
    if not f.is_polynomial() or f.num.degree > 0:
        raise ParseError("expected a field element", 1)
    return f.num.c[0] if f.num.c else 0
