"""Recursive-descent parser for polynomial expressions.

Grammar (no implicit multiplication)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | "+" unary | power
    power  := atom ("^" exp)?
    exp    := ["+" | "-"] INTEGER ("^" exp)? | "(" exp ")"
    atom   := INTEGER | NAME | "(" expr ")"

Division is only allowed by a nonzero constant; exponents are
nonnegative integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .algebra import Field, UPoly
from .series import Series

__all__ = ["ParseError", "parse_expression", "parse_upoly"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.message = message
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


@dataclass
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        start = m.start(m.lastindex)
        num, name, op = m.groups()
        if num is not None:
            toks.append(_Tok("num", num, start))
        elif name is not None:
            toks.append(_Tok("name", name, start))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", start)
            toks.append(_Tok("op", op, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str], field: Field):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = {v: k for k, v in enumerate(names)}
        if len(self.names) != len(names):
            raise ParseError("duplicate variable names")
        self.n = len(names)
        self.field = field

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str) -> _Tok:
        t = self.take()
        if t.kind != "op" or t.text != op:
            raise ParseError(f"expected {op!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def parse(self) -> Series:
        value = self.expr()
        t = self.peek()
        if t.kind != "end":
            if t.kind in ("num", "name") or t.text == "(":
                raise ParseError("implicit multiplication is not allowed; use '*'", t.pos)
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return value

    def is_op(self, *ops) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text in ops

    def expr(self) -> Series:
        value = self.term()
        while self.is_op("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Series:
        value = self.unary()
        while self.is_op("*", "/"):
            t = self.take()
            rhs = self.unary()
            if t.text == "*":
                value = value * rhs
            else:
                c = self._constant(rhs, t.pos, "division")
                if c == 0:
                    raise ParseError("division by zero", t.pos)
                value = value.scale(self.field.inv(c))
        return value

    def unary(self) -> Series:
        if self.is_op("-"):
            self.take()
            return -self.unary()
        if self.is_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Series:
        base = self.atom()
        if self.is_op("^"):
            self.take()
            return base**self.exponent()
        return base

    def exponent(self) -> int:
        # Exponents are integers, never field elements.
        t = self.peek()
        if self.is_op("("):
            self.take()
            e = self.exponent()
            self.expect(")")
        else:
            sign = 1
            if self.is_op("-", "+"):
                sign = -1 if self.take().text == "-" else 1
            num = self.take()
            if num.kind != "num":
                raise ParseError("exponent must be an integer literal", num.pos)
            e = sign * int(num.text)
        if self.is_op("^"):
            self.take()
            e = e ** self.exponent() if e >= 0 else -1
        if e < 0:
            raise ParseError("exponent must be a nonnegative integer", t.pos)
        return e

    def atom(self) -> Series:
        t = self.take()
        if t.kind == "num":
            return Series.constant(self.n, self.field, int(t.text))
        if t.kind == "name":
            if t.text not in self.names:
                raise ParseError(f"unknown variable {t.text!r}", t.pos)
            return Series.variable(self.n, self.field, self.names[t.text])
        if t.kind == "op" and t.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    def _constant(self, s: Series, pos: int, what: str):
        if any(any(e) for e in s.terms):
            raise ParseError(f"{what} needs a constant", pos)
        return s.coeff((0,) * self.n)


def parse_expression(text: str, names: Sequence[str], field: Field) -> Series:
    """Parse ``text`` into a fully expanded Series in the given variables."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text, list(names), field).parse()


def parse_upoly(text: str, field: Field, var: str = "T") -> UPoly:
    s = parse_expression(text, [var], field)
    top = s.max_exponent(0)
    return UPoly(field, tuple(s.coeff((j,)) for j in range(top + 1)))
