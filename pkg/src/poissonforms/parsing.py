"""Recursive descent parser for scalar expressions and differential forms.

Grammar (whitespace insignificant):

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('+' | '-') factor | atom ('^' exponent)?
    atom    := INT | 'i' | NAME | 'd' '[' NAME ']' | '(' expr ')'

'^' after a 0-form takes a signed integer exponent; after a form of
positive degree it wedges with the next factor.  '/' requires a 0-form
divisor.  Multiplication is never implicit.
"""

from __future__ import annotations

import re as _re

from .forms import DiffForm
from .ratexpr import Chart, RatExpr
from .scalars import GaussianRational

_TOKEN_RE = _re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[-+*/^()\[\]]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            stripped = text[pos:].strip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.text = text
        self.chart = chart
        self.tokens = _tokenize(text)
        self.k = 0

    def _peek(self):
        if self.k < len(self.tokens):
            return self.tokens[self.k]
        return ("end", None, len(self.text))

    def _next(self):
        tok = self._peek()
        self.k += 1
        return tok

    def _expect_sym(self, sym: str):
        kind, val, pos = self._next()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r}", pos)

    def parse(self) -> DiffForm:
        out = self.expr()
        kind, val, pos = self._peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing {val!r}", pos)
        return out

    def expr(self) -> DiffForm:
        out = self.term()
        while True:
            kind, val, _ = self._peek()
            if kind == "sym" and val in "+-":
                self.k += 1
                rhs = self.term()
                out = out + rhs if val == "+" else out - rhs
            else:
                return out

    def term(self) -> DiffForm:
        out = self.factor()
        while True:
            kind, val, pos = self._peek()
            if kind == "sym" and val in "*/":
                self.k += 1
                rhs = self.factor()
                if val == "*":
                    out = out * rhs
                else:
                    if rhs.degrees() not in (set(), {0}):
                        raise ParseError("cannot divide by a form", pos)
                    sc = rhs.scalar_part()
                    if sc.is_zero():
                        raise ParseError("division by zero", pos)
                    out = out * DiffForm.from_scalar(sc ** -1)
            else:
                return out

    def factor(self) -> DiffForm:
        kind, val, pos = self._peek()
        if kind == "sym" and val in "+-":
            self.k += 1
            inner = self.factor()
            return inner if val == "+" else -inner
        out = self.atom()
        kind, val, pos = self._peek()
        if kind == "sym" and val == "^":
            self.k += 1
            if out.degrees() in (set(), {0}):
                n = self._signed_int()
                sc = out.scalar_part()
                return DiffForm.from_scalar(sc ** n)
            rhs = self.factor()
            return out * rhs
        return out

    def _signed_int(self) -> int:
        kind, val, pos = self._peek()
        neg = False
        if kind == "sym" and val in "+-":
            neg = val == "-"
            self.k += 1
            kind, val, pos = self._peek()
        if kind != "int":
            raise ParseError("expected an integer exponent", pos)
        self.k += 1
        return -val if neg else val

    def atom(self) -> DiffForm:
        kind, val, pos = self._next()
        chart = self.chart
        if kind == "int":
            return DiffForm.const(chart, val)
        if kind == "name":
            if val == "i":
                return DiffForm.const(chart, GaussianRational(0, 1))
            if val == "d":
                k2, v2, _ = self._peek()
                if k2 == "sym" and v2 == "[":
                    self.k += 1
                    k3, v3, p3 = self._next()
                    if k3 != "name":
                        raise ParseError("expected a coordinate name", p3)
                    if v3 not in chart.names:
                        raise ParseError(f"unknown coordinate {v3!r}", p3)
                    self._expect_sym("]")
                    return DiffForm.d_coord(chart, v3)
            if val in chart.names:
                return DiffForm.coord(chart, val)
            raise ParseError(f"unknown name {val!r}", pos)
        if kind == "sym" and val == "(":
            inner = self.expr()
            self._expect_sym(")")
            return inner
        raise ParseError("expected a value", pos)


def parse_form(text: str, chart: Chart) -> DiffForm:
    return _Parser(text, chart).parse()


def parse_scalar(text: str, chart: Chart) -> RatExpr:
    form = parse_form(text, chart)
    if form.degrees() not in (set(), {0}):
        raise ParseError("expected a scalar expression", 0)
    return form.scalar_part()
