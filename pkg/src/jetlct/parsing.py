"""Text form of polynomials.

Grammar (whitespace insensitive)::

    expr   := [+|-] term ((+|-) term)*
    term   := factor ((*|/) factor)*
    factor := (+|-) factor | atom [^ INT]
    atom   := INT | NAME | ( expr )

``NAME`` is a ring variable (jet variables look like ``x@3``) or the
parameter of F_p(s).  Division is only allowed by nonzero constants, so
``(s+1)/(s^2+1)*x`` and ``1/2*x`` are fine while ``x/y`` is rejected.
Printing emits terms in descending degrevlex order and re-parses to the
identical polynomial.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .fields import Rationals
from .polynomial import Polynomial, PolyRing

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*(?:@\d+)?)|(?P<op>\*\*|[-+*/^()]))"
)


def tokenize(text: str, line: int | None = None) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1
            while col <= len(text) and text[col - 1].isspace():
                col += 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        kind = m.lastgroup
        value = m.group(kind)
        if value == "**":
            value = "^"
        tokens.append((kind, value, m.start(kind) + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing, line: int | None):
        self.ring = ring
        self.line = line
        self.tokens = tokenize(text, line)
        self.i = 0
        self.param = getattr(ring.field, "parameter", None)

    def error(self, msg: str, col: int | None = None):
        if col is None:
            col = self.tokens[self.i][2]
        raise ParseError(msg, self.line, col)

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        value = self.expr()
        kind, tok, col = self.peek()
        if kind != "end":
            self.error(f"unexpected {tok!r}", col)
        return value

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, col = self.take()[1], self.peek()[2]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.error("division is only allowed by a nonzero constant", col)
                value = value.scale(self.ring.field.inv(rhs.terms[(0,) * self.ring.nvars]))
        return value

    def factor(self) -> Polynomial:
        kind, tok, col = self.peek()
        if kind == "op" and tok in ("+", "-"):
            self.take()
            value = self.factor()
            return -value if tok == "-" else value
        value = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, tok, col = self.take()
            if kind != "int":
                self.error("exponent must be a nonnegative integer", col)
            value = value ** int(tok)
        return value

    def atom(self) -> Polynomial:
        kind, tok, col = self.take()
        if kind == "int":
            return self.ring.constant(self.ring.field.from_int(int(tok)))
        if kind == "name":
            if tok == self.param:
                return self.ring.constant(self.ring.field.gen())
            try:
                return self.ring.gen(tok)
            except KeyError:
                self.error(f"unknown variable {tok!r}", col)
        if kind == "op" and tok == "(":
            value = self.expr()
            kind, tok, col = self.take()
            if tok != ")":
                self.error("expected ')'", col)
            return value
        if kind == "end":
            self.error("unexpected end of input", col)
        self.error(f"unexpected {tok!r}", col)


def parse_polynomial(text: str, ring: PolyRing, line: int | None = None) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``."""
    return _Parser(text, ring, line).parse()


def format_monomial(exp, names) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    field = f.ring.field
    names = f.ring.names
    signed = isinstance(field, Rationals)
    out = []
    for exp, c in f.ordered_terms():
        negative = signed and field.is_negative(c)
        if negative:
            c = -c
        mono = format_monomial(exp, names)
        if not mono:
            body = field.format(c)
            if field.needs_parens(c):
                body = f"({body})"
        elif field.is_one(c):
            body = mono
        else:
            coeff = field.format(c)
            if field.needs_parens(c):
                coeff = f"({coeff})"
            body = f"{coeff}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out) if out else "0"
