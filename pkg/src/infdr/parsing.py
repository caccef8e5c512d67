"""Text syntax for polynomials and differential forms.

Polynomials: rationals ``a/b`` and integers, variables ``x<j>``,
``y<i>_<j>`` and ``v<k>_<j>``, operators ``+ - *``, power ``**`` and
parentheses.  Forms: a sum of ``(<poly>) dx<j1>^dx<j2>^...`` where ``^``
is the wedge; a 0-form is just ``(<poly>)``.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .core import BASE, INF, VERTEX, Poly, Var
from .derham import DForm

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<dx>dx(?P<dxj>\d+))
  | (?P<var>x(?P<xj>\d+)|(?P<kind>[yv])(?P<row>\d+)_(?P<col>\d+))
  | (?P<op>\*\*|[-+*^()])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class RepeatedIndexWarning(UserWarning):
    """A wedge with a repeated dx; the term is zero."""


@dataclass(frozen=True)
class Token:
    kind: str  # num, var, dx, op, end
    text: str
    pos: int
    value: object = None


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if match.group("ws"):
            pass
        elif match.group("num"):
            a, _, b = match.group("num").partition("/")
            if b and int(b) == 0:
                raise ParseError("zero denominator", pos)
            tokens.append(Token("num", match.group(0), pos, Fraction(int(a), int(b) if b else 1)))
        elif match.group("dx"):
            tokens.append(Token("dx", match.group(0), pos, int(match.group("dxj"))))
        elif match.group("var"):
            if match.group("xj"):
                var = Var.base(int(match.group("xj")))
            elif match.group("kind") == "y":
                var = Var.inf(int(match.group("row")), int(match.group("col")))
            else:
                var = Var.vertex(int(match.group("row")), int(match.group("col")))
            tokens.append(Token("var", match.group(0), pos, var))
        else:
            tokens.append(Token("op", match.group(0), pos))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int, m: int | None, coords: str | None):
        self.tokens = tokenize(text)
        self.i = 0
        self.n, self.m, self.coords = n, m, coords

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.unexpected(f"expected {text!r}")
        return self.advance()

    def unexpected(self, hint: str = "") -> None:
        tok = self.tok
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        msg = f"unexpected {what}"
        if tok.kind == "op" and tok.text == "^":
            msg += " (use ** for powers)"
        elif hint:
            msg += f" ({hint})"
        raise ParseError(msg, tok.pos)

    # expr := term (('+' | '-') term)*
    def expr(self) -> Poly:
        out = self.term()
        while self.at("+") or self.at("-"):
            sign = self.advance().text
            rhs = self.term()
            out = out + rhs if sign == "+" else out - rhs
        return out

    # term := unary ('*' unary)*
    def term(self) -> Poly:
        out = self.unary()
        while self.at("*"):
            self.advance()
            out = out * self.unary()
        return out

    # unary := '-' unary | power
    def unary(self) -> Poly:
        if self.at("-"):
            self.advance()
            return -self.unary()
        return self.power()

    # power := atom ('**' integer)?
    def power(self) -> Poly:
        base = self.atom()
        if self.at("**"):
            self.advance()
            tok = self.tok
            if tok.kind != "num" or tok.value.denominator != 1:
                self.unexpected("exponent must be a non-negative integer")
            self.advance()
            return base ** int(tok.value)
        return base

    def atom(self) -> Poly:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Poly.const(tok.value)
        if tok.kind == "var":
            self.check_var(tok)
            self.advance()
            return Poly.var(tok.value)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.unexpected()

    def check_var(self, tok: Token) -> None:
        v: Var = tok.value
        if self.coords == "vertex" and v.kind != VERTEX:
            raise ParseError(f"{tok.text} is not a vertex-coordinate variable", tok.pos)
        if self.coords == "difference" and v.kind == VERTEX:
            raise ParseError(f"{tok.text} is not a difference-coordinate variable", tok.pos)
        if self.coords == "base" and v.kind != BASE:
            raise ParseError(f"{tok.text} is not a base variable", tok.pos)
        if not 1 <= v.column <= self.n:
            raise ParseError(f"{tok.text}: index outside 1..{self.n}", tok.pos)
        if v.kind == INF and (self.m is None or not 1 <= v.row <= self.m):
            raise ParseError(f"{tok.text}: row outside 1..{self.m or 0}", tok.pos)
        if v.kind == VERTEX and (self.m is None or not 1 <= v.row <= self.m + 1):
            raise ParseError(f"{tok.text}: vertex outside 1..{(self.m or 0) + 1}", tok.pos)

    def finish(self) -> None:
        if self.tok.kind != "end":
            self.unexpected()

    # form := fterm (('+' | '-') fterm)*
    def form(self, degree: int | None) -> DForm:
        terms = []
        sign = 1
        while True:
            start = self.tok.pos
            coeff = self.form_coefficient()
            idx = self.wedge()
            if not idx and not coeff:
                pass  # a bare 0 is the zero form of any degree
            elif degree is None:
                degree = len(idx)
            elif len(idx) != degree:
                raise ParseError(f"term has degree {len(idx)}, expected {degree}", start)
            if len(set(idx)) < len(idx):
                warnings.warn(f"repeated index in dx wedge at offset {start}; term is 0", RepeatedIndexWarning, stacklevel=3)
            if coeff:
                terms.append((coeff.scale(sign), idx))
            if self.at("+") or self.at("-"):
                sign = 1 if self.advance().text == "+" else -1
                continue
            break
        self.finish()
        return DForm.from_terms(self.n, degree or 0, terms)

    def form_coefficient(self) -> Poly:
        if self.at("-"):
            self.advance()
            return -self.form_coefficient()
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Poly.const(tok.value)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.unexpected("a form term starts with (coefficient)")

    def wedge(self) -> tuple:
        idx = []
        if self.tok.kind != "dx":
            return ()
        while True:
            tok = self.tok
            if tok.kind != "dx":
                self.unexpected("expected dx<j>")
            if not 1 <= tok.value <= self.n:
                raise ParseError(f"{tok.text}: index outside 1..{self.n}", tok.pos)
            idx.append(tok.value)
            self.advance()
            if not self.at("^"):
                return tuple(idx)
            self.advance()


def parse_poly(text: str, n: int, m: int | None = None, coords: str | None = "difference") -> Poly:
    """Parse a polynomial; ``coords`` restricts the variable kinds allowed
    ("difference": x and y, "vertex": v only, "base": x only, None: any)."""
    p = _Parser(text, n, m, coords)
    out = p.expr()
    p.finish()
    return out


def parse_form(text: str, n: int, degree: int | None = None) -> DForm:
    p = _Parser(text, n, None, "base")
    return p.form(degree)
