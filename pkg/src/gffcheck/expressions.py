"""Tokenizer and recursive-descent parser for polynomial expressions.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nonneg-int)?
    base     := rational | ident | '(' expr ')' | '-' base
    rational := int ('/' positive-int)?

Literals are exact; a decimal point is a syntax error.  A leading minus
applies to the whole factor, so ``-y^2`` is ``-(y^2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .scalars import Chart, ScalarField


class ParseError(ValueError):
    """Syntax or binding error, with 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OP, END
    text: str
    line: int
    column: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            break
        start = m.start(m.lastindex)
        col = column + start
        if m.group(1) is not None:
            if m.end() < len(text) and text[m.end()] == ".":
                raise ParseError("decimal literals are not allowed; use a/b", line, column + m.end())
            tokens.append(Token("INT", m.group(1), line, col))
        elif m.group(2) is not None:
            tokens.append(Token("IDENT", m.group(2), line, col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tokens.append(Token("OP", ch, line, col))
        pos = m.end()
    tokens.append(Token("END", "", line, column + len(text.rstrip())))
    return tokens


class _Parser:
    """Generic over the value type: ``atom`` maps identifiers to values."""

    def __init__(self, tokens: list[Token], atom: Callable[[Token], object], const: Callable[[Fraction], object]):
        self.tokens = tokens
        self.i = 0
        self.atom = atom
        self.const = const

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text or tok.kind != "OP":
            found = "end of input" if tok.kind == "END" else repr(tok.text)
            raise ParseError(f"expected {text!r}, found {found}", tok.line, tok.column)
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
        return value

    def expr(self):
        value = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek().kind == "OP" and self.peek().text == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        value = self.base()
        if self.peek().kind == "OP" and self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "INT":
                raise ParseError("exponent must be a non-negative integer", tok.line, tok.column)
            value = value ** int(tok.text)
        return value

    def base(self):
        tok = self.take()
        if tok.kind == "INT":
            num = int(tok.text)
            if self.peek().kind == "OP" and self.peek().text == "/":
                self.take()
                den_tok = self.take()
                if den_tok.kind != "INT":
                    raise ParseError("denominator must be a positive integer", den_tok.line, den_tok.column)
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError("zero denominator", den_tok.line, den_tok.column)
                return self.const(Fraction(num, den))
            return self.const(Fraction(num))
        if tok.kind == "IDENT":
            return self.atom(tok)
        if tok.kind == "OP" and tok.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "OP" and tok.text == "-":
            # "-y^2" means -(y^2), as in ordinary notation
            return -self.factor()
        found = "end of input" if tok.kind == "END" else repr(tok.text)
        raise ParseError(f"unexpected {found}", tok.line, tok.column)


def parse_expression(text: str, coords: Chart | Sequence[str], line: int = 1, column: int = 1) -> ScalarField:
    """Parse ``text`` into an exact scalar field over ``coords``."""
    chart = coords if isinstance(coords, Chart) else Chart(coords)

    def atom(tok: Token) -> ScalarField:
        if tok.text not in chart.coords:
            raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.column)
        return chart.coordinate(tok.text)

    return _Parser(tokenize(text, line, column), atom, chart.constant).parse()


class _Linear:
    """Formal linear combination sum_k c_k * e_k with scalar-field coefficients.

    Used to parse vector expressions such as ``dx - y*Z1``; products of two
    basis symbols are rejected, so every value stays homogeneous of degree
    zero (a pure scalar) or one (a vector).
    """

    __slots__ = ("chart", "scalar", "vec")

    def __init__(self, chart, scalar=None, vec=None):
        self.chart = chart
        self.scalar = scalar if scalar is not None else chart.zero
        self.vec = vec or {}

    def _lift(self, other):
        if isinstance(other, _Linear):
            return other
        return _Linear(self.chart, self.chart.field(other))

    def __add__(self, other):
        other = self._lift(other)
        if (self.vec and other.scalar) or (other.vec and self.scalar):
            raise ValueError("cannot add a scalar to a vector")
        vec = dict(self.vec)
        for k, c in other.vec.items():
            vec[k] = vec[k] + c if k in vec else c
        return _Linear(self.chart, self.scalar + other.scalar, vec)

    def __neg__(self):
        return _Linear(self.chart, -self.scalar, {k: -c for k, c in self.vec.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        if self.vec and other.vec:
            raise ValueError("product of two vectors")
        if self.vec:
            return _Linear(self.chart, self.chart.zero, {k: c * other.scalar for k, c in self.vec.items()})
        if other.vec:
            return _Linear(self.chart, self.chart.zero, {k: self.scalar * c for k, c in other.vec.items()})
        return _Linear(self.chart, self.scalar * other.scalar)

    def __pow__(self, e):
        if self.vec and e != 1:
            raise ValueError("powers of vectors are not allowed")
        if self.vec:
            return self
        return _Linear(self.chart, self.scalar**e)


def parse_vector_expression(text: str, chart: Chart, basis: dict[str, Sequence[ScalarField]], line: int = 1, column: int = 1):
    """Parse a vector expression over named basis vectors.

    ``basis`` maps alias names (``dx``, ``Z1``, ...) to component lists.
    Returns the list of components in the coordinate frame.
    """

    def atom(tok: Token):
        if tok.text in basis:
            return _Linear(chart, None, {tok.text: chart.one})
        if tok.text in chart.coords:
            return _Linear(chart, chart.coordinate(tok.text))
        raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.column)

    def const(q: Fraction):
        return _Linear(chart, chart.constant(q))

    try:
        value = _Parser(tokenize(text, line, column), atom, const).parse()
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), line, column) from None
    if value.scalar:
        raise ParseError("vector expression has a scalar part", line, column)
    comps = [chart.zero] * chart.dim
    for name, coeff in value.vec.items():
        for i, b in enumerate(basis[name]):
            comps[i] = comps[i] + coeff * b
    return comps
