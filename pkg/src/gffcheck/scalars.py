"""Exact scalar fields on a coordinate chart.

A :class:`ScalarField` is a quotient of two multivariate polynomials with
rational coefficients in the chart coordinates.  Polynomials are sympy's
sparse ``PolyElement`` objects (a dict from exponent tuples to ``mpq``
coefficients), which is what this module calls a *Polynomial*.  Rational
constants cross the public API as :class:`fractions.Fraction`.

Cancellation of common factors is lazy: sums over a shared denominator and
products never call a gcd, while :meth:`ScalarField.reduced` does.  Equality
is always decided by cross multiplication, so laziness cannot change a
verdict.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

Polynomial = PolyElement
RationalLike = Union[int, Fraction]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@lru_cache(maxsize=None)
def polynomial_ring(variables: tuple[str, ...]) -> PolyRing:
    """Return the (cached) ring QQ[variables] with graded-lex order."""
    return PolyRing(variables, QQ, grlex)


def to_qq(value: RationalLike):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; use Fraction")
    return QQ.convert(value)


def to_fraction(value) -> Fraction:
    """Convert a ground-domain rational (``mpq``) to a Fraction."""
    return Fraction(int(value.numerator), int(value.denominator))


class Chart:
    """Ordered coordinate names of a single chart."""

    __slots__ = ("coords", "ring", "_zero", "_one")

    def __init__(self, coords: Iterable[str]):
        coords = tuple(coords)
        if not coords:
            raise ValueError("a chart needs at least one coordinate")
        for name in coords:
            if not _IDENT.match(name):
                raise ValueError(f"invalid coordinate name {name!r}")
        if len(set(coords)) != len(coords):
            raise ValueError(f"duplicate coordinate names in {coords}")
        self.coords = coords
        self.ring = polynomial_ring(coords)
        self._zero = ScalarField(self, self.ring.zero)
        self._one = ScalarField(self, self.ring.one)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __eq__(self, other):
        return isinstance(other, Chart) and other.coords == self.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Chart({' '.join(self.coords)})"

    def index(self, coord: str) -> int:
        try:
            return self.coords.index(coord)
        except ValueError:
            raise KeyError(f"unknown coordinate {coord!r}") from None

    @property
    def zero(self) -> "ScalarField":
        return self._zero

    @property
    def one(self) -> "ScalarField":
        return self._one

    def constant(self, value: RationalLike) -> "ScalarField":
        return ScalarField(self, self.ring.ground_new(to_qq(value)))

    def coordinate(self, name: str) -> "ScalarField":
        return ScalarField(self, self.ring.gens[self.index(name)])

    def field(self, value) -> "ScalarField":
        """Coerce a rational number or a polynomial onto this chart; fields pass through."""
        if isinstance(value, ScalarField):
            if value.chart != self:
                raise ValueError(f"field lives on {value.chart}, not {self}")
            return value
        if isinstance(value, PolyElement):
            if value.ring.symbols != self.ring.symbols:
                raise ValueError("polynomial ring does not match chart")
            return ScalarField(self, value)
        return self.constant(value)


class ScalarField:
    """Exact rational function ``num/den`` on a chart.

    The denominator is kept monic (leading coefficient 1 in graded-lex
    order); a constant denominator is always folded into the numerator.
    """

    __slots__ = ("chart", "num", "den")
    __hash__ = None

    def __init__(self, chart: Chart, num: PolyElement, den: PolyElement | None = None):
        ring = chart.ring
        if den is None or den == ring.one:
            self.chart, self.num, self.den = chart, num, ring.one
            return
        if not den:
            raise ZeroDivisionError("denominator is identically zero")
        if den.is_ground:
            c = den.LC
            self.chart, self.num, self.den = chart, num.quo_ground(c), ring.one
            return
        lc = den.LC
        if lc != 1:
            num, den = num.quo_ground(lc), den.quo_ground(lc)
        if not num:
            den = ring.one
        self.chart, self.num, self.den = chart, num, den

    # -- coercion helpers -------------------------------------------------
    def _coerce(self, other) -> "ScalarField":
        if isinstance(other, ScalarField):
            if other.chart is not self.chart and other.chart != self.chart:
                raise ValueError("scalar fields live on different charts")
            return other
        if isinstance(other, (int, Fraction)):
            return ScalarField(self.chart, self.chart.ring.ground_new(to_qq(other)))
        return NotImplemented

    @property
    def is_polynomial(self) -> bool:
        return self.den == 1

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return ScalarField(self.chart, self.num + other.num, self.den)
        if other.den == 1:
            return ScalarField(self.chart, self.num + other.num * self.den, self.den)
        if self.den == 1:
            return ScalarField(self.chart, self.num * other.den + other.num, other.den)
        g, da, db = self.den.cofactors(other.den)
        num = self.num * db + other.num * da
        return ScalarField(self.chart, num, da * db * g).reduced()

    __radd__ = __add__

    def __neg__(self):
        return ScalarField(self.chart, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return self.chart.zero
        if self.den == 1 and other.den == 1:
            return ScalarField(self.chart, self.num * other.num)
        return ScalarField(self.chart, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("division by the identically-zero field")
        if other.num.is_ground and other.den == 1:
            return ScalarField(self.chart, self.num.quo_ground(other.num.LC), self.den)
        return ScalarField(self.chart, self.num * other.den, self.den * other.num).reduced()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        if exponent == 0:
            return self.chart.one  # including 0^0, as for Python numbers
        if self.den == 1:
            return ScalarField(self.chart, self.num**exponent)
        return ScalarField(self.chart, self.num**exponent, self.den**exponent)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    # -- canonical forms --------------------------------------------------
    def reduced(self) -> "ScalarField":
        """Cancel the gcd of numerator and denominator."""
        if self.den == 1 or not self.num:
            return self
        num, den = self.num.cancel(self.den)
        return ScalarField(self.chart, num, den)

    def is_constant(self) -> bool:
        f = self.reduced()
        return f.num.is_ground and f.den == 1

    def constant_value(self) -> Fraction:
        f = self.reduced()
        if not (f.num.is_ground and f.den == 1):
            raise ValueError(f"{f} is not constant")
        return to_fraction(f.num.LC) if f.num else Fraction(0)

    def polynomial(self) -> PolyElement:
        """The field as a Polynomial; raises if it has a real denominator."""
        f = self.reduced()
        if f.den != 1:
            raise ValueError(f"{f} is not a polynomial")
        return f.num

    # -- calculus and evaluation -----------------------------------------
    def diff(self, coord: str | int) -> "ScalarField":
        i = coord if isinstance(coord, int) else self.chart.index(coord)
        if self.den == 1:
            return ScalarField(self.chart, self.num.diff(i))
        num = self.num.diff(i) * self.den - self.num * self.den.diff(i)
        return ScalarField(self.chart, num, self.den**2)

    def evaluate(self, point: Mapping[str, RationalLike] | tuple) -> Fraction:
        values = _point_values(self.chart, point)
        den = _eval_poly(self.den, values)
        if den == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at the point")
        return _eval_poly(self.num, values) / den

    # -- printing ---------------------------------------------------------
    def __str__(self):
        if self.den == 1:
            return format_polynomial(self.num)
        f = self.reduced()
        if f.den == 1:
            return format_polynomial(f.num)
        return f"({format_polynomial(f.num)})/({format_polynomial(f.den)})"

    def __repr__(self):
        return f"ScalarField({self})"


def _point_values(chart: Chart, point) -> tuple[Fraction, ...]:
    if isinstance(point, Mapping):
        missing = [c for c in chart.coords if c not in point]
        if missing:
            raise KeyError(f"point does not bind {', '.join(missing)}")
        unknown = [k for k in point if k not in chart.coords]
        if unknown:
            raise KeyError(f"unknown coordinate(s) {', '.join(unknown)}")
        return tuple(Fraction(point[c]) for c in chart.coords)
    values = tuple(Fraction(v) for v in point)
    if len(values) != chart.dim:
        raise ValueError("point has the wrong number of coordinates")
    return values


def _eval_poly(p: PolyElement, values: tuple[Fraction, ...]) -> Fraction:
    total = Fraction(0)
    for monom, coeff in p.terms():
        term = to_fraction(coeff)
        for v, e in zip(values, monom):
            if e:
                term *= v**e
        total += term
    return total


def format_rational(q) -> str:
    q = q if isinstance(q, Fraction) else to_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_polynomial(p: PolyElement) -> str:
    """Render a polynomial in the expression-file syntax, graded-lex order."""
    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    out = []
    for monom, coeff in p.terms(order=grlex):
        c = to_fraction(coeff)
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e]
        mag = abs(c)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag), *factors])
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(out)


# Operation-level functions mirroring the module contract.

def scalar_arith(a: ScalarField, b, op: str) -> ScalarField:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "pow":
        return a**b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: ScalarField, coord: str) -> ScalarField:
    return f.diff(f.chart.index(coord))


def evaluate_at(f: ScalarField, point: Mapping[str, RationalLike]) -> Fraction:
    return f.evaluate(point)


def is_identically_zero(f: ScalarField) -> bool:
    return f.is_zero()
