"""Closed forms as small expression trees, evaluated at request precision.

Leaves are exact rationals, named constants and zeta values; inner nodes
are sums, products and integer powers.  Nothing is stored as a decimal
string, so a tree evaluates to whatever precision the context asks for.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from ..context import DEFAULT_CONTEXT, EvaluationContext
from ..special_functions import constants, to_real, zeta

__all__ = [
    "Expr",
    "Rational",
    "Constant",
    "ZetaValue",
    "Sum",
    "Product",
    "Power",
    "PI",
    "E",
    "EULER",
    "LN2",
    "SQRT2",
    "LN_1_SQRT2",
    "Q",
    "as_expr",
]

_CONSTANT_NAMES = ("pi", "e", "euler", "ln2", "sqrt2", "ln(1+sqrt2)")


class Expr:
    """Base class; subclasses implement ``_eval`` at the active mpmath precision."""

    def evaluate(self, ctx: EvaluationContext = DEFAULT_CONTEXT) -> mp.mpf:
        with ctx.workdps():
            return +self._eval(ctx)

    def _eval(self, ctx):
        raise NotImplementedError

    def __add__(self, other):
        return Sum((self, as_expr(other)))

    def __radd__(self, other):
        return Sum((as_expr(other), self))

    def __sub__(self, other):
        return Sum((self, -as_expr(other)))

    def __rsub__(self, other):
        return Sum((as_expr(other), -self))

    def __mul__(self, other):
        return Product((self, as_expr(other)))

    def __rmul__(self, other):
        return Product((as_expr(other), self))

    def __truediv__(self, other):
        other = as_expr(other)
        if not isinstance(other, Rational):
            raise TypeError("closed forms only divide by rationals")
        return Product((self, Rational(1 / other.value)))

    def __neg__(self):
        return Product((Rational(Fraction(-1)), self))

    def __pow__(self, exponent: int):
        return Power(self, int(exponent))


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Rational(Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} in a closed form")


@dataclass(frozen=True, eq=True)
class Rational(Expr):
    value: Fraction

    def _eval(self, ctx):
        return to_real(self.value)

    def __str__(self):
        return str(self.value)


def Q(numerator: int, denominator: int = 1) -> Rational:
    return Rational(Fraction(numerator, denominator))


@dataclass(frozen=True, eq=True)
class Constant(Expr):
    name: str

    def __post_init__(self):
        if self.name not in _CONSTANT_NAMES:
            raise ValueError(f"unknown constant {self.name!r}")

    def _eval(self, ctx):
        if self.name == "ln(1+sqrt2)":
            return mp.log(1 + mp.sqrt(2))
        c = constants(ctx)
        return getattr(c, self.name)

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=True)
class ZetaValue(Expr):
    s: int

    def _eval(self, ctx):
        return zeta(self.s, ctx)

    def __str__(self):
        return f"zeta({self.s})"


@dataclass(frozen=True, eq=True)
class Sum(Expr):
    terms: tuple

    def _eval(self, ctx):
        return mp.fsum(t._eval(ctx) for t in self.terms)

    def __str__(self):
        out = ""
        for i, t in enumerate(self.terms):
            text = str(t)
            if i == 0:
                out = text
            elif text.startswith("-"):
                out += " - " + text[1:]
            else:
                out += " + " + text
        return out


@dataclass(frozen=True, eq=True)
class Product(Expr):
    factors: tuple

    def _eval(self, ctx):
        out = mp.mpf(1)
        for f in self.factors:
            out *= f._eval(ctx)
        return out

    def __str__(self):
        parts = []
        sign = ""
        for f in self.factors:
            if isinstance(f, Rational) and f.value == -1:
                sign = "" if sign else "-"
                continue
            text = str(f)
            if isinstance(f, Rational) and f.value < 0:
                sign = "" if sign else "-"
                text = str(-f.value)
            if isinstance(f, Sum) or (isinstance(f, Rational) and "/" in text and len(self.factors) > 1):
                text = f"({text})"
            parts.append(text)
        return sign + ("*".join(parts) if parts else "1")


@dataclass(frozen=True, eq=True)
class Power(Expr):
    base: Expr
    exponent: int

    def _eval(self, ctx):
        return self.base._eval(ctx) ** self.exponent

    def __str__(self):
        text = str(self.base)
        if not isinstance(self.base, (Constant, ZetaValue)) or text.startswith("-"):
            text = f"({text})"
        return f"{text}^{self.exponent}"


PI = Constant("pi")
E = Constant("e")
EULER = Constant("euler")
LN2 = Constant("ln2")
SQRT2 = Constant("sqrt2")
LN_1_SQRT2 = Constant("ln(1+sqrt2)")
