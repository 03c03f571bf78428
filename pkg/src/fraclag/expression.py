"""Text format for coefficient expressions.

Grammar (whitespace ignored)::

    expr   := ["-"] term (("+" | "-") term)*
    term   := coeff ["*"] factor ["*" xpow]
            | [coeff "*"] xpow
            | factor ["*" xpow]
            | coeff
    factor := "(t-a)^" real
    xpow   := "x^" int
    coeff  := real | "(" real ("+" | "-") real "i" ")"

``a`` is a literal symbol; its value is the left end of the interval.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .frac_series import FracSeries
from .lagrangian import CoefficientFunction

MAX_X_POWER = 4

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_UNSIGNED = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_INT = re.compile(r"\d+")


class ParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


@dataclass(frozen=True)
class Term:
    coeff: complex
    exponent: float = 0.0
    x_power: int = 0


@dataclass(frozen=True)
class Expression:
    """Normalized sum of terms: sorted by (exponent, x_power), like terms merged."""

    terms: tuple[Term, ...]

    @classmethod
    def from_terms(cls, terms: Iterable[Term]) -> Expression:
        merged: dict[tuple[float, int], complex] = {}
        for t in terms:
            key = (t.exponent + 0.0, t.x_power)
            merged[key] = merged.get(key, 0j) + t.coeff
        out = [
            Term(_clean(c), p, j) for (p, j), c in sorted(merged.items()) if c != 0
        ]
        return cls(tuple(out))

    @property
    def max_x_power(self) -> int:
        return max((t.x_power for t in self.terms), default=0)

    def to_series(self, a: float) -> FracSeries:
        if self.max_x_power:
            raise ValueError("expression depends on x; expected a function of t only")
        return FracSeries(a, [(t.exponent, t.coeff) for t in self.terms])

    def to_coefficient_function(self, a: float) -> CoefficientFunction:
        return CoefficientFunction.from_terms(
            a, [(t.x_power, t.exponent, t.coeff) for t in self.terms]
        )

    def __str__(self) -> str:
        return format_expression(self)


def _clean(c: complex) -> complex:
    # drop negative zeros so printing is canonical
    return complex(c.real + 0.0, c.imag + 0.0)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: str):
        found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
        raise ParseError(f"expected {expected}, found {found}", self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip_ws()
        return self.text.startswith(s, self.pos)

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.accept(s):
            self.error(repr(s))

    def match(self, pattern: re.Pattern, expected: str) -> str:
        self.skip_ws()
        m = pattern.match(self.text, self.pos)
        if not m:
            self.error(expected)
        self.pos = m.end()
        return m.group()

    def at_factor(self) -> bool:
        self.skip_ws()
        return bool(re.match(r"\(\s*t", self.text[self.pos:]))

    def parse(self) -> Expression:
        terms = []
        sign = -1.0 if self.accept("-") else 1.0
        terms.append(self.term(sign))
        while True:
            if self.accept("+"):
                terms.append(self.term(1.0))
            elif self.accept("-"):
                terms.append(self.term(-1.0))
            else:
                break
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("'+', '-' or end of input")
        return Expression.from_terms(terms)

    def term(self, sign: float) -> Term:
        coeff: complex = 1.0
        exponent, x_power = 0.0, 0
        have_coeff = False
        if self.at_factor():
            exponent = self.factor()
        elif self.peek("x"):
            x_power = self.xpow()
            return Term(sign * coeff, exponent, x_power)
        else:
            coeff = self.coeff()
            have_coeff = True
        if have_coeff:
            starred = self.accept("*")
            if self.at_factor():
                exponent = self.factor()
            elif self.peek("x") and starred:
                return Term(sign * coeff, exponent, self.xpow())
            elif starred:
                self.error("'(t-a)^' or 'x^'")
        if self.accept("*"):
            x_power = self.xpow()
        return Term(sign * coeff, exponent, x_power)

    def factor(self) -> float:
        self.expect("(")
        self.expect("t")
        self.expect("-")
        self.expect("a")
        self.expect(")")
        self.expect("^")
        start = self.pos
        value = float(self.match(_NUMBER, "a real exponent"))
        if value <= -1.0:
            raise ParseError(f"exponent {value!r} must be > -1", start + 1)
        return value

    def xpow(self) -> int:
        self.expect("x")
        self.expect("^")
        start = self.pos
        j = int(self.match(_INT, "an integer power of x"))
        if j > MAX_X_POWER:
            raise ParseError(f"power of x must be <= {MAX_X_POWER}", start + 1)
        return j

    def coeff(self) -> complex:
        if self.accept("("):
            re_part = float(self.match(_NUMBER, "a real number"))
            if self.accept("+"):
                s = 1.0
            elif self.accept("-"):
                s = -1.0
            else:
                self.error("'+' or '-'")
            im_part = s * float(self.match(_UNSIGNED, "an unsigned real number"))
            self.expect("i")
            self.expect(")")
            return complex(re_part, im_part)
        return complex(float(self.match(_UNSIGNED, "a number, '(t-a)^', 'x^' or '('")))


def parse_expression(text: str) -> Expression:
    """Parse ``text`` into a normalized :class:`Expression`."""
    return _Parser(text).parse()


def _format_coeff(c: complex) -> str:
    if c.imag == 0:
        return repr(abs(c.real))
    sign = "+" if c.imag >= 0 else "-"
    return f"({c.real!r}{sign}{abs(c.imag)!r}i)"


def format_expression(expr: Expression) -> str:
    """Canonical text form; parsing it gives back the same expression."""
    if not expr.terms:
        return "0"
    parts = []
    for k, t in enumerate(expr.terms):
        c = t.coeff
        negative = c.imag == 0 and c.real < 0
        body = _format_coeff(c)
        if t.exponent != 0:
            body += f"*(t-a)^{t.exponent!r}"
        if t.x_power:
            body += f"*x^{t.x_power}"
        if k == 0:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts)


def expression_from_series(s: FracSeries) -> Expression:
    return Expression.from_terms(Term(c, p) for p, c in s.terms)
