"""Finite fractional power series in ``(t - a)`` and the formal operators on them.

A :class:`FracSeries` is ``sum_k c_k (t - a)**p_k`` with complex ``c_k`` and
real exponents ``p_k > -1``. Every operator below maps power terms to power
terms, so the class is closed under them as long as no surviving exponent
drops to ``-1`` or below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import CarrierExit, DomainError
from .special_functions import gamma_ratio, phase_factor

#: Exponents closer than this are merged into one term.
EXPONENT_TOL = 1e-12
#: Coefficients below this magnitude are pruned.
ZERO_TOL = 1e-300
#: A merged coefficient whose magnitude is below this fraction of its largest
#: summand is round-off from cancellation and is pruned.
CANCEL_RTOL = 1e-12


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("interval ends must be finite")
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a


def _normalize(terms: Iterable[tuple[float, complex]]) -> tuple[tuple[float, complex], ...]:
    items = sorted(((float(p), complex(c)) for p, c in terms), key=lambda pc: pc[0])
    out: list[tuple[float, complex]] = []
    i = 0
    while i < len(items):
        p, total = items[i]
        scale = abs(total)
        j = i + 1
        while j < len(items) and items[j][0] - p <= EXPONENT_TOL:
            total += items[j][1]
            scale = max(scale, abs(items[j][1]))
            j += 1
        merged = j - i > 1
        if abs(total) >= ZERO_TOL and not (merged and abs(total) <= CANCEL_RTOL * scale):
            out.append((p, total))
        i = j
    return tuple(out)


@dataclass(frozen=True, init=False)
class FracSeries:
    """Immutable fractional power series about the base point ``a``.

    Terms are kept sorted by exponent, merged, and pruned of zero
    coefficients. Construction raises :class:`CarrierExit` if a surviving
    exponent is ``<= -1``.
    """

    a: float
    terms: tuple[tuple[float, complex], ...]

    def __init__(self, a: float = 0.0, terms: Iterable[tuple[float, complex]] = ()):
        normalized = _normalize(terms)
        for p, c in normalized:
            if not math.isfinite(p):
                raise ValueError(f"non-finite exponent {p!r}")
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient {c!r} at exponent {p!r}")
            if p <= -1.0:
                raise CarrierExit(f"exponent {p!r} <= -1 leaves the carrier", exponent=p)
        object.__setattr__(self, "a", float(a))
        object.__setattr__(self, "terms", normalized)

    @classmethod
    def monomial(cls, a: float, p: float, c: complex = 1.0) -> FracSeries:
        return cls(a, [(p, c)])

    @classmethod
    def constant(cls, a: float, c: complex = 1.0) -> FracSeries:
        return cls(a, [(0.0, c)])

    @property
    def exponents(self) -> tuple[float, ...]:
        return tuple(p for p, _ in self.terms)

    @property
    def coeffs(self) -> tuple[complex, ...]:
        return tuple(c for _, c in self.terms)

    def is_empty(self) -> bool:
        return not self.terms

    def is_real(self, tol: float = 0.0) -> bool:
        return all(abs(c.imag) <= tol for c in self.coeffs)

    def coeff_at(self, p: float) -> complex:
        for q, c in self.terms:
            if abs(q - p) <= EXPONENT_TOL:
                return c
        return 0j

    def real_part(self) -> FracSeries:
        return FracSeries(self.a, [(p, c.real) for p, c in self.terms])

    def imag_part(self) -> FracSeries:
        return FracSeries(self.a, [(p, c.imag) for p, c in self.terms])

    def sup_norm(self, span: float) -> float:
        """``max_k |c_k| * span**p_k``; zero for the empty series."""
        return max((abs(c) * span**p for p, c in self.terms), default=0.0)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: FracSeries) -> FracSeries:
        return add(self, other)

    def __neg__(self) -> FracSeries:
        return scale(self, -1.0)

    def __sub__(self, other: FracSeries) -> FracSeries:
        return add(self, scale(other, -1.0))

    def __mul__(self, c: complex) -> FracSeries:
        return scale(self, c)

    __rmul__ = __mul__

    def __call__(self, t):
        return evaluate(self, t)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "terms": [{"p": p, "re": c.real, "im": c.imag} for p, c in self.terms],
        }

    @classmethod
    def from_dict(cls, data: dict) -> FracSeries:
        return cls(
            data["a"],
            [(t["p"], complex(t["re"], t["im"])) for t in data["terms"]],
        )


def _check_base(s1: FracSeries, s2: FracSeries) -> None:
    if s1.a != s2.a:
        raise ValueError(f"base points differ: {s1.a} vs {s2.a}")


def add(s1: FracSeries, s2: FracSeries) -> FracSeries:
    _check_base(s1, s2)
    return FracSeries(s1.a, s1.terms + s2.terms)


def scale(s: FracSeries, c: complex) -> FracSeries:
    return FracSeries(s.a, [(p, c * coef) for p, coef in s.terms])


def mul_monomial(s: FracSeries, q: float, d: complex) -> FracSeries:
    """Multiply by ``d * (t - a)**q``."""
    return FracSeries(s.a, [(p + q, d * c) for p, c in s.terms])


def _check_order(alpha: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"order must satisfy 0 < alpha <= 1, got {alpha!r}")


def _power_map(s: FracSeries, shift: float, factor: Callable[[float], complex]) -> FracSeries:
    # zero factors (pole-kill) are dropped before the carrier check
    out = []
    for p, c in s.terms:
        k = factor(p)
        if k != 0:
            out.append((p + shift, c * k))
    for p, _ in out:
        if p <= -1.0:
            raise CarrierExit(f"operator image has exponent {p!r} <= -1", exponent=p)
    return FracSeries(s.a, out)


def left_rl_derivative(s: FracSeries, alpha: float) -> FracSeries:
    """Left Riemann-Liouville derivative by the power rule.

    ``(t-a)^p -> Gamma(p+1)/Gamma(p+1-alpha) (t-a)^(p-alpha)``; terms with
    ``p + 1 - alpha`` at a gamma pole vanish.
    """
    _check_order(alpha)
    return _power_map(s, -alpha, lambda p: gamma_ratio(p + 1.0, p + 1.0 - alpha))


def left_caputo_derivative(s: FracSeries, alpha: float) -> FracSeries:
    """Left Caputo derivative: the power rule with constants sent to zero."""
    _check_order(alpha)

    def factor(p):
        if abs(p) <= EXPONENT_TOL:
            return 0.0
        return gamma_ratio(p + 1.0, p + 1.0 - alpha)

    return _power_map(s, -alpha, factor)


def right_rl_derivative_formal(s: FracSeries, alpha: float) -> FracSeries:
    """Right derivative by analytic continuation of the power rule.

    Equal to ``exp(i pi alpha)`` times :func:`left_rl_derivative`. This is
    not the integral definition of the right derivative, which does not map
    left-sided powers to left-sided powers.
    """
    _check_order(alpha)
    phase = phase_factor(alpha, +1)
    return _power_map(s, -alpha, lambda p: phase * gamma_ratio(p + 1.0, p + 1.0 - alpha))


def fractional_integral(s: FracSeries, alpha: float) -> FracSeries:
    """Left Riemann-Liouville integral of order ``alpha``."""
    _check_order(alpha)
    return _power_map(s, alpha, lambda p: gamma_ratio(p + 1.0, p + 1.0 + alpha))


def evaluate(s: FracSeries, t):
    """Evaluate at ``t > a``; ``t`` may be a scalar or an array.

    Returns a complex scalar or a complex ndarray.
    """
    x = np.asarray(t, dtype=float)
    if np.any(x <= s.a):
        raise DomainError(f"evaluation requires t > a = {s.a}")
    log_dt = np.log(x - s.a)
    total = np.zeros_like(x, dtype=complex)
    for p, c in s.terms:
        total = total + c * np.exp(p * log_dt)
    if total.ndim == 0:
        return complex(total)
    return total


def allclose(s1: FracSeries, s2: FracSeries, rtol: float = 1e-12, atol: float = 0.0) -> bool:
    """Coefficient-wise comparison with terms matched by exponent.

    A term present on one side only must be within ``atol`` of zero.
    """
    if s1.a != s2.a:
        return False
    exps = sorted(set(s1.exponents) | set(s2.exponents))
    for p in exps:
        c1, c2 = s1.coeff_at(p), s2.coeff_at(p)
        if abs(c1 - c2) > atol + rtol * max(abs(c1), abs(c2)):
            return False
    return True


def max_relative_error(s: FracSeries, ref: FracSeries) -> float:
    """Largest coefficient-wise relative deviation of ``s`` from ``ref``."""
    worst = 0.0
    for p in set(s.exponents) | set(ref.exponents):
        c, r = s.coeff_at(p), ref.coeff_at(p)
        denom = abs(r) if r != 0 else abs(c)
        if denom:
            worst = max(worst, abs(c - r) / denom)
    return worst
