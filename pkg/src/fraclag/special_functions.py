"""Gamma-function helpers and unit phase factors.

Complex scalars are plain Python ``complex`` values throughout the package.
"""
from __future__ import annotations

import cmath
import math

from .errors import PoleError

#: Absolute distance from a non-positive integer inside which an argument is
#: treated as an exact pole.
POLE_TOL = 1e-12

#: Above this argument size ratios are formed from log-gamma differences.
LOG_SPACE_THRESHOLD = 30.0


def is_pole(x: float) -> bool:
    """True when ``x`` is within :data:`POLE_TOL` of 0, -1, -2, ..."""
    if x > POLE_TOL:
        return False
    return abs(x - round(x)) <= POLE_TOL


def gamma(x: float) -> float:
    """Euler's gamma function for real arguments.

    Negative non-integer arguments go through the reflection formula
    ``Gamma(x) Gamma(1 - x) = pi / sin(pi x)``.
    """
    if is_pole(x):
        raise PoleError(f"gamma has a pole at {x!r}")
    if x > 0:
        return math.gamma(x)
    return math.pi / (_sinpi(x) * math.gamma(1.0 - x))


def _log_abs_gamma_and_sign(x: float) -> tuple[float, float]:
    if x > 0:
        return math.lgamma(x), 1.0
    # sign of Gamma alternates on each unit interval left of zero
    sign = -1.0 if math.floor(x) % 2 else 1.0
    return math.lgamma(x), sign


def gamma_ratio(num: float, den: float) -> float:
    """Return ``Gamma(num) / Gamma(den)``.

    A finite numerator over a pole is exactly zero. When both arguments are
    poles the limit ratio of residues is returned.
    """
    num_pole, den_pole = is_pole(num), is_pole(den)
    if den_pole and not num_pole:
        return 0.0
    if num_pole and not den_pole:
        raise PoleError(f"numerator argument {num!r} is a pole of gamma")
    if num_pole and den_pole:
        # Res_{-m} Gamma = (-1)^m / m!
        m, n = -round(num), -round(den)
        return (-1.0) ** (n - m) * math.exp(math.lgamma(n + 1) - math.lgamma(m + 1))

    if max(abs(num), abs(den)) > LOG_SPACE_THRESHOLD:
        ln_num, s_num = _log_abs_gamma_and_sign(num)
        ln_den, s_den = _log_abs_gamma_and_sign(den)
        diff = ln_num - ln_den
        if diff > 709.0:
            # true ratio is beyond double range
            return math.copysign(math.inf, s_num * s_den)
        return s_num * s_den * math.exp(diff)
    return gamma(num) / gamma(den)


def _sinpi(x: float) -> float:
    # exact zeros and unit values at integers and half-integers
    r = math.fmod(x, 2.0)
    if r == 0.0 or abs(r) == 1.0:
        return 0.0
    if r == 0.5 or r == -1.5:
        return 1.0
    if r == -0.5 or r == 1.5:
        return -1.0
    return math.sin(math.pi * r)


def _cospi(x: float) -> float:
    return _sinpi(x + 0.5)


def phase_factor(alpha: float, sign: int) -> complex:
    """``exp(sign * i * pi * alpha)`` with exact values at half-integer ``alpha``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return complex(_cospi(alpha), sign * _sinpi(alpha))


def from_polar(modulus: float, phase: float) -> complex:
    return cmath.rect(modulus, phase)
