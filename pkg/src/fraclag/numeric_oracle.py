"""Grid-based evaluation of left-sided fractional operators.

These are independent checks for the formal power rules in
:mod:`fraclag.frac_series` and are never used to produce solutions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, UnsupportedSeries
from .frac_series import FracSeries, evaluate, left_caputo_derivative, left_rl_derivative

DEFAULT_H = 2.0**-12
DEFAULT_TOL = 1e-2
SCHEMES = ("GL", "L1")


@dataclass(frozen=True)
class OracleConfig:
    h: float = DEFAULT_H
    scheme: str = "L1"

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("grid step must be positive")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}")

    def check_grid(self, a: float, b: float) -> None:
        if (b - a) / self.h < 8:
            raise ValueError(f"step {self.h} gives fewer than 8 grid points on [{a}, {b}]")


def _steps(a: float, t: float, h: float) -> int:
    if t <= a:
        raise DomainError(f"need t > a, got t={t}, a={a}")
    # small slack so that exact multiples of h are not lost to rounding
    return int(math.floor((t - a) / h + 1e-9))


def gl_weights(alpha: float, n: int) -> np.ndarray:
    """``w_k = (-1)^k binom(alpha, k)`` for ``k = 0..n``."""
    w = np.ones(n + 1)
    if n:
        k = np.arange(1, n + 1)
        w[1:] = np.cumprod(1.0 - (alpha + 1.0) / k)
    return w


def gl_left_rl(f: Callable, a: float, t: float, alpha: float, h: float = DEFAULT_H):
    """Grünwald-Letnikov approximation of the left RL derivative at ``t``.

    First order in ``h``. ``f`` must accept numpy arrays.
    """
    n = _steps(a, t, h)
    w = gl_weights(alpha, n)
    values = f(t - h * np.arange(n + 1))
    return h**-alpha * np.dot(w, values)


def gl_right_rl(f: Callable, b: float, t: float, alpha: float, h: float = DEFAULT_H):
    """Mirror-image GL sum for the right RL derivative at ``t < b``."""
    if t >= b:
        raise DomainError(f"need t < b, got t={t}, b={b}")
    n = int(math.floor((b - t) / h + 1e-9))
    w = gl_weights(alpha, n)
    values = f(t + h * np.arange(n + 1))
    return h**-alpha * np.dot(w, values)


def l1_weights(alpha: float, n: int) -> np.ndarray:
    k = np.arange(n, dtype=float)
    return (k + 1.0) ** (1.0 - alpha) - k ** (1.0 - alpha)


def l1_left_caputo(f: Callable, a: float, t: float, alpha: float, h: float = DEFAULT_H):
    """L1 product-quadrature approximation of the left Caputo derivative.

    Accuracy is ``O(h**(2 - alpha))`` for smooth ``f``.
    """
    n = _steps(a, t, h)
    values = f(t - h * np.arange(n + 1))
    diffs = values[:-1] - values[1:]
    return h**-alpha / math.gamma(2.0 - alpha) * np.dot(l1_weights(alpha, n), diffs)


@dataclass
class CheckReport:
    scheme: str
    alpha: float
    points: list = field(default_factory=list)
    abs_err: list = field(default_factory=list)
    rel_err: list = field(default_factory=list)
    passed: bool = True

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "alpha": self.alpha,
            "points": list(self.points),
            "abs_err": list(self.abs_err),
            "rel_err": list(self.rel_err),
            "pass": self.passed,
        }


def oracle_check_series(
    s: FracSeries,
    alpha: float,
    points: Sequence[float],
    tol: float = DEFAULT_TOL,
    h: float = DEFAULT_H,
    scheme: str = "L1",
) -> CheckReport:
    """Compare the formal derivative of ``s`` with a grid oracle at ``points``.

    ``scheme="L1"`` checks the Caputo rule, ``scheme="GL"`` the RL rule.
    Only series with strictly positive exponents are accepted.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}")
    if any(p <= 0 for p in s.exponents):
        raise UnsupportedSeries("oracle checks need every exponent > 0")
    points = sorted(float(x) for x in points)
    report = CheckReport(scheme=scheme, alpha=alpha, points=points)
    if s.is_empty():
        report.abs_err = [0.0] * len(points)
        report.rel_err = [0.0] * len(points)
        return report

    if scheme == "L1":
        formal, oracle = left_caputo_derivative(s, alpha), l1_left_caputo
    else:
        formal, oracle = left_rl_derivative(s, alpha), gl_left_rl

    def f(x):
        # grid may touch t = a exactly, where every term (p > 0) vanishes
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        inside = x > s.a
        out[inside] = evaluate(s, x[inside])
        return out

    worst = 0.0
    for t in points:
        exact = complex(evaluate(formal, t))
        approx = complex(oracle(f, s.a, t, alpha, h))
        err = abs(approx - exact)
        rel = err / abs(exact) if exact != 0 else err
        report.abs_err.append(err)
        report.rel_err.append(rel)
        worst = max(worst, rel)
    report.passed = worst <= tol
    return report
