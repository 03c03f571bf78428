"""Series solution of the fractional oscillator.

Solves ``tD_b^alpha (caputo_a D_t^alpha x) = lam * x`` with the ansatz
``x(t) = sum_n a_n (t - a)**(n*alpha + alpha - 1)``. The right derivative is
the formal continuation rule, which gives the two-step recurrence

    a_{n+2} = lam * exp(-i pi alpha) * Gamma((n+1) alpha) / Gamma((n+3) alpha) * a_n

seeded by the free constants ``a0`` and ``a1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import TruncationWarning
from .frac_series import (
    FracSeries,
    Interval,
    left_caputo_derivative,
    right_rl_derivative_formal,
)
from .special_functions import gamma_ratio, phase_factor

DEFAULT_ORDER = 30
TRUNCATION_TOL = 1e-10


@dataclass(frozen=True)
class OscillatorProblem:
    alpha: float
    lam: float
    interval: Interval
    a0: float = 1.0
    a1: float = 0.0
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        for name in ("lam", "a0", "a1"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def exponent(self, n: int) -> float:
        return n * self.alpha + self.alpha - 1.0


@dataclass(frozen=True)
class OscillatorSolution:
    complex_series: FracSeries
    x1: FracSeries
    x2: FracSeries
    coefficients: tuple[complex, ...]
    warnings: tuple[TruncationWarning, ...] = field(default=())

    @property
    def truncated(self) -> bool:
        return bool(self.warnings)


def recurrence_step(a_n: complex, n: int, alpha: float, lam: float) -> complex:
    """Return ``a_{n+2}`` from ``a_n``."""
    factor = lam * phase_factor(alpha, -1)
    return factor * gamma_ratio((n + 1) * alpha, (n + 3) * alpha) * a_n


def iterate_recurrence(problem: OscillatorProblem) -> list[complex]:
    """Coefficients ``a_0 .. a_{2N+1}`` by repeated :func:`recurrence_step`."""
    coeffs = [complex(problem.a0), complex(problem.a1)]
    for n in range(2 * problem.order):
        coeffs.append(recurrence_step(coeffs[n], n, problem.alpha, problem.lam))
    return coeffs


def closed_form_coefficients(problem: OscillatorProblem) -> tuple[list[complex], list[complex]]:
    """Resolved coefficients ``a_{2(n+1)}`` and ``a_{2(n+1)+1}`` for ``n < N``.

    ``even[n] = (lam e^{-i pi alpha})^{n+1} Gamma(alpha)/Gamma((2n+3) alpha) a0``
    ``odd[n]  = (lam e^{-i pi alpha})^{n+1} Gamma(2 alpha)/Gamma((2n+4) alpha) a1``
    """
    al, lam = problem.alpha, problem.lam
    # (lam e^{-i pi alpha})^k taken as lam^k e^{-i pi k alpha} so large k keeps exact phase
    even, odd = [], []
    for n in range(problem.order):
        k = n + 1
        power = lam**k * phase_factor((k * al) % 2.0, -1)
        even.append(power * gamma_ratio(al, (2 * n + 3) * al) * problem.a0)
        odd.append(power * gamma_ratio(2 * al, (2 * n + 4) * al) * problem.a1)
    return even, odd


def solve(problem: OscillatorProblem) -> OscillatorSolution:
    """Assemble the truncated series solution and its real/imaginary parts.

    ``x1`` collects the real parts (carrying ``cos((n+1) pi alpha)`` phase
    factors) and ``x2`` the imaginary parts, so ``x = x1 + i x2``.
    """
    even, odd = closed_form_coefficients(problem)
    coeffs = [complex(problem.a0), complex(problem.a1)]
    for e, o in zip(even, odd):
        coeffs.extend((e, o))

    a = problem.interval.a
    series = FracSeries(a, [(problem.exponent(n), c) for n, c in enumerate(coeffs)])

    warnings = []
    span = problem.interval.length
    top = len(coeffs) - 2
    tail = max(abs(coeffs[n]) * span ** problem.exponent(n) for n in (top, top + 1))
    if tail > TRUNCATION_TOL:
        warnings.append(
            TruncationWarning(
                f"last retained term is {tail:.3e} at t=b with order {problem.order}"
            )
        )
    return OscillatorSolution(
        complex_series=series,
        x1=series.real_part(),
        x2=series.imag_part(),
        coefficients=tuple(coeffs),
        warnings=tuple(warnings),
    )


def apply_operator(x: FracSeries, alpha: float) -> FracSeries:
    """``tD_b^alpha (caputo D^alpha x)`` with the formal right derivative."""
    return right_rl_derivative_formal(left_caputo_derivative(x, alpha), alpha)


def residual_check(solution: OscillatorSolution, problem: OscillatorProblem) -> FracSeries:
    """Formal residual ``tD_b(cD x) - lam x`` of the truncated series.

    Only the two highest exponents survive the cancellation.
    """
    x = solution.complex_series
    return apply_operator(x, problem.alpha) - x * problem.lam
