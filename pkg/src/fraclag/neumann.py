"""Neumann-series solver for the damped equation.

Solves ``tD_b^alpha (cD^alpha x) + g(t) cD^alpha x = f(t)`` in two stages:
``z = cD^alpha x`` satisfies ``(1 + T) z = f / g`` with
``T = g^{-1} tD_b^alpha``, inverted as ``sum_i (-T)^i``; then
``x = I^alpha z + c1 (t-a)^(alpha-1) + c2``.

The damping ``g`` must be a single nonzero monomial ``d (t-a)^q`` so that
division by it stays inside the series class.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CarrierExit, DivergenceError
from .frac_series import (
    FracSeries,
    Interval,
    fractional_integral,
    left_caputo_derivative,
    mul_monomial,
    right_rl_derivative_formal,
)
from .special_functions import is_pole

DEFAULT_MAX_ITERS = 50
DEFAULT_GUARD = 1e8
#: Iterates whose norm falls below this fraction of the rhs norm end the sum.
NEGLIGIBLE_RTOL = 1e-16


@dataclass(frozen=True)
class GeneralProblem:
    alpha: float
    interval: Interval
    g: FracSeries
    f: FracSeries
    c1: complex = 0j
    c2: complex = 0j
    max_iters: int = DEFAULT_MAX_ITERS
    growth_guard: float = DEFAULT_GUARD

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if len(self.g) != 1:
            raise ValueError("g must be a single nonzero monomial d*(t-a)^q")
        if self.g.a != self.interval.a or self.f.a != self.interval.a:
            raise ValueError("g and f must be expanded about the interval's left end")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.growth_guard > 0:
            raise ValueError("growth_guard must be positive")

    @property
    def g_monomial(self) -> tuple[float, complex]:
        return self.g.terms[0]


@dataclass
class NeumannResult:
    z: FracSeries
    x: FracSeries
    iterations_used: int
    term_norms: list[float]
    converged: bool
    #: First iterate not included in the sum (empty when the series terminated).
    tail: FracSeries
    residual_terms: int = 0

    def diagnostics(self) -> dict:
        return {
            "iterations": self.iterations_used,
            "term_norms": list(self.term_norms),
            "converged": self.converged,
            "residual_terms": self.residual_terms,
        }


@dataclass
class NeumannDiagnostics:
    iterations_used: int = 0
    term_norms: list[float] = field(default_factory=list)
    converged: bool = False
    tail: FracSeries | None = None


def divide_by_monomial(s: FracSeries, q: float, d: complex) -> FracSeries:
    return mul_monomial(s, -q, 1.0 / d)


def make_step(g: FracSeries, alpha: float):
    """The map ``T(s) = g^{-1} tD_b^alpha s`` for monomial ``g``."""
    (q, d), = g.terms

    def step(s: FracSeries) -> FracSeries:
        return divide_by_monomial(right_rl_derivative_formal(s, alpha), q, d)

    return step


def apply_L_inverse(
    rhs: FracSeries,
    g: FracSeries,
    alpha: float,
    max_iters: int = DEFAULT_MAX_ITERS,
    guard: float = DEFAULT_GUARD,
    span: float = 1.0,
) -> tuple[FracSeries, NeumannDiagnostics]:
    """Truncated Neumann sum ``sum_{i=0}^{M} (-1)^i T^i(rhs)``.

    Stops early on an empty iterate (exact termination) or a negligible one.
    Norms are ``max_k |c_k| * span**p_k``.
    """
    step = make_step(g, alpha)
    diag = NeumannDiagnostics()
    rhs_norm = rhs.sup_norm(span)
    diag.term_norms.append(rhs_norm)
    total = term = rhs
    if rhs.is_empty():
        diag.converged = True
        diag.tail = rhs
        return total, diag

    i = 0
    while True:
        try:
            nxt = step(term)
        except CarrierExit as exc:
            exc.partial = total
            raise
        if nxt.is_empty():
            # pole-kill: the series terminates exactly
            i += 1
            diag.term_norms.append(0.0)
            diag.converged = True
            break
        if i == max_iters:
            break
        i += 1
        norm = nxt.sup_norm(span)
        diag.term_norms.append(norm)
        if norm > guard:
            raise DivergenceError(
                f"iterate {i} norm {norm:.3e} exceeds guard {guard:.3e}",
                partial=total,
                term_norms=diag.term_norms,
            )
        total = total + nxt * (-1) ** i
        term = nxt
        if norm < NEGLIGIBLE_RTOL * rhs_norm:
            diag.converged = True
            nxt = step(term)
            break
    diag.iterations_used = i
    diag.tail = nxt
    return total, diag


def solve_general(problem: GeneralProblem) -> NeumannResult:
    al, a = problem.alpha, problem.interval.a
    q, d = problem.g_monomial
    rhs = divide_by_monomial(problem.f, q, d)
    z, diag = apply_L_inverse(
        rhs,
        problem.g,
        al,
        max_iters=problem.max_iters,
        guard=problem.growth_guard,
        span=problem.interval.length,
    )
    homogeneous = FracSeries(a, [(al - 1.0, problem.c1), (0.0, problem.c2)])
    x = fractional_integral(z, al) + homogeneous
    result = NeumannResult(
        z=z,
        x=x,
        iterations_used=diag.iterations_used,
        term_norms=diag.term_norms,
        converged=diag.converged,
        tail=diag.tail if diag.tail is not None else FracSeries(a),
    )
    result.residual_terms = len(verify_general(result, problem))
    return result


def verify_general(result: NeumannResult, problem: GeneralProblem) -> FracSeries:
    """Formal residual ``tD_b(cD x) + g cD x - f`` of the computed ``x``."""
    al = problem.alpha
    q, d = problem.g_monomial
    cx = left_caputo_derivative(result.x, al)
    return right_rl_derivative_formal(cx, al) + mul_monomial(cx, q, d) - problem.f


def predict_ladder(p: float, alpha: float, q: float, max_iters: int) -> tuple[str, int]:
    """Symbolic exponent ladder of ``T`` applied to a single term ``(t-a)^p``.

    Returns ``("terminates", k)`` when the k-th application hits a gamma
    pole, ``("carrier_exit", k)`` when the k-th application leaves the
    carrier, or ``("truncated", max_iters)``. Coefficient growth (the guard)
    is not modelled.
    """
    # the solver also takes one step past the budget to form the tail
    for k in range(1, max_iters + 2):
        if is_pole(p + 1.0 - alpha):
            return "terminates", k
        p_deriv = p - alpha
        if p_deriv <= -1.0:
            return "carrier_exit", k
        p = p_deriv - q
        if p <= -1.0:
            return "carrier_exit", k
    return "truncated", max_iters
