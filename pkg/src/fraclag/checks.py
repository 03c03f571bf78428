"""Seeded self-checks run by ``fraclag verify``.

Each check returns a small dict with a ``pass`` flag and the worst error
seen, so the results can be written straight into a JSON report.
"""
from __future__ import annotations

import random

from .expression import Expression, Term, format_expression, parse_expression
from .frac_series import (
    FracSeries,
    Interval,
    fractional_integral,
    left_caputo_derivative,
    max_relative_error,
)
from .lagrangian import CoefficientFunction, euler_lagrange, synthesize
from .numeric_oracle import gl_left_rl, l1_left_caputo
from .oscillator import OscillatorProblem, closed_form_coefficients, iterate_recurrence
from .special_functions import gamma_ratio


def random_expression(rng: random.Random, max_terms: int = 5, with_x: bool = True) -> Expression:
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        re_part = rng.uniform(-10, 10)
        im_part = rng.choice([0.0, rng.uniform(-10, 10)])
        exponent = rng.choice([0.0, rng.uniform(-0.99, 5.0), round(rng.uniform(-0.9, 3.0), 2)])
        x_power = rng.randint(0, 4) if with_x else 0
        terms.append(Term(complex(re_part, im_part), exponent, x_power))
    return Expression.from_terms(terms)


def random_series(rng: random.Random, a: float = 0.0, n_terms: int = 4,
                  low: float = 0.0, high: float = 5.0) -> FracSeries:
    terms = []
    for _ in range(n_terms):
        p = rng.uniform(low, high)
        if p == 0.0:
            p = high / 2
        terms.append((p, complex(rng.uniform(-3, 3), rng.uniform(-3, 3))))
    return FracSeries(a, terms)


def random_coefficient_function(rng: random.Random, a: float = 0.0, degree: int = 4,
                                high: float = 3.0) -> CoefficientFunction:
    return CoefficientFunction(
        a,
        [random_series(rng, a, rng.randint(0, 3), 0.0, high) for _ in range(rng.randint(0, degree) + 1)],
    )


def check_parser_roundtrip(rng: random.Random, count: int = 200) -> dict:
    failures = 0
    for _ in range(count):
        text = format_expression(random_expression(rng))
        again = format_expression(parse_expression(text))
        if again != text:
            failures += 1
    return {"cases": count, "failures": failures, "pass": failures == 0}


def check_recurrence(rng: random.Random, count: int = 50, order: int = 15) -> dict:
    worst = 0.0
    for _ in range(count):
        problem = OscillatorProblem(
            alpha=rng.uniform(0.05, 0.999),
            lam=rng.uniform(-2, 2),
            interval=Interval(0.0, 1.0),
            a0=1.0,
            a1=1.0,
            order=order,
        )
        iterated = iterate_recurrence(problem)
        even, odd = closed_form_coefficients(problem)
        for n in range(order):
            for got, want in ((iterated[2 * n + 2], even[n]), (iterated[2 * n + 3], odd[n])):
                if want != 0:
                    worst = max(worst, abs(got - want) / abs(want))
    return {"cases": count, "max_rel_err": worst, "pass": worst <= 1e-12}


def check_inverse(rng: random.Random, count: int = 100) -> dict:
    worst = 0.0
    for _ in range(count):
        alpha = rng.uniform(0.05, 0.95)
        s = random_series(rng, 0.0, 4, 0.0, 5.0)
        back = fractional_integral(left_caputo_derivative(s, alpha), alpha)
        worst = max(worst, max_relative_error(back, s))
    return {"cases": count, "max_rel_err": worst, "pass": worst <= 1e-10}


def check_lagrangian_roundtrip(rng: random.Random, count: int = 20) -> dict:
    worst = 0.0
    for _ in range(count):
        alpha = rng.uniform(0.1, 0.9)
        b = random_coefficient_function(rng)
        f = random_coefficient_function(rng)
        b2, f2 = euler_lagrange(synthesize(b, f, alpha))
        for want, got in ((b, b2), (f, f2)):
            for j in range(max(len(want.coeffs), len(got.coeffs))):
                worst = max(worst, max_relative_error(got.coefficient(j), want.coefficient(j)))
    return {"cases": count, "max_rel_err": worst, "pass": worst <= 1e-12}


def check_power_rules(h: float = 2.0**-12) -> dict:
    worst_gl = worst_l1 = 0.0
    for beta in (1.0, 2.0, 1.3):
        for alpha in (0.25, 0.5, 0.75):
            for t in (0.25, 0.5, 1.0):
                exact = gamma_ratio(beta + 1, beta + 1 - alpha) * t ** (beta - alpha)

                def f(x, beta=beta):
                    return x**beta

                worst_gl = max(worst_gl, float(abs(gl_left_rl(f, 0.0, t, alpha, h) / exact - 1)))
                worst_l1 = max(worst_l1, float(abs(l1_left_caputo(f, 0.0, t, alpha, h) / exact - 1)))
    return {
        "gl_max_rel_err": worst_gl,
        "l1_max_rel_err": worst_l1,
        "pass": worst_gl <= 1e-2 and worst_l1 <= 1e-3,
    }


def run_all(seed: int = 0) -> dict:
    rng = random.Random(seed)
    results = {
        "parser_roundtrip": check_parser_roundtrip(rng),
        "recurrence": check_recurrence(rng),
        "inverse": check_inverse(rng),
        "lagrangian_roundtrip": check_lagrangian_roundtrip(rng),
        "power_rules": check_power_rules(),
    }
    results["pass"] = all(r["pass"] for r in results.values() if isinstance(r, dict))
    return {"seed": seed, **results}

