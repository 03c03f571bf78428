"""Lagrangians for a prescribed fractional Euler-Lagrange equation.

Target equation::

    tD_b^a (cD^a x) + b(t, x) cD^a x + f(t, x) = 0

Ansatz ``L = 1/2 (cD^a x)^2 + h(t, x) cD^a x + G(t, x)``. Matching terms
gives ``dh/dx = b`` and ``tD_b^a h + dG/dx = f``. Here ``tD_b^a`` acts on the
explicit t-dependence of ``h`` only; ``x`` is held as a formal parameter.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .frac_series import FracSeries, right_rl_derivative_formal

MAX_INPUT_DEGREE = 4


@dataclass(frozen=True, init=False)
class CoefficientFunction:
    """Polynomial in ``x`` with fractional series in ``t`` as coefficients.

    ``coeffs[j]`` multiplies ``x**j``. Trailing empty coefficients are dropped.
    """

    a: float
    coeffs: tuple[FracSeries, ...]

    def __init__(self, a: float, coeffs: Iterable[FracSeries] = ()):
        coeffs = list(coeffs)
        for phi in coeffs:
            if phi.a != a:
                raise ValueError("all coefficients must share the base point")
        while coeffs and coeffs[-1].is_empty():
            coeffs.pop()
        object.__setattr__(self, "a", float(a))
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_terms(cls, a: float, terms: Iterable[tuple[int, float, complex]]) -> CoefficientFunction:
        """Build from ``(x_power, t_exponent, coefficient)`` triples."""
        buckets: dict[int, list] = {}
        for j, p, c in terms:
            if j < 0:
                raise ValueError("x powers must be non-negative")
            buckets.setdefault(j, []).append((p, c))
        degree = max(buckets, default=-1)
        return cls(a, [FracSeries(a, buckets.get(j, ())) for j in range(degree + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, j: int) -> FracSeries:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return FracSeries(self.a)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_real(self) -> bool:
        return all(phi.is_real() for phi in self.coeffs)

    def map_t(self, op: Callable[[FracSeries], FracSeries]) -> CoefficientFunction:
        return CoefficientFunction(self.a, [op(phi) for phi in self.coeffs])

    def d_dx(self) -> CoefficientFunction:
        return CoefficientFunction(self.a, [phi * j for j, phi in enumerate(self.coeffs)][1:])

    def antiderivative_x(self) -> CoefficientFunction:
        """Antiderivative in ``x`` with zero integration constant."""
        return CoefficientFunction(
            self.a, [FracSeries(self.a)] + [phi * (1.0 / (j + 1)) for j, phi in enumerate(self.coeffs)]
        )

    def __add__(self, other: CoefficientFunction) -> CoefficientFunction:
        n = max(len(self.coeffs), len(other.coeffs))
        return CoefficientFunction(
            self.a, [self.coefficient(j) + other.coefficient(j) for j in range(n)]
        )

    def __neg__(self) -> CoefficientFunction:
        return CoefficientFunction(self.a, [-phi for phi in self.coeffs])

    def __sub__(self, other: CoefficientFunction) -> CoefficientFunction:
        return self + (-other)

    def to_dict(self) -> dict:
        return {str(j): phi.to_dict() for j, phi in enumerate(self.coeffs) if not phi.is_empty()}

    @classmethod
    def from_dict(cls, a: float, data: dict) -> CoefficientFunction:
        if not data:
            return cls(a)
        degree = max(int(k) for k in data)
        return cls(
            a,
            [FracSeries.from_dict(data[str(j)]) if str(j) in data else FracSeries(a)
             for j in range(degree + 1)],
        )


@dataclass(frozen=True)
class LagrangianSpec:
    """``L = kinetic (cD x)^2 + h cD x + G`` with ``kinetic`` fixed at 1/2."""

    h: CoefficientFunction
    G: CoefficientFunction
    alpha: float
    kinetic: float = 0.5

    @property
    def is_complex(self) -> bool:
        return not (self.h.is_real() and self.G.is_real())

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "kinetic": self.kinetic,
            "h": self.h.to_dict(),
            "G": self.G.to_dict(),
            "complex": self.is_complex,
        }


def _right_formal_t(h: CoefficientFunction, alpha: float) -> CoefficientFunction:
    return h.map_t(lambda phi: right_rl_derivative_formal(phi, alpha))


def synthesize(b: CoefficientFunction, f: CoefficientFunction, alpha: float) -> LagrangianSpec:
    """Lagrangian whose Euler-Lagrange equation has coupling ``b`` and forcing ``f``."""
    if b.a != f.a:
        raise ValueError("b and f must share the base point")
    for name, cf in (("b", b), ("f", f)):
        if cf.degree > MAX_INPUT_DEGREE:
            raise ValueError(f"{name} has x-degree {cf.degree} > {MAX_INPUT_DEGREE}")
    h = b.antiderivative_x()
    G = (f - _right_formal_t(h, alpha)).antiderivative_x()
    return LagrangianSpec(h=h, G=G, alpha=alpha)


def euler_lagrange(L: LagrangianSpec) -> tuple[CoefficientFunction, CoefficientFunction]:
    """Coupling ``b = dh/dx`` and forcing ``f = tD_b^a h + dG/dx`` generated by ``L``."""
    b = L.h.d_dx()
    f = _right_formal_t(L.h, L.alpha) + L.G.d_dx()
    return b, f


def oscillator_equation(a: float, lam: float) -> tuple[CoefficientFunction, CoefficientFunction]:
    """``(b, f)`` of ``tD_b(cD x) = lam x``, i.e. ``b = 0`` and ``f = -lam x``."""
    return CoefficientFunction(a), CoefficientFunction.from_terms(a, [(1, 0.0, -lam)])
