"""Fractional power series algebra and exact series solvers for a class of
fractional Euler-Lagrange equations, with grid-based oracles for checking."""

from .errors import (
    CarrierExit,
    DivergenceError,
    DomainError,
    PoleError,
    TruncationWarning,
    UnsupportedSeries,
)
from .frac_series import (
    FracSeries,
    Interval,
    add,
    evaluate,
    fractional_integral,
    left_caputo_derivative,
    left_rl_derivative,
    mul_monomial,
    right_rl_derivative_formal,
    scale,
)
from .special_functions import gamma, gamma_ratio, phase_factor

__version__ = "0.1.0"

__all__ = [
    "CarrierExit",
    "DivergenceError",
    "DomainError",
    "FracSeries",
    "Interval",
    "PoleError",
    "TruncationWarning",
    "UnsupportedSeries",
    "add",
    "evaluate",
    "fractional_integral",
    "gamma",
    "gamma_ratio",
    "left_caputo_derivative",
    "left_rl_derivative",
    "mul_monomial",
    "phase_factor",
    "right_rl_derivative_formal",
    "scale",
]
