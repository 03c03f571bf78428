import json
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclag.errors import CarrierExit, DomainError
from fraclag.frac_series import (
    FracSeries,
    Interval,
    add,
    allclose,
    evaluate,
    fractional_integral,
    left_caputo_derivative,
    left_rl_derivative,
    max_relative_error,
    mul_monomial,
    right_rl_derivative_formal,
    scale,
)
from fraclag.special_functions import phase_factor

INV_SQRT_PI = 0.5641895835477563
TWO_OVER_SQRT_PI = 1.1283791670955126

alphas = st.floats(min_value=0.01, max_value=0.99)
exponents = st.floats(min_value=0.01, max_value=5.0)
coeffs = st.complex_numbers(min_magnitude=0.1, max_magnitude=10.0, allow_nan=False, allow_infinity=False)


@st.composite
def positive_series(draw, max_terms=4):
    terms = draw(st.lists(st.tuples(exponents, coeffs), min_size=1, max_size=max_terms))
    return FracSeries(0.0, terms)


# -- construction -----------------------------------------------------------

def test_terms_sorted_merged_pruned():
    s = FracSeries(0.0, [(1.5, 2.0), (0.5, 1.0), (1.5 + 1e-13, 3.0), (2.0, 0.0), (3.0, 1e-301)])
    assert s.exponents == (0.5, 1.5)
    assert s.coeffs == (1.0, 5.0)


def test_carrier_rejects_low_exponent():
    with pytest.raises(CarrierExit):
        FracSeries(0.0, [(-1.0, 1.0)])


def test_cancellation_prunes_roundoff():
    c = 0.1 + 0.2
    s = FracSeries(0.0, [(1.0, c), (1.0, -0.3)])
    assert s.is_empty()


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)
    with pytest.raises(ValueError):
        Interval(0.0, math.inf)
    assert Interval(-1.0, 2.0).length == 3.0


def test_json_shape_roundtrip():
    s = FracSeries(0.25, [(0.5, 1 + 2j), (-0.5, -3.0)])
    data = json.loads(json.dumps(s.to_dict()))
    assert data == {
        "a": 0.25,
        "terms": [{"p": -0.5, "re": -3.0, "im": 0.0}, {"p": 0.5, "re": 1.0, "im": 2.0}],
    }
    assert FracSeries.from_dict(data) == s


# -- left RL ----------------------------------------------------------------

def test_left_rl_of_linear():
    out = left_rl_derivative(FracSeries.monomial(0.0, 1.0), 0.5)
    assert out.exponents == (0.5,)
    assert out.coeffs[0].real == pytest.approx(TWO_OVER_SQRT_PI, rel=1e-14)


def test_left_rl_of_constant():
    out = left_rl_derivative(FracSeries.constant(0.0), 0.5)
    assert out.exponents == (-0.5,)
    assert out.coeffs[0].real == pytest.approx(INV_SQRT_PI, rel=1e-14)


@given(alphas)
def test_pole_kill(alpha):
    s = FracSeries.monomial(0.0, alpha - 1.0, 2.5)
    assert left_rl_derivative(s, alpha).is_empty()
    assert left_caputo_derivative(s, alpha).is_empty()
    assert right_rl_derivative_formal(s, alpha).is_empty()


def test_left_rl_carrier_exit():
    with pytest.raises(CarrierExit):
        left_rl_derivative(FracSeries.monomial(0.0, -0.5), 0.75)


def test_order_validation():
    with pytest.raises(ValueError):
        left_rl_derivative(FracSeries.constant(0.0), 1.5)
    with pytest.raises(ValueError):
        fractional_integral(FracSeries.constant(0.0), 0.0)


# -- Caputo -----------------------------------------------------------------

def test_caputo_kills_constant():
    assert left_caputo_derivative(FracSeries.constant(0.0, 5.0), 0.3).is_empty()


def test_caputo_of_second_ansatz_term():
    a1 = 1.7
    out = left_caputo_derivative(FracSeries.monomial(0.0, 0.2, a1), 0.6)
    expected = a1 * float(mpmath.gamma(mpmath.mpf("1.2")) / mpmath.gamma(mpmath.mpf("0.6")))
    assert out.exponents == pytest.approx((-0.4,))
    assert out.coeffs[0].real == pytest.approx(expected, rel=1e-13)


def test_caputo_of_ansatz_structure():
    alpha = 0.7
    a = [1.0, -0.5, 0.25, 2.0, 0.125]
    x = FracSeries(0.0, [(n * alpha + alpha - 1, c) for n, c in enumerate(a)])
    out = left_caputo_derivative(x, alpha)
    # sum from n = 1: a_n Gamma((n+1)a)/Gamma(na) (t-a)^(n a - 1)
    assert len(out) == len(a) - 1
    for n in range(1, len(a)):
        ratio = float(mpmath.gamma((n + 1) * alpha) / mpmath.gamma(n * alpha))
        assert out.coeff_at(n * alpha - 1).real == pytest.approx(a[n] * ratio, rel=1e-13)


# -- formal right derivative ----------------------------------------------

def test_right_formal_of_constant():
    out = right_rl_derivative_formal(FracSeries.constant(0.0), 0.5)
    assert out.exponents == (-0.5,)
    assert out.coeffs[0] == pytest.approx(1j * INV_SQRT_PI, rel=1e-14)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9])
@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_right_formal_on_shifted_powers(alpha, n):
    s = FracSeries.monomial(0.0, n * alpha - 1)
    out = right_rl_derivative_formal(s, alpha)
    if n == 1:
        assert out.is_empty()
        return
    ratio = float(mpmath.gamma(n * alpha) / mpmath.gamma((n - 1) * alpha))
    expected = complex(mpmath.expjpi(alpha)) * ratio
    assert out.exponents == pytest.approx(((n - 1) * alpha - 1,))
    assert abs(out.coeffs[0] - expected) <= 1e-13 * abs(expected)


def test_double_derivative_of_ansatz_structure():
    alpha = 0.65
    a = [0.3, -1.1, 0.7, 0.2, -0.9, 1.4]
    x = FracSeries(0.0, [(n * alpha + alpha - 1, c) for n, c in enumerate(a)])
    out = right_rl_derivative_formal(left_caputo_derivative(x, alpha), alpha)
    phase = complex(mpmath.expjpi(alpha))
    for m in range(len(a) - 2):
        ratio = float(mpmath.gamma((m + 3) * alpha) / mpmath.gamma((m + 1) * alpha))
        expected = a[m + 2] * phase * ratio
        got = out.coeff_at(m * alpha + alpha - 1)
        assert abs(got - expected) <= 1e-13 * abs(expected)
    assert len(out) == len(a) - 2


@settings(max_examples=50)
@given(positive_series(), alphas)
def test_right_formal_is_phase_times_left(s, alpha):
    left = left_rl_derivative(s, alpha)
    right = right_rl_derivative_formal(s, alpha)
    assert allclose(right, scale(left, phase_factor(alpha, +1)), rtol=1e-14)


# -- fractional integral -----------------------------------------------------

def test_integral_of_constant():
    out = fractional_integral(FracSeries.constant(0.0), 0.5)
    assert out.exponents == (0.5,)
    assert out.coeffs[0].real == pytest.approx(TWO_OVER_SQRT_PI, rel=1e-14)


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
def test_integral_of_singular_head(alpha):
    out = fractional_integral(FracSeries.monomial(0.0, alpha - 1), alpha)
    expected = float(mpmath.gamma(alpha) / mpmath.gamma(2 * alpha))
    assert out.exponents == pytest.approx((2 * alpha - 1,))
    assert out.coeffs[0].real == pytest.approx(expected, rel=1e-13)
    if alpha == 0.5:
        assert out.coeffs[0].real == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@settings(max_examples=100)
@given(positive_series(), alphas)
def test_inverse_property(s, alpha):
    back = fractional_integral(left_caputo_derivative(s, alpha), alpha)
    assert max_relative_error(back, s) <= 1e-10


def test_inverse_restores_all_but_killed_terms():
    alpha = 0.4
    s = FracSeries(0.0, [(0.0, 2.0), (alpha - 1, 3.0), (1.3, 1.0)])
    back = fractional_integral(left_caputo_derivative(s, alpha), alpha)
    assert allclose(back, FracSeries.monomial(0.0, 1.3), rtol=1e-13)


@settings(max_examples=100)
@given(
    st.floats(min_value=0.05, max_value=4.0),
    st.floats(min_value=0.01, max_value=0.5),
    st.floats(min_value=0.01, max_value=0.49),
)
def test_composition_on_powers(beta, a1, a2):
    s = FracSeries.monomial(0.0, beta)
    two_step = left_rl_derivative(left_rl_derivative(s, a2), a1)
    one_step = left_rl_derivative(s, a1 + a2)
    assert allclose(two_step, one_step, rtol=1e-10)


@settings(max_examples=50)
@given(positive_series(), positive_series(), coeffs, alphas)
def test_linearity(s1, s2, c, alpha):
    for op in (left_rl_derivative, left_caputo_derivative, right_rl_derivative_formal, fractional_integral):
        lhs = op(add(s1, scale(s2, c)), alpha)
        rhs = add(op(s1, alpha), scale(op(s2, alpha), c))
        assert allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


# -- plumbing ---------------------------------------------------------------

@settings(max_examples=50)
@given(positive_series())
def test_add_negation_is_empty(s):
    assert add(s, scale(s, -1)).is_empty()


@settings(max_examples=50)
@given(positive_series(), positive_series(), positive_series())
def test_add_commutative_associative(s1, s2, s3):
    assert allclose(s1 + s2, s2 + s1, rtol=0)
    assert allclose((s1 + s2) + s3, s1 + (s2 + s3), rtol=1e-14, atol=1e-14)


def test_mul_monomial():
    out = mul_monomial(FracSeries.monomial(0.0, 0.5), 0.25, 2.0)
    assert out == FracSeries.monomial(0.0, 0.75, 2.0)


def test_mul_monomial_carrier_exit():
    with pytest.raises(CarrierExit):
        mul_monomial(FracSeries.monomial(0.0, 0.5), -1.6, 1.0)


@given(alphas)
def test_phase_roundtrip(alpha):
    s = FracSeries(0.0, [(0.5, 1 + 1j), (1.5, -2.0)])
    back = scale(scale(s, phase_factor(alpha, -1)), phase_factor(alpha, +1))
    assert allclose(back, s, rtol=1e-15)


def test_add_requires_same_base():
    with pytest.raises(ValueError):
        add(FracSeries.constant(0.0), FracSeries.constant(1.0))


def test_evaluate_examples():
    assert evaluate(FracSeries.constant(2.0), 7.3) == 1.0
    assert evaluate(FracSeries.monomial(0.0, -0.5), 4.0) == pytest.approx(0.5, rel=1e-15)


def test_evaluate_truncated_cosine():
    s = FracSeries(0.0, [(2 * k, (-1) ** k / math.factorial(2 * k)) for k in range(15)])
    assert evaluate(s, 0.5).real == pytest.approx(0.8775825619, abs=1e-10)
    assert evaluate(s, 0.5).real == pytest.approx(math.cos(0.5), rel=1e-15)


def test_evaluate_vectorized():
    s = FracSeries(1.0, [(0.5, 1.0), (1.0, 1j)])
    ts = [1.25, 2.0]
    vals = evaluate(s, ts)
    assert vals.shape == (2,)
    assert vals[1] == pytest.approx(1 + 1j)


@pytest.mark.parametrize("t", [0.0, -0.1])
def test_evaluate_domain(t):
    with pytest.raises(DomainError):
        evaluate(FracSeries.constant(0.0), t)
