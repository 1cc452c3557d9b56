"""截断幂级数运算测试"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.exceptions import ConfigError, DomainError, ZeroConstantTerm
from core.series import ComplexSeries, TaylorFunction, derive, divide, evaluate, multiply

ORDER = 8

coefficient = st.builds(
    complex,
    st.floats(-1, 1, allow_nan=False, allow_infinity=False),
    st.floats(-1, 1, allow_nan=False, allow_infinity=False),
)


def series_of(values):
    return ComplexSeries.from_coeffs(values, ORDER)


@st.composite
def divisors(draw):
    """|b_0| ∈ [0.5, 1]，其余系数模之和不超过 0.4"""
    modulus = draw(st.floats(0.5, 1.0))
    phase = draw(st.floats(0, 2 * np.pi))
    rest = draw(st.lists(coefficient, min_size=ORDER, max_size=ORDER))
    total = sum(abs(c) for c in rest)
    scale = 0.4 / total if total > 0.4 else 1.0
    return series_of([modulus * np.exp(1j * phase)] + [c * scale for c in rest])


def test_from_coeffs_pads_and_truncates():
    s = ComplexSeries.from_coeffs([1, 2, 3], 4)
    assert s.order == 4
    assert list(s.coeffs) == [1, 2, 3, 0, 0]
    assert list(ComplexSeries.from_coeffs([1, 2, 3], 1).coeffs) == [1, 2]


def test_coefficients_are_read_only():
    s = series_of([1, 2])
    with pytest.raises(ValueError):
        s.coeffs[0] = 5


def test_derive_keeps_order():
    s = series_of([0, 1, 1, 1])
    d = derive(s)
    assert d.order == ORDER
    assert list(d.coeffs[:4]) == [1, 2, 3, 0]
    assert d.coeffs[-1] == 0


def test_multiply_truncates():
    z = ComplexSeries.identity(3)
    z2 = multiply(z, z)
    assert list(z2.coeffs) == [0, 0, 1, 0]
    assert not np.any(multiply(z2, z2).coeffs)


def test_geometric_series_by_division():
    one = ComplexSeries.constant(1.0, ORDER)
    q = divide(one, one - ComplexSeries.identity(ORDER))
    np.testing.assert_allclose(q.coeffs, np.ones(ORDER + 1))


def test_divide_rejects_small_constant_term():
    with pytest.raises(ZeroConstantTerm):
        divide(series_of([1]), series_of([1e-13, 1]))


def test_mismatched_orders_rejected():
    with pytest.raises(ValueError):
        multiply(ComplexSeries.identity(3), ComplexSeries.identity(4))


def test_shift_up_and_down():
    s = series_of([0, 1, 2])
    assert list(s.shift_down(1).coeffs[:3]) == [1, 2, 0]
    assert list(s.shift_up(2).coeffs[:5]) == [0, 0, 0, 1, 2]


def test_evaluate_scalar_and_array():
    s = series_of([1, 2, 3])
    value = evaluate(s, 0.5)
    assert isinstance(value, complex)
    assert value == pytest.approx(1 + 1 + 0.75)
    np.testing.assert_allclose(evaluate(s, np.array([0.0, 1j])), [1, 1 + 2j - 3])


@given(st.lists(coefficient, min_size=ORDER + 1, max_size=ORDER + 1), divisors())
@settings(max_examples=200, deadline=None)
def test_division_inverts_multiplication(a_values, b):
    a = series_of(a_values)
    q = divide(a, b)
    np.testing.assert_allclose(multiply(q, b).coeffs, a.coeffs, atol=1e-9)


@given(
    st.lists(coefficient, min_size=ORDER + 1, max_size=ORDER + 1),
    st.lists(coefficient, min_size=ORDER + 1, max_size=ORDER + 1),
    st.floats(0, 0.9),
    st.floats(0, 2 * np.pi),
)
@settings(max_examples=200, deadline=None)
def test_product_evaluation_within_tail_bound(a_values, b_values, r, theta):
    a, b = series_of(a_values), series_of(b_values)
    z = r * np.exp(1j * theta)
    gap = abs(evaluate(multiply(a, b), z) - evaluate(a, z) * evaluate(b, z))
    bound = (ORDER + 1) * a.max_abs() * b.max_abs() * r ** (ORDER + 1) / (1 - r)
    assert gap <= bound + 1e-12


@given(st.lists(coefficient, min_size=ORDER + 1, max_size=ORDER + 1),
       st.lists(coefficient, min_size=ORDER + 1, max_size=ORDER + 1))
@settings(max_examples=100, deadline=None)
def test_multiplication_commutes(a_values, b_values):
    a, b = series_of(a_values), series_of(b_values)
    np.testing.assert_allclose(multiply(a, b).coeffs, multiply(b, a).coeffs, atol=1e-12)


@given(
    st.lists(coefficient, min_size=ORDER + 1, max_size=ORDER + 1),
    st.lists(coefficient, min_size=ORDER + 1, max_size=ORDER + 1),
    coefficient,
    coefficient,
)
@settings(max_examples=100, deadline=None)
def test_derive_is_linear(a_values, b_values, x, y):
    a, b = series_of(a_values), series_of(b_values)
    combined = derive(a.scale(x) + b.scale(y))
    np.testing.assert_allclose(combined.coeffs, (derive(a).scale(x) + derive(b).scale(y)).coeffs, atol=1e-12)


def test_head_zeroes_higher_terms():
    s = series_of(range(1, ORDER + 2))
    assert list(s.head(2).coeffs) == [1, 2, 3] + [0] * (ORDER - 2)
    assert np.array_equal(s.head(ORDER).coeffs, s.coeffs)
    assert not np.any(s.head(-1).coeffs)


class TestTaylorFunction:
    def test_default_order_for_short_lists(self):
        f = TaylorFunction.from_coeffs([0, 1, 0.5])
        assert f.order == 64
        assert f.degree == 2
        assert f.describe() == "polynomial of degree 2"

    def test_long_lists_keep_their_length(self):
        f = TaylorFunction.from_coeffs([0, 1] + [0.01] * 100)
        assert f.order == 101

    @pytest.mark.parametrize("coeffs", [[1, 1], [0, 2], [0, 1 + 1e-6]])
    def test_rejects_non_normalized(self, coeffs):
        with pytest.raises(ConfigError):
            TaylorFunction.from_coeffs(coeffs)

    @pytest.mark.parametrize("coeffs", [[float("nan"), 1], [0, 1, float("inf")], [0, 1, complex(0, float("nan"))]])
    def test_rejects_non_finite(self, coeffs):
        with pytest.raises(DomainError):
            TaylorFunction.from_coeffs(coeffs)

    def test_over_z(self):
        f = TaylorFunction.from_coeffs([0, 1, 0.5], order=3)
        assert list(f.over_z().coeffs) == [1, 0.5, 0, 0]

    def test_fingerprint_tracks_coefficients(self):
        a = TaylorFunction.from_coeffs([0, 1, 0.5])
        b = TaylorFunction.from_coeffs([0, 1, 0.5])
        c = TaylorFunction.from_coeffs([0, 1, 0.25])
        assert a.fingerprint == b.fingerprint
        assert a.fingerprint != c.fingerprint
