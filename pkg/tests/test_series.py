from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mapbij.series import RationalSeries, SeriesError, fixed_point

ORDER = 6
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def series(first=fractions):
    return st.builds(lambda c0, rest: RationalSeries("u", [c0] + rest),
                     first, st.lists(fractions, min_size=ORDER, max_size=ORDER))


nonzero = fractions.filter(bool)


@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == RationalSeries.constant(0, "u", ORDER)


@given(series(nonzero))
def test_inverse(a):
    assert a * a.inverse() == RationalSeries.constant(1, "u", ORDER)


@given(series(st.just(Fraction(1))))
def test_sqrt_squares_back(a):
    assert a.sqrt() ** 2 == a


@settings(max_examples=40)
@given(nonzero, st.lists(fractions, min_size=ORDER - 1, max_size=ORDER - 1))
def test_reverse_is_compositional_inverse(c1, rest):
    a = RationalSeries("u", [0, c1] + rest)
    r = a.reverse()
    assert a.compose(r) == RationalSeries.variable("u", ORDER)
    assert r.compose(a) == RationalSeries.variable("u", ORDER)


@given(series())
def test_integral_then_derivative(a):
    assert a.integral().derivative() == a
    assert a.theta().truncate(ORDER - 1) == a.derivative().shift(1)


def test_compose_order_follows_valuation():
    u = RationalSeries.variable("u", 9)
    outer = RationalSeries("v", [1, 1, 1])
    assert outer.compose(u ** 3).order == 8


def test_errors():
    u = RationalSeries.variable("u", 3)
    with pytest.raises(SeriesError):
        u.inverse()
    with pytest.raises(SeriesError):
        (1 + u).compose(1 + u)
    with pytest.raises(SeriesError):
        u + RationalSeries.variable("v", 3)
    with pytest.raises(SeriesError):
        (1 + u).shift(-1)


def test_fixed_point_catalan():
    z = RationalSeries.variable("z", 7)
    c = fixed_point(lambda f: 1 + z * f * f, RationalSeries.constant(0, "z", 7))
    assert [int(x) for x in c.coeffs] == [1, 1, 2, 5, 14, 42, 132, 429]
