import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, QQ, Rational

from src.exact.intervals import RationalInterval, enclose_poly, to_qq, to_rational
from src.exact.symbols import T


@pytest.mark.unit
def test_arithmetic_is_exact():
    a = RationalInterval.around(Rational(1, 3), Rational(1, 2))
    b = RationalInterval.point(Rational(1, 6))

    total = a + b
    assert total.lo == QQ(1, 2) and total.hi == QQ(2, 3)
    assert (a - b).lo == QQ(1, 6)
    assert (a * 3).hi == QQ(3, 2)
    assert (1 - a).lo == QQ(1, 2)


@pytest.mark.unit
def test_even_power_of_interval_straddling_zero():
    box = RationalInterval.around(-2, 3)
    assert box ** 2 == RationalInterval(QQ(0), QQ(9))
    assert box ** 3 == RationalInterval(QQ(-8), QQ(27))
    assert RationalInterval.around(-3, -1) ** 2 == RationalInterval(QQ(1), QQ(9))


@pytest.mark.unit
def test_reciprocal_of_interval_containing_zero_raises():
    with pytest.raises(ZeroDivisionError):
        RationalInterval.around(-1, 1).reciprocal()


@pytest.mark.unit
def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        RationalInterval(QQ(2), QQ(1))


@pytest.mark.unit
@pytest.mark.parametrize(
    "lo,hi,expected",
    [
        (1, 2, 1),
        (-2, -1, -1),
        (-1, 1, 0),
        (0, 1, 0),
    ],
)
def test_sign(lo, hi, expected):
    assert RationalInterval.around(lo, hi).sign() == expected


@pytest.mark.unit
def test_magnitudes_and_midpoint():
    box = RationalInterval.around(-3, 1)
    assert box.magnitude_lower() == 0
    assert box.magnitude_upper() == 3
    assert box.midpoint == QQ(-1)
    assert box.width == QQ(4)
    assert RationalInterval.around(2, 5).magnitude_lower() == 2


@pytest.mark.unit
def test_rational_conversions():
    assert to_rational(to_qq(Rational(-7, 3))) == Rational(-7, 3)
    assert to_qq(5) == QQ(5)


@pytest.mark.unit
@settings(max_examples=40, deadline=None)
@given(
    coeffs=st.lists(st.integers(-20, 20), min_size=1, max_size=6),
    lo_num=st.integers(-30, 30),
    width_num=st.integers(0, 20),
    den=st.integers(1, 9),
    fraction=st.integers(0, 10),
)
def test_polynomial_enclosure_contains_every_value(coeffs, lo_num, width_num, den, fraction):
    f = Poly(coeffs, T, domain=QQ)
    lo = Rational(lo_num, den)
    hi = lo + Rational(width_num, den)
    point = lo + (hi - lo) * Rational(fraction, 10)

    box = enclose_poly(f, {T: RationalInterval.around(lo, hi)})

    assert box.contains(f.eval(point))
