import math

import mpmath
import pytest
from sympy import QQ, Rational

from src.exact.pi_enclosure import cos_sin_enclosure, pi_enclosure, pi_multiple_interval, sign_at_pi


def _mp(q):
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


@pytest.mark.unit
@pytest.mark.parametrize("precision", [16, 64, 128, 512])
def test_bracket_contains_pi_and_is_narrow(precision):
    enclosure = pi_enclosure(precision)
    with mpmath.workdps(precision // 3 + 30):
        assert _mp(enclosure.lower) <= mpmath.pi <= _mp(enclosure.upper)
    assert enclosure.upper - enclosure.lower <= QQ(1, 2 ** (precision - 1))
    assert 3 < enclosure.lower and enclosure.upper < 4


@pytest.mark.unit
def test_refined_doubles_precision():
    assert pi_enclosure(64).refined().precision == 128


@pytest.mark.unit
@pytest.mark.parametrize(
    "coeffs,expected",
    [
        ([-355, 113], -1),   # 113 pi is just below 355
        ([22, -7], 1),       # 7 pi is just below 22
        ([-3, 1], 1),
        ([0, 0, 1], 1),
        ([0, 0], 0),
        ([-10, 0, 1], -1),   # pi^2 < 10
    ],
)
def test_sign_at_pi(coeffs, expected):
    assert sign_at_pi([QQ(c) for c in coeffs]) == expected


@pytest.mark.unit
def test_sign_at_pi_raises_precision_on_demand():
    # 103993/33102 agrees with pi to about 10 digits
    assert sign_at_pi([QQ(-103993), QQ(33102)], precision=8) == 1


@pytest.mark.unit
def test_pi_multiple_interval():
    box = pi_multiple_interval(Rational(-3))
    lo, hi = box.as_floats()
    assert lo <= -3 * math.pi <= hi


@pytest.mark.unit
@pytest.mark.parametrize("angle", [Rational(1), Rational(-7, 3), Rational(78)])
def test_cos_sin_enclosure(angle):
    cos_box, sin_box = cos_sin_enclosure(angle)
    value = float(angle)
    assert cos_box.as_floats()[0] - 1e-15 <= math.cos(value) <= cos_box.as_floats()[1] + 1e-15
    assert sin_box.as_floats()[0] - 1e-15 <= math.sin(value) <= sin_box.as_floats()[1] + 1e-15
    assert cos_box.width < QQ(1, 2 ** 50)
