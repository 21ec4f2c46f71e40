import math

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, QQ, Rational, oo, sqrt

from src.exact.algebraic import algebraic_value, sign_at_value
from src.exact.roots import (
    RootBox, cauchy_bound, compare_reals, count_real_roots, count_roots_in, describe_real, isolate_real_roots,
    refine_until, same_root,
)
from src.exact.symbols import P, T, as_poly, in_var
from src.exceptions import MisuseError


@pytest.mark.unit
def test_isolates_rational_and_irrational_roots():
    f = as_poly((T - 1) ** 2 * (T ** 2 - 2))
    boxes = isolate_real_roots(f, T)

    assert len(boxes) == 3
    assert [b.multiplicity for b in boxes] == [1, 2, 1]
    assert boxes[1].exact == 1
    assert abs(boxes[0].approx() + math.sqrt(2)) < 1e-12
    assert abs(boxes[2].approx() - math.sqrt(2)) < 1e-12


@pytest.mark.unit
def test_isolates_roots_with_pi_coefficients():
    f = in_var(as_poly((T - P) * (T + 2 * P) * (T - 1)), T)
    values = [b.approx() for b in isolate_real_roots(f, T)]
    expected = [-2 * math.pi, 1.0, math.pi]
    assert len(values) == 3
    assert all(abs(v - e) < 1e-9 for v, e in zip(values, expected))


@pytest.mark.unit
def test_no_real_roots():
    assert isolate_real_roots(as_poly(T ** 2 + 1), T) == []


@pytest.mark.unit
def test_zero_polynomial_rejected():
    with pytest.raises(MisuseError):
        isolate_real_roots(Poly(0, T, P), T)


@pytest.mark.unit
def test_count_roots_in_open_interval():
    f = as_poly((T - 1) * (T - 2) * (T - 3))
    assert count_roots_in(f, 0, 4) == 3
    assert count_roots_in(f, 1, 3) == 1
    assert count_roots_in(f, Rational(3, 2), Rational(5, 2)) == 1
    assert count_roots_in(f, 5, 4) == 0


@pytest.mark.unit
def test_count_roots_near_pi():
    f = in_var(as_poly(T - P), T)
    assert count_roots_in(f, Rational(314, 100), Rational(315, 100)) == 1
    assert count_roots_in(f, Rational(22, 7), 4) == 0


@pytest.mark.unit
@pytest.mark.parametrize(
    "expr,expected",
    [
        ((T - P) * (T + 2 * P) * (T - 1), 3),
        (T ** 2 + P, 0),
        ((T - 1) ** 2 * (T ** 2 - 2), 3),
        # discriminant 4(p^2 - 10) is negative at pi but positive at 16/5
        (T ** 2 - 2 * P * T + 10, 0),
        (T ** 2 - 2 * P * T + 9, 2),
        (P * T, 1),
    ],
)
def test_count_real_roots(expr, expected):
    assert count_real_roots(in_var(as_poly(expr), T), T) == expected


@pytest.mark.unit
def test_count_real_roots_of_zero_polynomial_raises():
    with pytest.raises(MisuseError):
        count_real_roots(Poly(0, T, P), T)


@pytest.mark.unit
@settings(max_examples=20, deadline=None)
@given(coeffs=st.lists(st.tuples(st.integers(-4, 4), st.integers(-2, 2)), min_size=2, max_size=4))
def test_count_real_roots_agrees_with_isolation(coeffs):
    expr = sum((a + b * P) * T ** i for i, (a, b) in enumerate(coeffs))
    f = in_var(as_poly(expr), T)
    if f.is_zero or f.degree(T) <= 0:
        return
    assert count_real_roots(f, T) == len(isolate_real_roots(f, T))


@pytest.mark.unit
def test_cauchy_bound_encloses_roots():
    f = as_poly(T ** 3 - 100 * T + 7)
    bound = cauchy_bound(f)
    assert all(-bound < b.lower and b.upper < bound for b in isolate_real_roots(f, T))


@pytest.mark.unit
def test_refine_keeps_the_root():
    box = isolate_real_roots(as_poly(T ** 2 - 2), T)[1]
    refined = box.refine(QQ(1, 2 ** 40))
    assert refined.width <= QQ(1, 2 ** 40)
    assert abs(refined.approx() - math.sqrt(2)) < 1e-12


@pytest.mark.unit
def test_refine_until_shrinks_every_box():
    boxes = isolate_real_roots(in_var(as_poly((T ** 2 - 2) * (T - P)), T), T)
    refined = refine_until(boxes, QQ(1, 2 ** 30))
    assert len(refined) == 3
    assert all(b.width <= QQ(1, 2 ** 30) for b in refined)
    for box, expected in zip(refined, (-math.sqrt(2), math.sqrt(2), math.pi)):
        assert abs(box.approx() - expected) < 1e-9


@pytest.mark.unit
def test_same_root_and_compare():
    sqrt2 = isolate_real_roots(as_poly(T ** 2 - 2), T)[1]
    other = isolate_real_roots(as_poly(T ** 4 - 4), T)[1]
    assert same_root(sqrt2, other)
    assert compare_reals(sqrt2, Rational(3, 2)) == -1
    assert compare_reals(sqrt2, Rational(7, 5)) == 1
    assert compare_reals(sqrt2, other) == 0
    assert compare_reals(-oo, sqrt2) == -1
    assert compare_reals(oo, oo) == 0


@pytest.mark.unit
def test_describe_real():
    assert describe_real(Rational(-1, 2)) == '-1/2'
    assert describe_real(oo) == 'infinity'
    assert describe_real(-oo) == '-infinity'
    assert describe_real(isolate_real_roots(as_poly(T ** 2 - 2), T)[1]).startswith('root of')


@pytest.mark.unit
def test_algebraic_value_of_rational_function():
    sqrt2 = isolate_real_roots(as_poly(T ** 2 - 2), T)[1]
    value = algebraic_value(as_poly(T ** 2 + 1), as_poly(T), sqrt2)
    assert isinstance(value, RootBox)
    assert abs(value.approx() - float(3 / sqrt(2))) < 1e-12
    assert algebraic_value(as_poly(T ** 2), as_poly(T + 1), Rational(2)) == Rational(4, 3)


@pytest.mark.unit
def test_sign_at_value():
    sqrt2 = isolate_real_roots(as_poly(T ** 2 - 2), T)[1]
    assert sign_at_value(as_poly(T ** 2 - 2), sqrt2) == 0
    assert sign_at_value(as_poly(T - Rational(3, 2)), sqrt2) == -1
    assert sign_at_value(in_var(as_poly(T - P), T), Rational(22, 7)) == 1


@pytest.mark.unit
@settings(max_examples=25, deadline=None)
@given(roots=st.lists(st.integers(-12, 12), min_size=1, max_size=5, unique=True), scale=st.integers(1, 5))
def test_isolation_finds_every_distinct_root(roots, scale):
    expr = scale
    for r in roots:
        expr = expr * (T - Rational(r, 3))
    boxes = isolate_real_roots(as_poly(expr), T)

    assert len(boxes) == len(roots)
    for box, r in zip(boxes, sorted(roots)):
        assert same_root(box, Rational(r, 3))
