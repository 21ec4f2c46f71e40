import pytest
from sympy import Rational, oo

from src.analysis.selfint import KRange, SolutionPair, SystemSolutions
from src.exact.roots import isolate_real_roots
from src.exact.symbols import T, as_poly
from src.output.report import _system_lines, exact_value, format_list, format_real


def _pair(k):
    return SolutionPair(system=1, k=k, t=Rational(1, 2), s=Rational(2), residual_r=0.0, residual_theta=0.0)


@pytest.mark.unit
def test_format_real():
    assert format_real(Rational(3, 4)) == '3/4'
    assert format_real(oo) == 'infinity'
    assert format_real(-oo) == '-infinity'
    sqrt2 = isolate_real_roots(as_poly(T ** 2 - 2), T)[1]
    assert format_real(sqrt2) == '1.414213562'


@pytest.mark.unit
def test_format_list_brackets():
    assert format_list([-oo, Rational(0), Rational(5), oo], '{}') == '{-infinity, 0, 5, infinity}'
    assert format_list([Rational(1), Rational(2)]) == '[1, 2]'


@pytest.mark.unit
def test_exact_value():
    assert exact_value(oo).approx is None
    value = exact_value(Rational(-1, 4))
    assert value.exact == '-1/4'
    assert value.approx == -0.25


@pytest.mark.unit
def test_system_line_for_contiguous_range():
    entry = SystemSolutions(1, KRange(-2, 2, True), capped=False,
                            solutions={k: [_pair(k)] for k in (-2, -1, 1, 2)})
    assert _system_lines(entry) == ["System (1) gives self-intersections for k in [[ -2,2]], k<>0"]


@pytest.mark.unit
def test_system_lines_list_gaps_and_candidates():
    entry = SystemSolutions(2, KRange(-2, 1), capped=False,
                            solutions={-2: [_pair(-2)], -1: [], 0: [], 1: [_pair(1)]})
    assert _system_lines(entry) == [
        "System (2) gives self-intersections for k in [-2, 1]",
        "System (2) candidate k in [[ -2,1]]",
    ]


@pytest.mark.unit
def test_system_without_solutions_is_silent():
    entry = SystemSolutions(2, KRange(-1, 1), capped=False, solutions={-1: [], 0: [], 1: []})
    assert _system_lines(entry) == []
