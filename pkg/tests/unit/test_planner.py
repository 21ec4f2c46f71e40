import math

import pytest
from sympy import Rational, oo

from src.analysis.features import detect_features
from src.analysis.ratan import point_at_infinity
from src.exceptions import MisuseError
from src.planner.planner import (
    CaseTag, IntervalColor, Marker, PlotInterval, PlotPlan, Provenance, border_margins, build_intervals,
    classify_case, marker_set, plan_plot,
)


def _marker(value, *provenance):
    return Marker(value, frozenset(provenance))


@pytest.mark.unit
@pytest.mark.parametrize(
    "name,case",
    [
        ('phi1', CaseTag.BOTH_BOUNDED),
        ('phi3', CaseTag.THETA_BOUNDED_R_UNBOUNDED),
        ('phi4', CaseTag.THETA_BOUNDED_R_UNBOUNDED),
        ('phi5', CaseTag.R_BOUNDED_THETA_UNBOUNDED),
        ('phi6', CaseTag.BOTH_UNBOUNDED),
    ],
)
def test_classify_case(curve_of, name, case):
    assert classify_case(curve_of(name)) == case


@pytest.mark.unit
def test_case_sentences():
    assert CaseTag.BOTH_BOUNDED.sentence == 'r and theta both bounded'
    assert CaseTag.THETA_BOUNDED_R_UNBOUNDED.sentence == 'r unbounded and theta bounded'


@pytest.mark.unit
def test_windows_with_features_at_both_infinities():
    markers = [
        _marker(-oo, Provenance.ASYMPTOTE),
        _marker(Rational(0), Provenance.R_ZERO),
        _marker(oo, Provenance.ASYMPTOTE),
    ]
    intervals = build_intervals(markers)
    assert [i.bounds for i in intervals] == [(-20, -10), (-10, 0), (0, 10), (10, 20)]
    assert [i.color for i in intervals] == [
        IntervalColor.NEUTRAL, IntervalColor.RED, IntervalColor.BLUE, IntervalColor.NEUTRAL,
    ]


@pytest.mark.unit
def test_windows_mirror_inner_half_windows():
    markers = [
        _marker(-oo, Provenance.P_INFINITY),
        _marker(Rational(0), Provenance.R_ZERO),
        _marker(Rational(5), Provenance.ASYMPTOTE),
        _marker(Rational(6), Provenance.ASYMPTOTE),
        _marker(oo, Provenance.P_INFINITY),
    ]
    intervals = build_intervals(markers)
    assert [i.bounds for i in intervals] == [
        (-5, -2.5), (-2.5, 0), (0, 2.5), (2.5, 5), (5, 5.5), (5.5, 6), (6, 6.5), (6.5, 7),
    ]
    assert intervals[3].hi_marker.bordered
    assert not intervals[2].lo_marker.bordered


@pytest.mark.unit
def test_no_finite_marker_gives_one_neutral_window():
    intervals = build_intervals([_marker(-oo, Provenance.LIMIT_CIRCLE), _marker(oo, Provenance.LIMIT_CIRCLE)])
    assert len(intervals) == 1
    assert intervals[0].bounds == (-10, 10)
    assert intervals[0].color == IntervalColor.NEUTRAL


@pytest.mark.unit
def test_marker_set_with_provenance(curve_of):
    curve = curve_of('phi3')
    features = detect_features(curve)
    markers = marker_set(curve, features, CaseTag.THETA_BOUNDED_R_UNBOUNDED, point_at_infinity(curve))

    assert [m.describe() for m in markers] == ['-infinity', '0', '5', '6', 'infinity']
    assert markers[1].provenance == {Provenance.R_ZERO}
    assert markers[2].provenance == {Provenance.ASYMPTOTE}
    assert markers[0].provenance == {Provenance.P_INFINITY}


@pytest.mark.unit
def test_marker_set_for_limit_circles(curve_of):
    curve = curve_of('phi5')
    markers = marker_set(curve, detect_features(curve), CaseTag.R_BOUNDED_THETA_UNBOUNDED)
    assert [m.describe() for m in markers] == ['-infinity', '0', 'infinity']


@pytest.mark.unit
def test_marker_set_rejects_bounded_case(curve_of):
    with pytest.raises(MisuseError):
        marker_set(curve_of('phi1'), [], CaseTag.BOTH_BOUNDED)


@pytest.mark.unit
def test_bounded_curve_plots_whole_line(curve_of):
    plan = plan_plot(curve_of('phi1'), [])
    assert plan.markers == []
    assert len(plan.intervals) == 1
    assert plan.intervals[0].compactified


@pytest.mark.unit
def test_plan_without_point_at_infinity(curve_of):
    curve = curve_of('phi4')
    plan = plan_plot(curve, detect_features(curve), point_at_infinity(curve))
    assert [m.describe() for m in plan.markers] == ['-infinity', '0', 'infinity']
    assert [i.bounds for i in plan.intervals] == [(-20, -10), (-10, 0), (0, 10), (10, 20)]
    assert plan.dropped == []


@pytest.mark.unit
def test_border_margins_cut_windows_at_the_r_cap(curve_of):
    curve = curve_of('phi3')
    plan = plan_plot(curve, detect_features(curve), point_at_infinity(curve), r_cap=50)

    bounds = [i.bounds for i in plan.intervals]
    assert bounds[:3] == [(-5, -2.5), (-2.5, 0), (0, 2.5)]
    assert bounds[-1] == (6.5, 7)

    cut = plan.intervals[3]
    assert cut.bordered_hi and not cut.bordered_lo
    # |r| = 50 where 49 t^2 - 550 t + 1500 = 0
    assert cut.bounds[0] == 2.5
    assert abs(cut.bounds[1] - (550 - math.sqrt(8500)) / 98) < 1e-6
    r_at_cut = curve.r(cut.hi)
    assert abs(r_at_cut) <= 50

    # |r| > 50 on the whole of (5, 6.5)
    assert [i.bounds for i in plan.dropped] == [(5, 5.5), (5.5, 6), (6, 6.5)]


@pytest.mark.unit
def test_border_margins_need_positive_caps(curve_of):
    plan = PlotPlan(CaseTag.THETA_BOUNDED_R_UNBOUNDED, [], [])
    with pytest.raises(MisuseError):
        border_margins(plan, curve_of('phi3'), r_cap=0)


@pytest.mark.unit
def test_interval_provenance_lists_marker_tags():
    marker = _marker(Rational(1), Provenance.LIMIT_CIRCLE, Provenance.R_ZERO)
    interval = PlotInterval(Rational(0), Rational(1), IntervalColor.RED, hi_marker=marker)
    assert interval.provenance == ['limit_circle', 'r_zero']
