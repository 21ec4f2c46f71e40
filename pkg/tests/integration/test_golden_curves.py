import re
from pathlib import Path

import pytest

from src.analysis.features import FeatureKind, generators
from src.oracle.numeric import match_self_intersections, verify
from src.output.emitters import write_csv
from src.output.report import build_report, report_lines
from src.output.sampling import sample_plan
from src.planner.planner import CaseTag, IntervalColor
from src.schemas import AnalysisReportSchema

PINF_AT_ORIGIN = "Real point at the infinity such that (r, theta)=[0, 1] and the point is [0, 0]"
ORIGIN_REACHED = "The point at infinity (0,0) is reached 1 times in R, so self-intersection at the origen"


@pytest.mark.integration
def test_both_bounded_with_point_at_infinity_at_origin(analysis_of):
    lines = report_lines(analysis_of('phi1'))
    assert lines[:3] == ["r and theta both bounded", PINF_AT_ORIGIN, ORIGIN_REACHED]
    assert not any(line.startswith("System") for line in lines)


@pytest.mark.integration
@pytest.mark.slow
def test_both_bounded_with_finitely_many_self_intersections(analysis_of):
    analysis = analysis_of('phi2')
    lines = report_lines(analysis)
    assert lines[:3] == ["r and theta both bounded", PINF_AT_ORIGIN, ORIGIN_REACHED]
    assert "System (1) gives self-intersections for k in [[ -2,2]], k<>0" in lines
    assert "System (2) gives self-intersections for k in [[ -2,1]]" in lines
    assert not analysis.selfint.infinite


@pytest.mark.integration
@pytest.mark.slow
def test_theta_bounded_with_asymptotes(analysis_of):
    analysis = analysis_of('phi3')
    lines = report_lines(analysis)
    assert analysis.case == CaseTag.THETA_BOUNDED_R_UNBOUNDED
    assert lines[0] == "r unbounded and theta bounded"
    assert "Real point at the infinity such that (r, theta)=[1, 1] and the point is [cos(1), sin(1)]" in lines
    assert "Point at infinity is not reached with k=0" in lines
    assert "Point at infinity is not reached with k<>0" in lines
    assert "System (1) gives self-intersections for k in [[ -2,2]], k<>0" in lines
    assert "Values of t generating asymptotes [5, 6]" in lines
    assert "Values of t considered in the plot {-infinity, 0, 5, 6, infinity}" in lines


@pytest.mark.integration
def test_theta_bounded_without_point_at_infinity(analysis_of):
    analysis = analysis_of('phi4')
    lines = report_lines(analysis)
    assert lines[:2] == ["r unbounded and theta bounded", "There is no point at infinity"]
    assert "Values of t generating asymptotes [-infinity, infinity]" in lines
    assert "Values of t considered in the plot {-infinity, 0, infinity}" in lines
    assert [i.bounds for i in analysis.plan.intervals] == [(-20, -10), (-10, 0), (0, 10), (10, 20)]
    assert [i.color for i in analysis.plan.intervals] == [
        IntervalColor.NEUTRAL, IntervalColor.RED, IntervalColor.BLUE, IntervalColor.NEUTRAL,
    ]


@pytest.mark.integration
def test_r_bounded_with_limit_circles(analysis_of):
    analysis = analysis_of('phi5')
    lines = report_lines(analysis)
    assert lines[0] == "r bounded and theta unbounded"
    assert "Values of t generating limit circles [-infinity, infinity]" in lines
    assert "There are infinitely many self-intersections" in lines
    assert "t=infinity has infinitely many close self-intersections" in lines
    assert "There are no limit points" in lines
    assert any(entry.capped for entry in analysis.selfint.systems)
    assert "Values of t considered in the plot {-infinity, 0, infinity}" in lines


@pytest.mark.integration
def test_both_unbounded_with_circles_and_spirals(analysis_of):
    analysis = analysis_of('phi6')
    lines = report_lines(analysis)
    assert lines[0] == "r and theta both unbounded"
    assert "Values of t generating limit circles [1, 2]" in lines
    assert "Values of t generating spiral branches [-infinity, infinity]" in lines
    assert "There are not values of t generating asymptotes" in lines
    assert "t=1 has infinitely many close self-intersections" in lines
    assert "t=2 has infinitely many close self-intersections" in lines
    assert "t=infinity has infinitely many close self-intersections" in lines
    assert "Values of t considered in the plot {-infinity, 0, 1, 2, infinity}" in lines
    assert generators(analysis.features, FeatureKind.ASYMPTOTE) == []


@pytest.mark.integration
def test_structured_report_is_deterministic(analysis_of):
    analysis = analysis_of('phi4')
    first = build_report(analysis).model_dump_json(indent=2)
    second = build_report(analysis).model_dump_json(indent=2)
    assert first == second

    report = build_report(analysis)
    assert report.case == 'theta_bounded_r_unbounded'
    assert report.p_infinity.exists is False
    assert [m.value.exact for m in report.markers] == ['-infinity', '0', 'infinity']
    assert report.lines == report_lines(analysis)


@pytest.mark.integration
def test_json_report_validates_back_to_the_same_report(analysis_of):
    report = build_report(analysis_of('phi4'))
    dump = report.model_dump_json(indent=2)
    restored = AnalysisReportSchema.model_validate_json(dump)
    assert restored == report
    assert restored.model_dump_json(indent=2) == dump


@pytest.mark.integration
def test_csv_is_byte_identical_across_runs(analysis_of, tmp_path):
    analysis = analysis_of('phi4')
    paths = []
    for run, workers in enumerate((1, 2)):
        out_dir = tmp_path / f"run{run}"
        out_dir.mkdir()
        artifacts = sample_plan(analysis.curve, analysis.plan, budget=2000, workers=workers)
        paths.append(write_csv(artifacts, str(out_dir)))
    first, second = (Path(path).read_bytes() for path in paths)
    assert first == second


@pytest.mark.integration
@pytest.mark.slow
def test_oracle_agrees_with_exact_limits(analysis_of):
    lines = verify(analysis_of('phi3'), t_range=(-10.0, 10.0), n=4000)
    agreed, total = map(int, re.match(r"Oracle: (\d+) of (\d+) limits agree", lines[0]).groups())
    assert total > 0
    assert agreed == total


@pytest.mark.integration
@pytest.mark.slow
def test_numeric_crossings_match_certified_solutions_one_to_one(analysis_of):
    analysis = analysis_of('phi2')
    matching = match_self_intersections(analysis, t_range=(-50.0, 50.0), n=20000, tau=1e-4)
    assert matching.certified
    assert matching.unmatched_numeric == []
    assert matching.unmatched_certified == []
    assert matching.bijective

    lines = verify(analysis, t_range=(-50.0, 50.0), n=20000, tau=1e-4)
    found, numeric = map(int, re.search(r"Oracle: (\d+) of (\d+) numeric", "\n".join(lines)).groups())
    paired, certified = map(int, re.search(r"Oracle: (\d+) of (\d+) certified", "\n".join(lines)).groups())
    assert found == numeric == paired == certified == len(matching.pairs)
