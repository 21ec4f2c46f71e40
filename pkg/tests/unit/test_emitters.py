import xml.etree.ElementTree as ET

import pandas as pd
import pytest
from sympy import Rational

from src.curves.polar_curve import PolarCurve
from src.curves.rational_function import RationalFunction
from src.exceptions import OutputError
from src.output.emitters import FORMATS, SVG_NS, emit, expand_formats, render_svg, samples_frame, write_csv, write_svgs
from src.output.sampling import sample_interval
from src.planner.planner import IntervalColor, PlotInterval


@pytest.fixture
def artifacts():
    curve = PolarCurve(RationalFunction.constant(1), RationalFunction.identity())
    return [
        sample_interval(curve, PlotInterval(Rational(0), Rational(3), IntervalColor.RED), budget=5000),
        sample_interval(curve, PlotInterval(Rational(3), Rational(6), IntervalColor.BLUE), budget=5000),
    ]


@pytest.mark.unit
def test_expand_formats():
    assert expand_formats(['all']) == list(FORMATS)
    assert expand_formats(['svg', 'text']) == ['text', 'svg']
    with pytest.raises(OutputError):
        expand_formats(['pdf'])


@pytest.mark.unit
def test_samples_frame_concatenates_intervals(artifacts):
    frame = samples_frame(artifacts)
    assert list(frame.columns) == ['t', 'r', 'theta', 'x', 'y']
    assert len(frame) == sum(len(a.t) for a in artifacts)
    assert samples_frame([]).empty


@pytest.mark.unit
def test_write_csv(artifacts, tmp_path):
    path = write_csv(artifacts, str(tmp_path))
    with open(path, encoding='utf-8') as handle:
        assert handle.readline().strip() == 't,r,theta,x,y'
    frame = pd.read_csv(path)
    assert (frame['r'] == 1.0).all()


@pytest.mark.unit
def test_render_svg_is_well_formed(artifacts):
    root = ET.fromstring(render_svg(artifacts, title='r = 1, theta = t'))
    assert root.tag == f'{{{SVG_NS}}}svg'

    groups = {g.get('id'): g for g in root.iter(f'{{{SVG_NS}}}g')}
    assert set(groups) == {'interval-0', 'interval-1', 'legend'}
    assert groups['interval-0'].get('stroke') == '#d62728'
    assert groups['interval-1'].get('stroke') == '#1f77b4'
    assert len(list(groups['interval-0'].iter(f'{{{SVG_NS}}}polyline'))) == 1

    assert not any(a.under_resolved for a in artifacts)
    labels = [t.text for t in groups['legend'].iter(f'{{{SVG_NS}}}text')]
    assert labels[0] == 't in (0, 3) [red] markers: none'


@pytest.mark.unit
def test_render_svg_flags_under_resolved_intervals():
    curve = PolarCurve(RationalFunction.constant(1), RationalFunction.identity())
    coarse = sample_interval(curve, PlotInterval(Rational(0), Rational(3), IntervalColor.RED), budget=300)
    assert coarse.under_resolved

    root = ET.fromstring(render_svg([coarse], title='r = 1, theta = t'))
    legend = next(g for g in root.iter(f'{{{SVG_NS}}}g') if g.get('id') == 'legend')
    assert [t.text for t in legend.iter(f'{{{SVG_NS}}}text')][0] == 't in (0, 3) [red] markers: none (under-resolved)'


@pytest.mark.unit
def test_write_svgs_writes_one_file_per_interval_and_a_combined_one(artifacts, tmp_path):
    paths = write_svgs(artifacts, str(tmp_path), workers=2)
    assert [p.rsplit('/', 1)[-1] for p in paths] == ['plot_0.svg', 'plot_1.svg', 'plot.svg']
    for path in paths:
        ET.parse(path)


@pytest.mark.unit
def test_emit_into_unwritable_directory(tmp_path):
    blocker = tmp_path / 'file'
    blocker.write_text('x')
    with pytest.raises(OutputError):
        emit(None, [], ['csv'], str(blocker / 'out'))


@pytest.mark.unit
def test_emit_rejects_unknown_format_before_writing(tmp_path):
    target = tmp_path / 'out'
    with pytest.raises(OutputError):
        emit(None, [], ['png'], str(target))
    assert not target.exists()
