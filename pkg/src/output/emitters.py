# === File: src/output/emitters.py ===

"""
Writers for the analysis artifacts: text report, JSON report, SVG plots and CSV samples.
"""

import os
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.analysis.analyzer import CurveAnalysis
from src.exceptions import OutputError
from src.logging_config import get_logger
from src.output.report import build_report, render_text
from src.output.sampling import PlotArtifact

logger = get_logger(__name__)

FORMATS = ('text', 'json', 'svg', 'csv')

SVG_NS = 'http://www.w3.org/2000/svg'
SVG_SIZE = 600
SVG_PADDING = 20
LEGEND_LINE = 16

STROKES = {
    'red': '#d62728',
    'blue': '#1f77b4',
    'neutral': '#7f7f7f',
}

CSV_COLUMNS = ['t', 'r', 'theta', 'x', 'y']

# Files are always written as UTF-8, whatever the locale
XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8"?>\n'

ET.register_namespace('', SVG_NS)


def expand_formats(formats: Iterable[str]) -> List[str]:
    """'all' stands for every format; order follows FORMATS."""
    requested = set(formats)
    if 'all' in requested:
        return list(FORMATS)
    unknown = requested - set(FORMATS)
    if unknown:
        raise OutputError(f"Unknown output format(s): {', '.join(sorted(unknown))}")
    return [f for f in FORMATS if f in requested]


def _write(path: str, content: str) -> str:
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(content)
    except OSError as e:
        logger.error(f"Could not write {path}: {e}")
        raise OutputError(f"Could not write {path}: {e}") from e
    return path


def write_text(analysis: CurveAnalysis, out_dir: str) -> str:
    return _write(os.path.join(out_dir, 'report.txt'), render_text(analysis))


def write_json(analysis: CurveAnalysis, out_dir: str) -> str:
    return _write(os.path.join(out_dir, 'report.json'), build_report(analysis).model_dump_json(indent=2) + '\n')


# === CSV ===

def samples_frame(artifacts: Sequence[PlotArtifact]) -> pd.DataFrame:
    """All samples, interval after interval, in parameter order."""
    frames = [pd.DataFrame({'t': a.t, 'r': a.r, 'theta': a.theta, 'x': a.x, 'y': a.y}, columns=CSV_COLUMNS)
              for a in artifacts]
    if not frames:
        return pd.DataFrame(columns=CSV_COLUMNS)
    return pd.concat(frames, ignore_index=True)


def write_csv(artifacts: Sequence[PlotArtifact], out_dir: str) -> str:
    path = os.path.join(out_dir, 'samples.csv')
    try:
        samples_frame(artifacts).to_csv(path, index=False, float_format='%.12g', na_rep='nan',
                                        lineterminator='\n')
    except OSError as e:
        logger.error(f"Could not write {path}: {e}")
        raise OutputError(f"Could not write {path}: {e}") from e
    return path


# === SVG ===

def _viewport(artifacts: Sequence[PlotArtifact]):
    xs = np.concatenate([a.x[np.isfinite(a.x)] for a in artifacts] or [np.zeros(0)])
    ys = np.concatenate([a.y[np.isfinite(a.y)] for a in artifacts] or [np.zeros(0)])
    if xs.size == 0:
        return -1.0, 1.0, -1.0, 1.0
    x_lo, x_hi, y_lo, y_hi = float(xs.min()), float(xs.max()), float(ys.min()), float(ys.max())
    span = max(x_hi - x_lo, y_hi - y_lo, 1e-9)
    cx, cy = (x_lo + x_hi) / 2, (y_lo + y_hi) / 2
    return cx - span / 2, cx + span / 2, cy - span / 2, cy + span / 2


def _points_attr(run: np.ndarray, viewport) -> str:
    x_lo, x_hi, y_lo, y_hi = viewport
    drawable = SVG_SIZE - 2 * SVG_PADDING
    scale = drawable / (x_hi - x_lo)
    px = SVG_PADDING + (run[:, 0] - x_lo) * scale
    # SVG y grows downwards
    py = SVG_PADDING + (y_hi - run[:, 1]) * scale
    return ' '.join(f"{a:.3f},{b:.3f}" for a, b in zip(px, py))


def _legend_label(artifact: PlotArtifact) -> str:
    lo, hi = artifact.interval.bounds
    provenance = ', '.join(artifact.interval.provenance) or 'none'
    label = f"t in ({lo:g}, {hi:g}) [{artifact.color}] markers: {provenance}"
    if artifact.under_resolved:
        label += ' (under-resolved)'
    return label


def render_svg(artifacts: Sequence[PlotArtifact], title: Optional[str] = None) -> str:
    """One <g> per interval holding its polylines, plus a legend."""
    legend_height = LEGEND_LINE * (len(artifacts) + 1)
    root = ET.Element(f'{{{SVG_NS}}}svg', {
        'version': '1.1',
        'width': str(SVG_SIZE),
        'height': str(SVG_SIZE + legend_height),
        'viewBox': f"0 0 {SVG_SIZE} {SVG_SIZE + legend_height}",
    })
    if title:
        ET.SubElement(root, f'{{{SVG_NS}}}title').text = title

    viewport = _viewport(artifacts)
    for index, artifact in enumerate(artifacts):
        stroke = STROKES.get(artifact.color, STROKES['neutral'])
        group = ET.SubElement(root, f'{{{SVG_NS}}}g', {
            'id': f'interval-{index}',
            'fill': 'none',
            'stroke': stroke,
            'stroke-width': '1',
        })
        for run in artifact.polylines():
            ET.SubElement(group, f'{{{SVG_NS}}}polyline', {'points': _points_attr(run, viewport)})

    legend = ET.SubElement(root, f'{{{SVG_NS}}}g', {'id': 'legend', 'font-family': 'monospace', 'font-size': '11'})
    for index, artifact in enumerate(artifacts):
        ET.SubElement(legend, f'{{{SVG_NS}}}text', {
            'x': str(SVG_PADDING),
            'y': str(SVG_SIZE + LEGEND_LINE * (index + 1)),
            'fill': STROKES.get(artifact.color, STROKES['neutral']),
        }).text = _legend_label(artifact)

    ET.indent(root)
    return XML_DECLARATION + ET.tostring(root, encoding='unicode') + '\n'


def write_svgs(artifacts: Sequence[PlotArtifact], out_dir: str, title: Optional[str] = None,
               workers: int = 1) -> List[str]:
    """plot_<i>.svg per interval and plot.svg with every interval."""
    def one(indexed):
        index, artifact = indexed
        return _write(os.path.join(out_dir, f'plot_{index}.svg'), render_svg([artifact], title))

    indexed = list(enumerate(artifacts))
    if workers > 1 and len(indexed) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            paths = list(pool.map(one, indexed))
    else:
        paths = [one(item) for item in indexed]
    paths.append(_write(os.path.join(out_dir, 'plot.svg'), render_svg(artifacts, title)))
    return paths


# === Entry point ===

def emit(analysis: CurveAnalysis, artifacts: Sequence[PlotArtifact], formats: Iterable[str],
         out_dir: str, workers: int = 1) -> List[str]:
    """Write the requested formats into out_dir and return the written paths."""
    formats = expand_formats(formats)
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as e:
        logger.error(f"Could not create output directory {out_dir}: {e}")
        raise OutputError(f"Could not create output directory {out_dir}: {e}") from e

    written = []
    if 'text' in formats:
        written.append(write_text(analysis, out_dir))
    if 'json' in formats:
        written.append(write_json(analysis, out_dir))
    if 'svg' in formats:
        r_text, theta_text = analysis.curve.texts
        written += write_svgs(artifacts, out_dir, title=f"r = {r_text}, theta = {theta_text}", workers=workers)
    if 'csv' in formats:
        written.append(write_csv(artifacts, out_dir))
    logger.info(f"Wrote {len(written)} file(s) to {out_dir}")
    return written
