# === File: src/output/sampling.py ===

"""
Adaptive sampling of plot intervals.

Parameters are refined where consecutive cartesian points are farthest apart,
so windings near limit circles and spirals get proportionally more samples.
Vertices with |r| > r_cap (or at a pole) are kept as NaN breaks.
"""

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from config import CHORD_TOLERANCE, INITIAL_SAMPLES, R_CAP, SAMPLING_BUDGET
from src.curves.polar_curve import PolarCurve
from src.logging_config import get_logger
from src.output.geometry import polar_to_cartesian
from src.planner.planner import PlotInterval, PlotPlan

logger = get_logger(__name__)

# Distance kept from the ends of the compactified parameter tau in (-1, 1)
COMPACT_MARGIN = 1e-6


@dataclass
class PlotArtifact:
    """Sampled polyline of one interval; x, y are NaN at clipped vertices."""
    interval: PlotInterval
    t: np.ndarray
    r: np.ndarray
    theta: np.ndarray
    x: np.ndarray
    y: np.ndarray
    under_resolved: bool = False

    @property
    def color(self) -> str:
        return self.interval.color.value

    def polylines(self) -> List[np.ndarray]:
        """Runs of consecutive visible vertices as (n, 2) arrays with n >= 2."""
        visible = np.isfinite(self.x) & np.isfinite(self.y)
        runs, start = [], None
        for i, ok in enumerate(visible):
            if ok and start is None:
                start = i
            elif not ok and start is not None:
                runs.append((start, i))
                start = None
        if start is not None:
            runs.append((start, len(visible)))
        return [np.column_stack((self.x[a:b], self.y[a:b])) for a, b in runs if b - a >= 2]


def parameter_map(interval: PlotInterval) -> Callable[[float], float]:
    """u in [0, 1] to t; the whole line goes through t = tau / (1 - tau^2)."""
    if interval.compactified:
        def compact(u: float) -> float:
            tau = (2.0 * u - 1.0) * (1.0 - COMPACT_MARGIN)
            return tau / (1.0 - tau * tau)
        return compact
    lo, hi = interval.bounds
    return lambda u: lo + (hi - lo) * u


def _evaluate(curve: PolarCurve, t: float, r_cap: float):
    r, theta = (float(v[0]) for v in curve.numeric(np.array([t])))
    if not (np.isfinite(r) and np.isfinite(theta)) or abs(r) > r_cap:
        return t, r, theta, float('nan'), float('nan')
    x, y = polar_to_cartesian(r, theta)
    return t, r, theta, x, y


def _chord(p, q) -> float:
    if not all(np.isfinite(v) for v in (p[3], p[4], q[3], q[4])):
        return 0.0
    return float(np.hypot(q[3] - p[3], q[4] - p[4]))


def sample_interval(curve: PolarCurve, interval: PlotInterval, budget: int = SAMPLING_BUDGET,
                    tolerance: float = CHORD_TOLERANCE, r_cap: float = R_CAP,
                    initial: int = INITIAL_SAMPLES) -> PlotArtifact:
    """
    Sample one interval until every chord is below tolerance times the viewport
    diagonal or the budget is spent (then the artifact is flagged under-resolved).
    """
    to_t = parameter_map(interval)
    points = {u: _evaluate(curve, to_t(u), r_cap) for u in np.linspace(0.0, 1.0, initial)}

    xs = [p[3] for p in points.values() if np.isfinite(p[3])]
    ys = [p[4] for p in points.values() if np.isfinite(p[4])]
    diagonal = float(np.hypot(np.ptp(xs), np.ptp(ys))) if xs else 0.0
    limit = tolerance * (diagonal if diagonal > 0 else 2.0 * r_cap)

    us = sorted(points)
    heap = [(-_chord(points[a], points[b]), a, b) for a, b in zip(us[:-1], us[1:])]
    heapq.heapify(heap)
    under_resolved = False
    while heap and -heap[0][0] > limit:
        if len(points) >= budget:
            under_resolved = True
            break
        _, a, b = heapq.heappop(heap)
        mid = (a + b) / 2.0
        if mid in (a, b):
            continue
        points[mid] = _evaluate(curve, to_t(mid), r_cap)
        heapq.heappush(heap, (-_chord(points[a], points[mid]), a, mid))
        heapq.heappush(heap, (-_chord(points[mid], points[b]), mid, b))

    if under_resolved:
        lo, hi = interval.bounds
        logger.warning(f"Interval ({lo:g}, {hi:g}) under-resolved after {len(points)} samples")
    ordered = np.array([points[u] for u in sorted(points)], dtype=float)
    return PlotArtifact(interval, *ordered.T, under_resolved=under_resolved)


def sample_plan(curve: PolarCurve, plan: PlotPlan, budget: int = SAMPLING_BUDGET, r_cap: float = R_CAP,
                workers: int = 1) -> List[PlotArtifact]:
    """One artifact per interval, in plan order."""
    if workers > 1 and len(plan.intervals) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda i: sample_interval(curve, i, budget, r_cap=r_cap), plan.intervals))
    return [sample_interval(curve, interval, budget, r_cap=r_cap) for interval in plan.intervals]
