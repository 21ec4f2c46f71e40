# === File: src/oracle/numeric.py ===

"""
Brute-force numeric checks of the exact analysis.

Nothing here is certified: these are independent float (or mpmath)
computations the test suite and `--verify` compare against.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple, Union

import mpmath
import numpy as np
from scipy.optimize import root
from scipy.spatial import cKDTree
from sympy import Poly

from config import ORACLE_LIMIT_TOLERANCE, ORACLE_MATCH_TOLERANCE, ORACLE_SAMPLES, ORACLE_TOLERANCE
from src.curves.polar_curve import PolarCurve
from src.curves.rational_function import RationalFunction
from src.exact.roots import approx, is_infinite
from src.exact.symbols import P
from src.logging_config import get_logger
from src.output.geometry import polar_to_cartesian

logger = get_logger(__name__)

ORIGIN_RADIUS = 1e-9


# === Self-intersections ===

@dataclass(frozen=True)
class NumericIntersection:
    """Parameters t < s mapped to (numerically) the same cartesian point."""
    t: float
    s: float
    x: float
    y: float
    residual: float

    @property
    def at_origin(self) -> bool:
        return math.hypot(self.x, self.y) < ORIGIN_RADIUS

    @property
    def point(self) -> Tuple[float, float]:
        return self.x, self.y


def _cartesian(curve: PolarCurve, ts: np.ndarray) -> np.ndarray:
    r, theta = curve.numeric(ts)
    x, y = polar_to_cartesian(r, theta)
    return np.column_stack((x, y))


def _residual_function(curve: PolarCurve) -> Callable[[np.ndarray], np.ndarray]:
    def residual(ts: np.ndarray) -> np.ndarray:
        points = _cartesian(curve, np.asarray(ts, dtype=float))
        return points[0] - points[1]
    return residual


def _candidate_pairs(points: np.ndarray, finite: np.ndarray, tau: float) -> List[Tuple[int, int]]:
    """
    Index pairs whose samples are close enough for their polyline segments to cross.

    Two crossing segments keep their nearest samples within the larger adjacent
    chord of either, so each sample is queried with its own chord plus tau as radius.
    """
    chords = np.hypot(*np.diff(points, axis=0).T)
    chords = np.where(np.isfinite(chords), chords, np.inf)
    local = np.maximum(np.concatenate(([chords[0]], chords)), np.concatenate((chords, [chords[-1]])))

    indices = np.flatnonzero(finite & np.isfinite(local))
    if indices.size < 2:
        return []
    # chords next to poles are huge and would pair a sample with the whole curve
    radius = np.minimum(local[indices], np.percentile(local[indices], 99.9)) + tau
    tree = cKDTree(points[indices])
    neighbours = tree.query_ball_point(points[indices], radius, return_sorted=False)

    # One candidate per block of neighbouring samples; all would refine to the same point.
    best: Dict[Tuple[int, int], Tuple[float, int, int]] = {}
    for a, found in enumerate(neighbours):
        for b in found:
            i, j = sorted((int(indices[a]), int(indices[b])))
            if j - i <= 2:
                continue
            distance = float(np.hypot(*(points[i] - points[j])))
            block = (i // 4, j // 4)
            if block not in best or distance < best[block][0]:
                best[block] = (distance, i, j)
    return [(i, j) for _, i, j in sorted(best.values(), key=lambda item: (item[1], item[2]))]


def numeric_self_intersections(curve: PolarCurve, t_range: Tuple[float, float] = (-50.0, 50.0),
                               n: int = ORACLE_SAMPLES, tau: float = ORACLE_TOLERANCE) -> List[NumericIntersection]:
    """
    Approximate self-intersections with both parameters in t_range.

    Samples n parameters, pairs up samples that lie close in the plane through a
    k-d tree, and refines each pair with a hybrid Newton solve of
    (x(t), y(t)) = (x(s), y(s)). Pairs closer than 10*tau*range/n in t are
    the trivial solution t = s and are dropped.
    """
    lo, hi = t_range
    if n < 1000:
        logger.warning(f"Only {n} oracle samples; intersections may be missed")
    ts = np.linspace(lo, hi, n)
    points = _cartesian(curve, ts)
    finite = np.all(np.isfinite(points), axis=1)
    min_gap = max(10.0 * tau * (hi - lo) / n, 2.0 * (hi - lo) / n)
    residual = _residual_function(curve)

    found: List[NumericIntersection] = []
    for i, j in _candidate_pairs(points, finite, tau):
        with np.errstate(all='ignore'):
            solution = root(residual, np.array([ts[i], ts[j]]), method='hybr')
        if not solution.success:
            continue
        t, s = sorted(float(v) for v in solution.x)
        if not (lo <= t <= hi and lo <= s <= hi) or s - t <= min_gap:
            continue
        error = float(np.hypot(*residual(np.array([t, s]))))
        if not np.isfinite(error) or error > tau:
            continue
        if any(abs(t - other.t) < 1e-7 and abs(s - other.s) < 1e-7 for other in found):
            continue
        x, y = _cartesian(curve, np.array([t]))[0]
        found.append(NumericIntersection(t, s, float(x), float(y), error))

    found.sort(key=lambda p: (p.t, p.s))
    logger.debug(f"Oracle found {len(found)} self-intersections of {curve} on [{lo:g}, {hi:g}]")
    return found


# === Limits ===

@dataclass(frozen=True)
class ApproachSchedule:
    """Offsets h_n = first * ratio**n for n < steps."""
    first: float = 0.1
    ratio: float = 0.5
    steps: int = 12

    def offsets(self) -> List[mpmath.mpf]:
        return [mpmath.mpf(self.first) * mpmath.mpf(self.ratio) ** n for n in range(self.steps)]


DEFAULT_SCHEDULE = ApproachSchedule()


@dataclass(frozen=True)
class NumericLimit:
    value: float
    error: float
    diverged: bool = False

    def agrees_with(self, expected: float, tolerance: float = ORACLE_LIMIT_TOLERANCE) -> bool:
        if self.diverged or math.isinf(expected):
            return self.diverged and math.isinf(expected) and math.copysign(1, self.value) == math.copysign(1, expected)
        return abs(self.value - expected) <= tolerance * max(1.0, abs(expected))


def _mp_function(f: Union[RationalFunction, Callable]) -> Callable:
    if not isinstance(f, RationalFunction):
        return f
    num = [mpmath.mpf(c.p) / c.q for c in f.numerator.all_coeffs()]
    den = [mpmath.mpf(c.p) / c.q for c in f.denominator.all_coeffs()]
    return lambda t: mpmath.polyval(num, t) / mpmath.polyval(den, t)


def _richardson(values: Sequence, ratio) -> Tuple:
    """Diagonal of the Richardson table for errors in powers of h with h_n = h_0 ratio**n."""
    table = [list(values)]
    for m in range(1, len(values)):
        factor = mpmath.mpf(ratio) ** m
        previous = table[-1]
        table.append([(previous[i + 1] - factor * previous[i]) / (1 - factor) for i in range(len(previous) - 1)])
    return [row[-1] for row in table]


def numeric_limit(f: Union[RationalFunction, Callable], t0, side: str = '+',
                  schedule: ApproachSchedule = DEFAULT_SCHEDULE) -> NumericLimit:
    """
    Estimate the one-sided limit of f at t0 (a float, a Rational, a RootBox or +/-oo).

    At +/-oo the approach is t = +/-1/h; at a finite t0 it is t0 -/+ h depending on side.
    The error indicator is the difference of the last two extrapolations.
    """
    fn = _mp_function(f)
    with mpmath.workdps(50):
        offsets = schedule.offsets()
        if is_infinite(t0) or (isinstance(t0, float) and math.isinf(t0)):
            sign = 1 if t0 > 0 else -1
            points = [sign / h for h in offsets]
        else:
            center = mpmath.mpf(approx(t0))
            direction = 1 if side == '+' else -1
            points = [center + direction * h for h in offsets]
        values = [fn(t) for t in points]

        # near a pole of order m the magnitude grows by ratio**-m per step
        magnitudes = [abs(v) for v in values]
        threshold = (1 + 1 / mpmath.mpf(schedule.ratio)) / 2
        if all(b > threshold * a for a, b in zip(magnitudes[-4:-1], magnitudes[-3:])):
            return NumericLimit(math.copysign(math.inf, float(values[-1])), math.inf, diverged=True)

        diagonal = _richardson(values, schedule.ratio)
        value, error = diagonal[-1], abs(diagonal[-1] - diagonal[-2])
        return NumericLimit(float(value), float(error))


# === Resultants ===

def _float_coefficients(f: Poly, var, point: Dict) -> List[float]:
    bindings = {P: math.pi, **point}
    expr = f.as_expr().subs({g: bindings[g] for g in f.gens if g != var and g in bindings})
    return [float(c) for c in Poly(expr, var).all_coeffs()]


def sylvester_matrix(f_coeffs: Sequence[float], g_coeffs: Sequence[float]) -> np.ndarray:
    m, n = len(f_coeffs) - 1, len(g_coeffs) - 1
    matrix = np.zeros((m + n, m + n))
    for row in range(n):
        matrix[row, row:row + m + 1] = f_coeffs
    for row in range(m):
        matrix[n + row, row:row + n + 1] = g_coeffs
    return matrix


def numeric_resultant(f: Poly, g: Poly, var, point: Dict) -> float:
    """
    Res_var(f, g) at a numeric point, as the Sylvester determinant.

    Args:
        f, g: polynomials containing var
        var: eliminated variable
        point: floats for the remaining generators; p defaults to pi
    """
    return float(np.linalg.det(sylvester_matrix(_float_coefficients(f, var, point),
                                                _float_coefficients(g, var, point))))


def evaluate_at(f: Poly, point: Dict) -> float:
    bindings = {P: math.pi, **point}
    return float(f.as_expr().subs({g: bindings[g] for g in f.gens}))


# === Agreement with an analysis ===

def _limit_checks(analysis) -> Tuple[int, int, float]:
    agreed = total = 0
    worst = 0.0
    for c in analysis.classifications:
        side = '-' if c.side == '-' else '+'
        for f, limit in ((analysis.curve.r, c.r_limit), (analysis.curve.theta, c.theta_limit)):
            if not limit.is_finite:
                continue
            expected = approx(limit.value)
            estimate = numeric_limit(f, c.t0, side)
            total += 1
            deviation = abs(estimate.value - expected) if not estimate.diverged else math.inf
            worst = max(worst, deviation)
            agreed += estimate.agrees_with(expected)
    return agreed, total, worst


def _distance(a: Tuple[float, float], b: Tuple[float, float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _distinct(points: Sequence[Tuple[float, float]], tolerance: float) -> List[Tuple[float, float]]:
    kept: List[Tuple[float, float]] = []
    for point in points:
        if all(_distance(point, other) >= tolerance for other in kept):
            kept.append(point)
    return kept


def certified_points(analysis, t_range: Tuple[float, float]) -> List[Tuple[float, float]]:
    """Cartesian points off the origin of certified solutions with both parameters in t_range."""
    lo, hi = t_range
    points = []
    for entry in analysis.selfint.systems:
        for pairs in entry.solutions.values():
            for pair in pairs:
                t, s = pair.approx()
                if not (lo <= t <= hi and lo <= s <= hi):
                    continue
                x, y = _cartesian(analysis.curve, np.array([t]))[0]
                if math.hypot(x, y) >= ORIGIN_RADIUS:
                    points.append((float(x), float(y)))
    return points


@dataclass(frozen=True)
class PointMatching:
    """One-to-one matching between distinct numeric and certified cartesian points."""
    numeric: List[Tuple[float, float]]
    certified: List[Tuple[float, float]]
    pairs: List[Tuple[int, int]]

    @property
    def unmatched_numeric(self) -> List[Tuple[float, float]]:
        used = {i for i, _ in self.pairs}
        return [p for i, p in enumerate(self.numeric) if i not in used]

    @property
    def unmatched_certified(self) -> List[Tuple[float, float]]:
        used = {j for _, j in self.pairs}
        return [q for j, q in enumerate(self.certified) if j not in used]

    @property
    def bijective(self) -> bool:
        return len(self.pairs) == len(self.numeric) == len(self.certified)


def match_points(numeric: Sequence[Tuple[float, float]], certified: Sequence[Tuple[float, float]],
                 tolerance: float = ORACLE_MATCH_TOLERANCE) -> PointMatching:
    """Greedy nearest-first matching; each point is used at most once on either side."""
    numeric, certified = _distinct(numeric, tolerance), _distinct(certified, tolerance)
    close = sorted(
        (_distance(p, q), i, j)
        for i, p in enumerate(numeric) for j, q in enumerate(certified)
        if _distance(p, q) < tolerance
    )
    used_numeric, used_certified, pairs = set(), set(), []
    for _, i, j in close:
        if i in used_numeric or j in used_certified:
            continue
        used_numeric.add(i)
        used_certified.add(j)
        pairs.append((i, j))
    return PointMatching(numeric, certified, sorted(pairs))


def match_self_intersections(analysis, t_range: Tuple[float, float] = (-50.0, 50.0), n: int = ORACLE_SAMPLES,
                             tau: float = ORACLE_TOLERANCE,
                             tolerance: float = ORACLE_MATCH_TOLERANCE) -> PointMatching:
    """Numeric self-intersections off the origin against the certified solutions, both on t_range."""
    numeric = [p.point for p in numeric_self_intersections(analysis.curve, t_range, n, tau) if not p.at_origin]
    matching = match_points(numeric, certified_points(analysis, t_range), tolerance)
    if not matching.bijective:
        logger.warning(f"Oracle mismatch on {analysis.curve}: "
                       f"{len(matching.unmatched_numeric)} numeric and "
                       f"{len(matching.unmatched_certified)} certified points unmatched")
    return matching


def verify(analysis, t_range: Tuple[float, float] = (-50.0, 50.0), n: int = ORACLE_SAMPLES,
           tau: float = ORACLE_TOLERANCE) -> List[str]:
    """Oracle agreement lines appended to the report by --verify."""
    agreed, total, worst = _limit_checks(analysis)
    lines = [f"Oracle: {agreed} of {total} limits agree (max deviation {worst:.3g})"]

    if analysis.selfint.infinite:
        lines.append("Oracle: self-intersection check skipped (infinitely many self-intersections)")
        return lines
    matching = match_self_intersections(analysis, t_range, n, tau)
    window = f"[{t_range[0]:g}, {t_range[1]:g}]"
    matched = len(matching.pairs)
    lines.append(f"Oracle: {matched} of {len(matching.numeric)} numeric self-intersections on {window} "
                 f"match certified solutions")
    lines.append(f"Oracle: {matched} of {len(matching.certified)} certified self-intersections on {window} "
                 f"have a numeric partner")
    for x, y in matching.unmatched_certified:
        lines.append(f"Oracle: certified self-intersection ({x:.9g}, {y:.9g}) has no numeric partner")
    for x, y in matching.unmatched_numeric:
        lines.append(f"Oracle: numeric self-intersection ({x:.9g}, {y:.9g}) matches no certified solution")
    return lines
