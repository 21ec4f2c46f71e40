# === File: src/planner/planner.py ===

"""
Plot planning: case from the boundedness of r and theta, marker parameters,
colored windows around them, and certified cuts near features.

Windows around a finite marker t_i run from the midpoint with the previous
marker to t_i (red) and from t_i to the midpoint with the next one (blue). The
outermost markers mirror their inner half-window, or use half-windows of width
10 when both +oo and -oo generate features. Neutral tails continue outwards.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cmp_to_key
from typing import FrozenSet, List, Optional, Tuple

from sympy import Poly, QQ, Rational, oo

from config import R_CAP, THETA_CAP_PI_MULTIPLE
from src.analysis.features import Feature, FeatureKind, abs_real, generators, same_parameter
from src.analysis.ratan import PInfinity, bounded_on_reals, global_extrema, zeros_and_poles
from src.curves.polar_curve import PolarCurve
from src.exact.intervals import to_rational
from src.exact.pi_enclosure import pi_enclosure
from src.exact.roots import (
    Real, RootBox, approx, compare_reals, describe_real, enclosure, is_infinite, isolate_real_roots, sign_at,
)
from src.exact.symbols import P, T, in_var
from src.exceptions import MisuseError
from src.logging_config import get_logger

logger = get_logger(__name__)

WINDOW = Rational(10)
MARKER_WIDTH = QQ(1, 2 ** 20)


class CaseTag(str, Enum):
    BOTH_BOUNDED = 'both_bounded'
    THETA_BOUNDED_R_UNBOUNDED = 'theta_bounded_r_unbounded'
    R_BOUNDED_THETA_UNBOUNDED = 'r_bounded_theta_unbounded'
    BOTH_UNBOUNDED = 'both_unbounded'

    @property
    def sentence(self) -> str:
        return {
            CaseTag.BOTH_BOUNDED: 'r and theta both bounded',
            CaseTag.THETA_BOUNDED_R_UNBOUNDED: 'r unbounded and theta bounded',
            CaseTag.R_BOUNDED_THETA_UNBOUNDED: 'r bounded and theta unbounded',
            CaseTag.BOTH_UNBOUNDED: 'r and theta both unbounded',
        }[self]


class Provenance(str, Enum):
    ASYMPTOTE = 'asymptote'
    LIMIT_CIRCLE = 'limit_circle'
    LIMIT_POINT = 'limit_point'
    SPIRAL_BRANCH = 'spiral_branch'
    R_ZERO = 'r_zero'
    THETA_EXTREMUM = 'theta_extremum'
    R_MAXIMUM = 'r_maximum'
    P_INFINITY = 'p_infinity'


BORDERED = frozenset({Provenance.ASYMPTOTE, Provenance.LIMIT_CIRCLE, Provenance.SPIRAL_BRANCH})


class IntervalColor(str, Enum):
    RED = 'red'
    BLUE = 'blue'
    NEUTRAL = 'neutral'


@dataclass(frozen=True)
class Marker:
    value: object
    provenance: FrozenSet[Provenance]

    @property
    def is_infinite(self) -> bool:
        return is_infinite(self.value)

    @property
    def bordered(self) -> bool:
        return bool(self.provenance & BORDERED)

    def describe(self) -> str:
        return describe_real(self.value)


@dataclass
class PlotInterval:
    """
    Open parameter range (lo, hi). Both ends infinite means the whole real
    line, sampled through t = tau / (1 - tau^2).
    """
    lo: object
    hi: object
    color: IntervalColor
    lo_marker: Optional[Marker] = None
    hi_marker: Optional[Marker] = None
    bordered_lo: bool = False
    bordered_hi: bool = False

    @property
    def compactified(self) -> bool:
        return is_infinite(self.lo) and is_infinite(self.hi)

    @property
    def bounds(self) -> Tuple[float, float]:
        return _as_float(self.lo), _as_float(self.hi)

    @property
    def provenance(self) -> List[str]:
        found = set()
        for marker in (self.lo_marker, self.hi_marker):
            if marker is not None:
                found |= {p.value for p in marker.provenance}
        return sorted(found)


@dataclass
class PlotPlan:
    case: CaseTag
    markers: List[Marker]
    intervals: List[PlotInterval]
    dropped: List[PlotInterval] = field(default_factory=list)


def _as_float(value) -> float:
    if is_infinite(value):
        return float('inf') if value == oo else float('-inf')
    return approx(value)


# === Case and markers ===

def classify_case(curve: PolarCurve) -> CaseTag:
    r_bounded, theta_bounded = bounded_on_reals(curve.r), bounded_on_reals(curve.theta)
    if r_bounded and theta_bounded:
        return CaseTag.BOTH_BOUNDED
    if theta_bounded:
        return CaseTag.THETA_BOUNDED_R_UNBOUNDED
    if r_bounded:
        return CaseTag.R_BOUNDED_THETA_UNBOUNDED
    return CaseTag.BOTH_UNBOUNDED


def _real(box: RootBox) -> Real:
    return box.exact if box.exact is not None else box


def _strictly_within_two_pi(value: Real) -> bool:
    """Certified |value| < 2 pi."""
    precision = 128
    while True:
        iv = enclosure(abs_real(value))
        two_pi = pi_enclosure(precision).interval * 2
        if iv.hi < two_pi.lo:
            return True
        if iv.lo > two_pi.hi:
            return False
        if isinstance(value, RootBox):
            value = value.refine()
        precision *= 2


def _theta_extremum_generators(curve: PolarCurve) -> List[Real]:
    extrema = global_extrema(curve.theta)
    if not (_strictly_within_two_pi(extrema.sup.value) and _strictly_within_two_pi(extrema.inf.value)):
        return []
    return [_real(b) for b in extrema.inf_at + extrema.sup_at]


def _r_maximum_generators(curve: PolarCurve) -> List[Real]:
    """Parameters where |r| attains its global maximum; none when it is only approached at infinity."""
    extrema = global_extrema(curve.r)
    order = compare_reals(abs_real(extrema.sup.value), abs_real(extrema.inf.value))
    found = []
    if order >= 0:
        found += extrema.sup_at
    if order <= 0:
        found += extrema.inf_at
    return [_real(b) for b in found]


def _merge(entries: List[Tuple[object, Provenance]]) -> List[Marker]:
    merged: List[Tuple[object, set]] = []
    for value, provenance in entries:
        for existing, tags in merged:
            if same_parameter(existing, value):
                tags.add(provenance)
                break
        else:
            merged.append((value, {provenance}))
    merged.sort(key=cmp_to_key(lambda a, b: compare_reals(a[0], b[0])))
    return [Marker(value, frozenset(tags)) for value, tags in merged]


def marker_set(curve: PolarCurve, features: List[Feature], case: CaseTag,
               p_inf: Optional[PInfinity] = None) -> List[Marker]:
    """
    Sorted markers with provenance for cases 2-4.

    case 2: asymptote generators, zeros of r, theta-extremum generators when |theta| < 2 pi
    case 3: limit circle and limit point generators, zeros of r, argmax |r|
    case 4: limit circle, limit point, spiral and asymptote generators, zeros of r

    +oo and -oo are added with provenance p_infinity when the point at infinity exists.

    Raises:
        MisuseError: case both_bounded, which has no markers
    """
    if case == CaseTag.BOTH_BOUNDED:
        raise MisuseError("Both components bounded: the curve is plotted over R without markers")
    entries: List[Tuple[object, Provenance]] = []

    def add(kind: FeatureKind, provenance: Provenance):
        entries.extend((t0, provenance) for t0 in generators(features, kind))

    if case == CaseTag.THETA_BOUNDED_R_UNBOUNDED:
        add(FeatureKind.ASYMPTOTE, Provenance.ASYMPTOTE)
    else:
        add(FeatureKind.LIMIT_CIRCLE, Provenance.LIMIT_CIRCLE)
        add(FeatureKind.LIMIT_POINT, Provenance.LIMIT_POINT)
    if case == CaseTag.BOTH_UNBOUNDED:
        add(FeatureKind.SPIRAL_BRANCH, Provenance.SPIRAL_BRANCH)
        add(FeatureKind.ASYMPTOTE, Provenance.ASYMPTOTE)

    entries += [(_real(z), Provenance.R_ZERO) for z in zeros_and_poles(curve.r).zeros]
    if case == CaseTag.THETA_BOUNDED_R_UNBOUNDED:
        entries += [(t, Provenance.THETA_EXTREMUM) for t in _theta_extremum_generators(curve)]
    if case == CaseTag.R_BOUNDED_THETA_UNBOUNDED:
        entries += [(t, Provenance.R_MAXIMUM) for t in _r_maximum_generators(curve)]
    if p_inf is not None and p_inf.exists:
        entries += [(-oo, Provenance.P_INFINITY), (oo, Provenance.P_INFINITY)]
    return _merge(entries)


# === Windows ===

def _refined(value):
    return value.refine(MARKER_WIDTH) if isinstance(value, RootBox) else value


def _between(a, b) -> Rational:
    """A rational strictly between reals a < b, their midpoint when both are rational."""
    while True:
        ia, ib = enclosure(a), enclosure(b)
        if ia.hi < ib.lo:
            return to_rational((ia.hi + ib.lo) / 2)
        a = a.refine() if isinstance(a, RootBox) else a
        b = b.refine() if isinstance(b, RootBox) else b


def _lower(value) -> Rational:
    return to_rational(enclosure(value).lo)


def _upper(value) -> Rational:
    return to_rational(enclosure(value).hi)


def _has_feature_at(markers: List[Marker], value) -> bool:
    return any(m.value == value and m.provenance - {Provenance.P_INFINITY} for m in markers)


def build_intervals(markers: List[Marker]) -> List[PlotInterval]:
    """
    Red/blue windows around every finite marker, plus neutral tails.

    Returns:
        Disjoint intervals in increasing order; a single neutral (-10, 10)
        when no marker is finite
    """
    finite = [m for m in markers if not m.is_infinite]
    if not finite:
        return [PlotInterval(-WINDOW, WINDOW, IntervalColor.NEUTRAL)]
    two_sided = _has_feature_at(markers, oo) and _has_feature_at(markers, -oo)
    values = [_refined(m.value) for m in finite]
    last = len(values) - 1

    windows: List[PlotInterval] = []
    for i, (marker, t) in enumerate(zip(finite, values)):
        if i > 0:
            left = _between(values[i - 1], t)
        elif last == 0 or two_sided:
            left = _lower(t) - WINDOW
        else:
            left = 2 * _lower(t) - _between(t, values[1])
        if i < last:
            right = _between(t, values[i + 1])
        elif last == 0 or two_sided:
            right = _upper(t) + WINDOW
        else:
            right = 2 * _upper(t) - _between(values[i - 1], t)
        windows.append(PlotInterval(left, marker.value, IntervalColor.RED, hi_marker=marker))
        windows.append(PlotInterval(marker.value, right, IntervalColor.BLUE, lo_marker=marker))

    first, final = windows[0], windows[-1]
    left_width = _lower(first.hi) - first.lo
    right_width = final.hi - _upper(final.lo)
    tails = (
        PlotInterval(first.lo - left_width, first.lo, IntervalColor.NEUTRAL),
        PlotInterval(final.hi, final.hi + right_width, IntervalColor.NEUTRAL),
    )
    return [tails[0]] + windows + [tails[1]]


# === Certified cuts ===

def cap_polynomials(curve: PolarCurve, r_cap, theta_cap_multiple) -> Tuple[Poly, Poly]:
    """A^2 - r_cap^2 B^2 and C^2 - (m p)^2 D^2: nonpositive exactly where |r| <= r_cap, |theta| <= m pi."""
    r_cap = Rational(r_cap)
    m = Rational(theta_cap_multiple)
    r_poly = in_var(curve.A ** 2 - curve.B ** 2 * r_cap ** 2, T)
    theta_expr = curve.C.as_expr() ** 2 - (m * P) ** 2 * curve.D.as_expr() ** 2
    return r_poly, Poly(theta_expr, T, P, domain=QQ)


def _within_caps(caps: Tuple[Poly, Poly], q) -> bool:
    return all(sign_at(c, q) <= 0 for c in caps)


def _segments(caps: Tuple[Poly, Poly], lo, hi) -> List[Tuple[object, object]]:
    """Split (lo, hi) at the roots of the cap polynomials lying strictly inside."""
    product = caps[0] * caps[1]
    cuts = []
    boxes = isolate_real_roots(product, T) if product.degree(T) > 0 else []
    for box in boxes:
        value = _real(box)
        if compare_reals(value, lo) > 0 and compare_reals(value, hi) < 0:
            cuts.append(value)
    points = [lo] + cuts + [hi]
    return list(zip(points[:-1], points[1:]))


def _inside(cut, neighbour, toward_hi: bool) -> Rational:
    """A rational within 2^-30 of cut, on the side of neighbour."""
    if not isinstance(cut, RootBox):
        cut = RootBox(Poly(T - cut, T, P, domain=QQ), to_rational(cut) - 1, to_rational(cut) + 1, 1, Rational(cut))
    box = cut.refine(QQ(1, 2 ** 30))
    while True:
        candidate = to_rational(box.upper if toward_hi else box.lower)
        if compare_reals(candidate, neighbour) * (1 if toward_hi else -1) < 0:
            return candidate
        box = box.refine()


def _border(interval: PlotInterval, caps: Tuple[Poly, Poly]) -> Optional[PlotInterval]:
    segments = _segments(caps, interval.lo, interval.hi)
    if interval.bordered_lo and not interval.bordered_hi:
        chosen = [segments[-1]]
    elif interval.bordered_hi and not interval.bordered_lo:
        chosen = [segments[0]]
    else:
        chosen = segments
    for lo, hi in chosen:
        if not _within_caps(caps, _between(lo, hi)):
            continue
        new_lo = _inside(lo, hi, True) if interval.bordered_lo else interval.lo
        new_hi = _inside(hi, lo, False) if interval.bordered_hi else interval.hi
        return replace(interval, lo=new_lo, hi=new_hi)
    return None


def border_margins(plan: PlotPlan, curve: PolarCurve, r_cap=R_CAP,
                   theta_cap_multiple=THETA_CAP_PI_MULTIPLE) -> PlotPlan:
    """
    Cut every window end at an asymptote, limit circle or spiral generator so
    that |r| <= r_cap and |theta| <= theta_cap_multiple * pi hold on the whole
    retained range. The opposite end never moves; a window with no valid
    retained range is dropped with a warning.
    """
    if r_cap <= 0 or theta_cap_multiple <= 0:
        raise MisuseError("Caps must be positive")
    caps = cap_polynomials(curve, r_cap, theta_cap_multiple)
    kept, dropped = [], list(plan.dropped)
    for interval in plan.intervals:
        bordered_lo = interval.lo_marker is not None and interval.lo_marker.bordered
        bordered_hi = interval.hi_marker is not None and interval.hi_marker.bordered
        if not (bordered_lo or bordered_hi):
            kept.append(interval)
            continue
        candidate = replace(interval, bordered_lo=bordered_lo, bordered_hi=bordered_hi)
        result = _border(candidate, caps)
        if result is None:
            logger.warning(f"Degenerate interval ({describe_real(interval.lo)}, {describe_real(interval.hi)}) "
                           f"dropped: no range within r_cap={r_cap}, theta_cap={theta_cap_multiple}*pi")
            dropped.append(interval)
        else:
            kept.append(result)
    return replace(plan, intervals=kept, dropped=dropped)


# === Whole plan ===

def plan_plot(curve: PolarCurve, features: List[Feature], p_inf: Optional[PInfinity] = None,
              r_cap=R_CAP, theta_cap_multiple=THETA_CAP_PI_MULTIPLE) -> PlotPlan:
    """
    Case, markers and bordered windows. Both components bounded, or theta
    bounded without asymptotes, plots the whole real line.
    """
    case = classify_case(curve)
    whole_line = PlotPlan(case, [], [PlotInterval(-oo, oo, IntervalColor.NEUTRAL)])
    if case == CaseTag.BOTH_BOUNDED:
        plan = whole_line
    elif case == CaseTag.THETA_BOUNDED_R_UNBOUNDED and not generators(features, FeatureKind.ASYMPTOTE):
        plan = whole_line
    else:
        markers = marker_set(curve, features, case, p_inf)
        plan = border_margins(PlotPlan(case, markers, build_intervals(markers)), curve, r_cap, theta_cap_multiple)
    logger.info(f"Plot plan: {case.value}, markers {[m.describe() for m in plan.markers]}, "
                f"{len(plan.intervals)} intervals")
    return plan
