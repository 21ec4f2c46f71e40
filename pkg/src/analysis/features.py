# === File: src/analysis/features.py ===

"""
Limit circles, limit points, spiral branches and asymptotes.

Every candidate parameter (real poles of r and theta, and +/-infinity when r or
theta is unbounded there) is classified from exact one-sided limits:

    lim theta = +/-inf, lim r = r0 != 0    limit circle r = |r0|
    lim theta = +/-inf, lim r = 0          limit point (the origin)
    lim theta = +/-inf, lim r = +/-inf     spiral branch
    lim theta = alpha,  lim r = +/-inf     asymptote when lim r (theta - alpha) = delta is finite

Limit circles are always centered at the origin and limit points are always
the origin, so nothing off-origin is ever searched for.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cmp_to_key
from typing import Dict, List, Optional

from sympy import Poly, Rational, oo

from src.analysis.kbounded import KBoundednessVerdict
from src.analysis.ratan import ExtendedValue, limit_at, one_sided_limits, vanishing_order, zeros_and_poles
from src.analysis.selfint import build_system_polys, close_selfintersections, k_verdicts, xi_curves
from src.curves.polar_curve import PolarCurve
from src.curves.rational_function import RationalFunction
from src.exact.algebraic import algebraic_value, sign_at_value
from src.exact.roots import Real, RootBox, compare_reals, describe_real, is_infinite, same_root
from src.logging_config import get_logger

logger = get_logger(__name__)

SIDES = ('-', '+')


class FeatureKind(str, Enum):
    LIMIT_CIRCLE = 'limit_circle'
    LIMIT_POINT = 'limit_point'
    SPIRAL_BRANCH = 'spiral_branch'
    ASYMPTOTE = 'asymptote'


WINDING_KINDS = (FeatureKind.LIMIT_CIRCLE, FeatureKind.LIMIT_POINT, FeatureKind.SPIRAL_BRANCH)


@dataclass
class Feature:
    """
    A feature generated by t0 in R U {+oo, -oo}.

    side is '-' or '+' when only that side of a finite t0 generates it, None
    for both sides (and always at +/-infinity).
    """
    kind: FeatureKind
    t0: object
    side: Optional[str] = None
    r0: Optional[Real] = None
    r_sign: Optional[int] = None
    alpha: Optional[Real] = None
    delta: Optional[Real] = None
    close_selfint: Optional[bool] = None

    def same_shape(self, other: 'Feature') -> bool:
        """Equal kind and parameters, ignoring side."""
        if self.kind != other.kind or self.r_sign != other.r_sign:
            return False
        for mine, theirs in ((self.r0, other.r0), (self.alpha, other.alpha), (self.delta, other.delta)):
            if (mine is None) != (theirs is None):
                return False
            if mine is not None and not same_root(mine, theirs):
                return False
        return True

    def line_text(self) -> str:
        """-x sin(alpha) + y cos(alpha) = delta"""
        if self.kind != FeatureKind.ASYMPTOTE:
            return ''
        alpha = describe_real(self.alpha)
        return f"-x*sin({alpha}) + y*cos({alpha}) = {describe_real(self.delta)}"

    def describe(self) -> str:
        where = describe_real(self.t0) + (f" ({self.side} side)" if self.side else '')
        if self.kind == FeatureKind.LIMIT_CIRCLE:
            return f"limit circle r = {describe_real(abs_real(self.r0))} generated by t = {where}"
        if self.kind == FeatureKind.LIMIT_POINT:
            return f"limit point (0, 0) generated by t = {where}"
        if self.kind == FeatureKind.SPIRAL_BRANCH:
            return f"spiral branch (r -> {'+' if self.r_sign > 0 else '-'}infinity) generated by t = {where}"
        return f"asymptote {self.line_text()} generated by t = {where}"


def abs_real(value: Real) -> Real:
    if compare_reals(value, Rational(0)) >= 0:
        return value
    if not isinstance(value, RootBox):
        return -Rational(value)
    var = value.var
    mirrored = Poly(value.polynomial.as_expr().subs(var, -var), *value.polynomial.gens, domain=value.polynomial.domain)
    exact = -value.exact if value.exact is not None else None
    return RootBox(mirrored, -value.upper, -value.lower, value.multiplicity, exact)


@dataclass
class Classification:
    """Outcome for one (t0, side): a feature, or None when certified featureless."""
    t0: object
    side: Optional[str]
    r_limit: ExtendedValue
    theta_limit: ExtendedValue
    feature: Optional[Feature]


# === Candidates ===

def _sort_key():
    return cmp_to_key(compare_reals)


def candidate_parameters(curve: PolarCurve) -> List[object]:
    """Real poles of theta and r, then -oo and +oo when r or theta is unbounded at infinity."""
    found: List[Real] = []
    for f in (curve.theta, curve.r):
        for box in zeros_and_poles(f).poles:
            value = box.exact if box.exact is not None else box
            if not any(same_root(value, other) for other in found):
                found.append(value)
    found.sort(key=_sort_key())
    (a, b), (c, d) = curve.r.degrees, curve.theta.degrees
    if a > b or c > d:
        found = [-oo] + found + [oo]
    return found


# === Asymptote distance ===

def _asymptote_delta_at_infinity(curve: PolarCurve, t0, alpha: Rational) -> Optional[Rational]:
    limit = limit_at(curve.r * (curve.theta - alpha), t0)
    return limit.value if limit.is_finite else None


def _asymptote_delta_at_pole(curve: PolarCurve, t0: Real) -> Optional[Real]:
    """
    m = pole order of r, q = first j >= 1 with theta^(j)(t0) != 0.

    delta = 0 if q > m, A(t0) theta^(m)(t0) / B^(m)(t0) if q = m; no asymptote if q < m.
    """
    m = vanishing_order(curve.B, t0)
    derivative = curve.theta
    for j in range(1, m + 1):
        derivative = derivative.derivative()
        if sign_at_value(derivative.numerator, t0) == 0:
            continue
        if j < m:
            return None
        b_m = curve.B
        for _ in range(m):
            b_m = b_m.diff()
        value = RationalFunction.from_polys(curve.A, b_m) * derivative
        return algebraic_value(value.numerator, value.denominator, t0)
    return Rational(0)


# === Classification ===

def _classify(curve: PolarCurve, t0, side: Optional[str], r_lim: ExtendedValue,
              theta_lim: ExtendedValue) -> Classification:
    feature = None
    if theta_lim.is_infinite:
        if r_lim.is_infinite:
            feature = Feature(FeatureKind.SPIRAL_BRANCH, t0, side, r_sign=r_lim.sign)
        elif r_lim.is_zero():
            feature = Feature(FeatureKind.LIMIT_POINT, t0, side, r0=Rational(0))
        else:
            feature = Feature(FeatureKind.LIMIT_CIRCLE, t0, side, r0=r_lim.value)
    elif theta_lim.is_finite and r_lim.is_infinite:
        alpha = theta_lim.value
        if is_infinite(t0):
            delta = _asymptote_delta_at_infinity(curve, t0, alpha)
        else:
            delta = _asymptote_delta_at_pole(curve, t0)
        if delta is not None:
            feature = Feature(FeatureKind.ASYMPTOTE, t0, side, alpha=alpha, delta=delta)
    return Classification(t0, side, r_lim, theta_lim, feature)


def classify_parameter(curve: PolarCurve, t0) -> List[Classification]:
    """
    Classify t0 per side; a single side-free entry when both sides agree.
    """
    if is_infinite(t0):
        return [_classify(curve, t0, None, limit_at(curve.r, t0), limit_at(curve.theta, t0))]
    r_sides = one_sided_limits(curve.r, t0)
    theta_sides = one_sided_limits(curve.theta, t0)
    per_side = [_classify(curve, t0, side, r_lim, th_lim)
                for side, r_lim, th_lim in zip(SIDES, r_sides, theta_sides)]
    left, right = (c.feature for c in per_side)
    if (left is None and right is None) or (left is not None and right is not None and left.same_shape(right)):
        merged = per_side[1]
        if merged.feature is not None:
            merged.feature.side = None
        merged.side = None
        return [merged]
    return per_side


def classify_candidates(curve: PolarCurve) -> List[Classification]:
    return [c for t0 in candidate_parameters(curve) for c in classify_parameter(curve, t0)]


def detect_features(curve: PolarCurve,
                    verdicts: Optional[Dict[int, KBoundednessVerdict]] = None) -> List[Feature]:
    """
    All features of the curve, ordered by t0.

    Args:
        curve: validated curve
        verdicts: k-boundedness verdicts of xi1 and xi2, computed when a
            winding feature needs its close self-intersection flag

    Returns:
        Features with close_selfint set for limit circles, limit points and spirals
    """
    features = [c.feature for c in classify_candidates(curve) if c.feature is not None]
    if verdicts is None and any(f.kind in WINDING_KINDS for f in features):
        verdicts = k_verdicts(xi_curves(build_system_polys(curve)))
    cache: List = []
    for feature in features:
        if feature.kind not in WINDING_KINDS:
            continue
        previous = next((f for f in cache if same_parameter(f.t0, feature.t0)), None)
        if previous is not None:
            feature.close_selfint = previous.close_selfint
            continue
        feature.close_selfint = close_selfintersections(curve, feature.t0, verdicts)
        cache.append(feature)
    for feature in features:
        logger.info(f"Feature: {feature.describe()}")
    return features


def detect_asymptotes(curve: PolarCurve) -> List[Feature]:
    """Asymptotes only; their lines are -x sin(alpha) + y cos(alpha) = delta."""
    return [c.feature for c in classify_candidates(curve)
            if c.feature is not None and c.feature.kind == FeatureKind.ASYMPTOTE]


def same_parameter(a, b) -> bool:
    if is_infinite(a) or is_infinite(b):
        return a == b
    return same_root(a, b)


def generators(features: List[Feature], kind: FeatureKind) -> List[object]:
    """Distinct t0 values generating the given kind, in order."""
    values: List[object] = []
    for f in features:
        if f.kind == kind and not any(same_parameter(v, f.t0) for v in values):
            values.append(f.t0)
    return values
