# === File: src/output/report.py ===

"""
Text and structured analysis reports.

The text report is one sentence per line, in the order of the case:

    both bounded          case, P_inf, self-intersections
    theta bounded         case, P_inf, self-intersections, asymptotes, markers
    r bounded             case, P_inf, limit circles, self-intersections, limit points, markers
    both unbounded        case, P_inf, limit circles, limit points, spirals, asymptotes,
                          self-intersections, markers
"""

from typing import List

from src.analysis.analyzer import CurveAnalysis
from src.analysis.features import Feature, FeatureKind, generators, same_parameter, WINDING_KINDS
from src.analysis.selfint import SolutionPair, SystemSolutions
from src.exact.intervals import to_rational
from src.exact.roots import approx, describe_real, is_infinite, RootBox
from src.planner.planner import CaseTag, Marker, PlotInterval
from src.schemas import (
    AnalysisReportSchema, ExactValue, FeatureSchema, IntervalSchema, KRangeSchema, MarkerSchema, OriginBlock,
    PInfinityBlock, SelfIntersectionBlock, SolutionSchema, SystemBlock,
)


# === Formatting ===

def format_real(value) -> str:
    """Short form for sentences: exact rationals, 10 digits for irrational algebraic values."""
    if is_infinite(value):
        return describe_real(value)
    if isinstance(value, RootBox) and value.exact is None:
        return f"{approx(value):.10g}"
    return describe_real(value)


def format_list(values, brackets: str = '[]') -> str:
    return brackets[0] + ', '.join(format_real(v) for v in values) + brackets[1]


def exact_value(value) -> ExactValue:
    return ExactValue(exact=describe_real(value), approx=None if is_infinite(value) else approx(value))


def _optional_value(value):
    return exact_value(value) if value is not None else None


# === Sentences ===

def _p_infinity_lines(analysis: CurveAnalysis) -> List[str]:
    p_inf, selfint = analysis.p_infinity, analysis.selfint
    origin = selfint.origin
    origin_line = (f"The origin is reached {len(origin.parameters)} times in R, "
                   f"so self-intersection at the origen")
    if not p_inf.exists:
        lines = ["There is no point at infinity"]
        if origin.is_self_intersection:
            lines.append(origin_line)
        return lines

    r_inf, theta_inf = p_inf.r_inf, p_inf.theta_inf
    if r_inf == 0:
        point = "[0, 0]"
    elif theta_inf == 0:
        point = f"[{r_inf}, 0]"
    else:
        factor = '' if r_inf == 1 else f"{r_inf}*"
        point = f"[{factor}cos({theta_inf}), {factor}sin({theta_inf})]"
    lines = [f"Real point at the infinity such that (r, theta)=[{r_inf}, {theta_inf}] and the point is {point}"]

    if p_inf.at_origin:
        reached = len(origin.parameters)
        sentence = f"The point at infinity (0,0) is reached {reached} times in R"
        if origin.is_self_intersection:
            sentence += ", so self-intersection at the origen"
        lines.append(sentence)
        return lines

    k0 = selfint.p_infinity.k0_count
    lines.append("Point at infinity is not reached with k=0" if k0 == 0
                 else f"Point at infinity is reached {k0} times with k=0")
    lines.append("Point at infinity is not reached with k<>0")
    if origin.is_self_intersection:
        lines.append(origin_line)
    return lines


def _system_lines(entry: SystemSolutions) -> List[str]:
    verified = entry.verified_range()
    if verified is None:
        return []
    if entry.is_contiguous():
        where = verified.describe()
    else:
        where = '[' + ', '.join(str(k) for k in entry.verified_ks) + ']'
    lines = [f"System ({entry.system}) gives self-intersections for k in {where}"]
    if not entry.capped and entry.candidates.values() != entry.verified_ks:
        lines.append(f"System ({entry.system}) candidate k in {entry.candidates.describe()}")
    return lines


def _close_lines(features: List[Feature]) -> List[str]:
    seen, lines = [], []
    for feature in features:
        if feature.kind not in WINDING_KINDS or not feature.close_selfint:
            continue
        if any(same_parameter(t0, feature.t0) for t0 in seen):
            continue
        seen.append(feature.t0)
        lines.append(f"t={format_real(feature.t0)} has infinitely many close self-intersections")
    return lines


def _selfint_lines(analysis: CurveAnalysis) -> List[str]:
    selfint = analysis.selfint
    if selfint.infinite:
        return ["There are infinitely many self-intersections"] + _close_lines(analysis.features)
    lines = []
    for entry in selfint.systems:
        lines += _system_lines(entry)
    return lines + _close_lines(analysis.features)


def _details(features: List[Feature], kind: FeatureKind) -> List[str]:
    lines = []
    for f in features:
        if f.kind == kind:
            text = f.describe()
            lines.append(text[0].upper() + text[1:])
    return lines


def _generator_lines(features: List[Feature], kind: FeatureKind, plural: str, none: str,
                     with_details: bool = False) -> List[str]:
    values = generators(features, kind)
    if not values:
        return [none]
    lines = [f"Values of t generating {plural} {format_list(values)}"]
    if with_details:
        lines += _details(features, kind)
    return lines


def _circles(features):
    return _generator_lines(features, FeatureKind.LIMIT_CIRCLE, 'limit circles', 'There are no limit circles', True)


def _points(features):
    return _generator_lines(features, FeatureKind.LIMIT_POINT, 'limit points', 'There are no limit points')


def _spirals(features):
    return _generator_lines(features, FeatureKind.SPIRAL_BRANCH, 'spiral branches', 'There are no spiral branches')


def _asymptotes(features):
    return _generator_lines(features, FeatureKind.ASYMPTOTE, 'asymptotes',
                            'There are not values of t generating asymptotes', True)


def _marker_lines(markers: List[Marker]) -> List[str]:
    if not markers:
        return []
    return [f"Values of t considered in the plot {format_list([m.value for m in markers], '{}')}"]


def report_lines(analysis: CurveAnalysis) -> List[str]:
    """Sentences of the text report."""
    case, features = analysis.case, analysis.features
    lines = [case.sentence] + _p_infinity_lines(analysis)
    if case == CaseTag.BOTH_BOUNDED:
        lines += _selfint_lines(analysis)
    elif case == CaseTag.THETA_BOUNDED_R_UNBOUNDED:
        lines += _selfint_lines(analysis) + _asymptotes(features)
    elif case == CaseTag.R_BOUNDED_THETA_UNBOUNDED:
        lines += _circles(features) + _selfint_lines(analysis) + _points(features)
    else:
        lines += _circles(features) + _points(features) + _spirals(features) + _asymptotes(features)
        lines += _selfint_lines(analysis)
    lines += _marker_lines(analysis.plan.markers)
    return lines + list(analysis.verification)


# === Structured report ===

def _solution(pair: SolutionPair) -> SolutionSchema:
    return SolutionSchema(system=pair.system, k=pair.k, t=exact_value(pair.t), s=exact_value(pair.s),
                          residual_r=pair.residual_r, residual_theta=pair.residual_theta)


def _system(entry: SystemSolutions) -> SystemBlock:
    candidates = entry.candidates
    return SystemBlock(
        system=entry.system,
        candidates=KRangeSchema(lo=candidates.lo, hi=candidates.hi, exclude_zero=candidates.exclude_zero),
        capped=entry.capped,
        verified_k=entry.verified_ks,
        solutions=[_solution(p) for k in sorted(entry.solutions) for p in entry.solutions[k]],
    )


def _feature(feature: Feature) -> FeatureSchema:
    return FeatureSchema(
        kind=feature.kind.value,
        t0=exact_value(feature.t0),
        side=feature.side,
        r0=_optional_value(feature.r0),
        r_sign=feature.r_sign,
        alpha=_optional_value(feature.alpha),
        delta=_optional_value(feature.delta),
        line=feature.line_text() or None,
        close_selfint=feature.close_selfint,
    )


def _interval(interval: PlotInterval) -> IntervalSchema:
    return IntervalSchema(
        lo=exact_value(interval.lo),
        hi=exact_value(interval.hi),
        color=interval.color.value,
        provenance=interval.provenance,
        bordered_lo=interval.bordered_lo,
        bordered_hi=interval.bordered_hi,
    )


def _p_infinity_block(analysis: CurveAnalysis) -> PInfinityBlock:
    p_inf = analysis.p_infinity
    if not p_inf.exists:
        return PInfinityBlock(exists=False)
    x, y = p_inf.cartesian
    reached = analysis.selfint.p_infinity
    return PInfinityBlock(
        exists=True,
        r_inf=str(p_inf.r_inf),
        theta_inf=str(p_inf.theta_inf),
        cartesian=[float(to_rational(x.midpoint)), float(to_rational(y.midpoint))],
        cartesian_enclosure=[[str(to_rational(x.lo)), str(to_rational(x.hi))],
                             [str(to_rational(y.lo)), str(to_rational(y.hi))]],
        at_origin=p_inf.at_origin,
        reached_k0=reached.k0_count,
        reached_k_nonzero=reached.k_nonzero_possible,
    )


def build_report(analysis: CurveAnalysis) -> AnalysisReportSchema:
    selfint = analysis.selfint
    origin = selfint.origin
    r_text, theta_text = analysis.curve.texts
    return AnalysisReportSchema(
        r=r_text,
        theta=theta_text,
        case=analysis.case.value,
        p_infinity=_p_infinity_block(analysis),
        origin=OriginBlock(
            parameters=[exact_value(v) for v in origin.parameters],
            p_infinity=origin.p_infinity,
            count=origin.count,
            self_intersection=origin.is_self_intersection,
        ),
        self_intersections=SelfIntersectionBlock(
            xi1=str(selfint.xi.xi1.as_expr()),
            xi2=str(selfint.xi.xi2.as_expr()),
            infinite=selfint.infinite,
            witness=selfint.witness,
            verdicts={f"xi{system}": verdict.tags for system, verdict in sorted(selfint.verdicts.items())},
            systems=[_system(entry) for entry in selfint.systems],
        ),
        features=[_feature(f) for f in analysis.features],
        markers=[MarkerSchema(value=exact_value(m.value), provenance=sorted(p.value for p in m.provenance))
                 for m in analysis.plan.markers],
        intervals=[_interval(i) for i in analysis.plan.intervals],
        dropped_intervals=[_interval(i) for i in analysis.plan.dropped],
        verification=list(analysis.verification),
        lines=report_lines(analysis),
    )


def render_text(analysis: CurveAnalysis) -> str:
    return '\n'.join(report_lines(analysis)) + '\n'
