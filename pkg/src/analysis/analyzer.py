# === File: src/analysis/analyzer.py ===

"""
Full analysis of one curve: point at infinity, self-intersections, features
and the plot plan.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from config import CERTIFICATION_BITS, K_CAP, MAX_WORKERS, R_CAP, SAMPLING_BUDGET, THETA_CAP_PI_MULTIPLE
from src.analysis.features import Classification, Feature, classify_candidates, detect_features
from src.analysis.ratan import PInfinity, point_at_infinity
from src.analysis.selfint import SelfIntersectionReport, analyze_self_intersections
from src.curves.polar_curve import PolarCurve, parse_curve
from src.exceptions import PolaresError
from src.logging_config import get_logger
from src.planner.planner import CaseTag, PlotPlan, plan_plot

logger = get_logger(__name__)


@dataclass
class AnalysisOptions:
    """Knobs of one run; CLI flags and API fields override the config defaults."""
    k_cap: int = K_CAP
    r_cap: float = R_CAP
    theta_cap_multiple: int = THETA_CAP_PI_MULTIPLE
    certification_bits: int = CERTIFICATION_BITS
    budget: int = SAMPLING_BUDGET
    workers: int = MAX_WORKERS

    def cache_fields(self) -> Dict[str, Any]:
        """Options that change the report (workers does not)."""
        fields = asdict(self)
        fields.pop('workers')
        return fields


@dataclass
class CurveAnalysis:
    curve: PolarCurve
    options: AnalysisOptions
    case: CaseTag
    p_infinity: PInfinity
    selfint: SelfIntersectionReport
    features: List[Feature]
    classifications: List[Classification]
    plan: PlotPlan
    verification: List[str] = field(default_factory=list)


def analyze_curve(curve: PolarCurve, options: Optional[AnalysisOptions] = None) -> CurveAnalysis:
    options = options or AnalysisOptions()
    logger.info(f"Analyzing {curve}")
    try:
        p_inf = point_at_infinity(curve)
        selfint = analyze_self_intersections(curve, k_cap=options.k_cap, workers=options.workers,
                                             p_inf=p_inf, certification_bits=options.certification_bits)
        features = detect_features(curve, selfint.verdicts)
        classifications = classify_candidates(curve)
        plan = plan_plot(curve, features, p_inf, options.r_cap, options.theta_cap_multiple)
    except PolaresError as e:
        logger.error(f"Analysis of {curve} failed: {e}")
        raise
    return CurveAnalysis(
        curve=curve,
        options=options,
        case=plan.case,
        p_infinity=p_inf,
        selfint=selfint,
        features=features,
        classifications=classifications,
        plan=plan,
    )


def analyze(r_text: str, theta_text: str, options: Optional[AnalysisOptions] = None) -> CurveAnalysis:
    """Parse, validate and analyze (r, theta) given as text."""
    return analyze_curve(parse_curve(r_text, theta_text), options)
