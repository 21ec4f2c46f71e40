# === File: src/schemas.py ===

from pydantic import BaseModel, Field
from typing import Optional, Dict, List
from datetime import datetime

# === Base Schemas ===

class HealthResponse(BaseModel):
    """Schema for health check endpoint response."""
    status: str = Field(default="ok", description="Service status")
    timestamp: datetime = Field(default_factory=datetime.now, description="Response timestamp")
    database_connected: bool = Field(description="Database connection status")

# === Exact Values ===

class ExactValue(BaseModel):
    """An exact real (or +/-infinity) with a float approximation."""
    exact: str = Field(..., description="'5', '-1/2', 'infinity' or 'root of ... in (a, b)'")
    approx: Optional[float] = Field(None, description="Float approximation; null for +/-infinity")

class KRangeSchema(BaseModel):
    """Integer range lo..hi, optionally without 0."""
    lo: int
    hi: int
    exclude_zero: bool = False

# === Report Blocks ===

class PInfinityBlock(BaseModel):
    """Point at infinity and whether real parameters reach it."""
    exists: bool
    r_inf: Optional[str] = None
    theta_inf: Optional[str] = None
    cartesian: Optional[List[float]] = Field(None, description="Midpoints of the certified enclosures")
    cartesian_enclosure: Optional[List[List[str]]] = Field(None, description="[[x_lo, x_hi], [y_lo, y_hi]]")
    at_origin: bool = False
    reached_k0: Optional[int] = Field(None, description="Real parameters reaching it with k = 0")
    reached_k_nonzero: Optional[bool] = None

class OriginBlock(BaseModel):
    """Real parameters reaching the origin."""
    parameters: List[ExactValue]
    p_infinity: bool = Field(..., description="The point at infinity is the origin")
    count: int
    self_intersection: bool

class SolutionSchema(BaseModel):
    """Certified solution (t, s) of system (1) or (2)."""
    system: int
    k: int
    t: ExactValue
    s: ExactValue
    residual_r: float
    residual_theta: float

class SystemBlock(BaseModel):
    """Candidate and verified k of one system."""
    system: int
    candidates: KRangeSchema
    capped: bool = Field(..., description="Infinite family: only |k| <= k_cap was solved")
    verified_k: List[int]
    solutions: List[SolutionSchema]

class SelfIntersectionBlock(BaseModel):
    """xi curves, finiteness verdict and solutions per system."""
    xi1: str
    xi2: str
    infinite: bool
    witness: Optional[str] = None
    verdicts: Dict[str, List[str]]
    systems: List[SystemBlock]

class FeatureSchema(BaseModel):
    """Limit circle, limit point, spiral branch or asymptote."""
    kind: str
    t0: ExactValue
    side: Optional[str] = None
    r0: Optional[ExactValue] = None
    r_sign: Optional[int] = None
    alpha: Optional[ExactValue] = None
    delta: Optional[ExactValue] = None
    line: Optional[str] = None
    close_selfint: Optional[bool] = None

class MarkerSchema(BaseModel):
    value: ExactValue
    provenance: List[str]

class IntervalSchema(BaseModel):
    lo: ExactValue
    hi: ExactValue
    color: str
    provenance: List[str]
    bordered_lo: bool = False
    bordered_hi: bool = False

# === Analysis Report ===

class AnalysisReportSchema(BaseModel):
    """
    JSON analysis report. Field order is fixed, so dumps are byte-stable.
    """
    r: str
    theta: str
    case: str
    p_infinity: PInfinityBlock
    origin: OriginBlock
    self_intersections: SelfIntersectionBlock
    features: List[FeatureSchema]
    markers: List[MarkerSchema]
    intervals: List[IntervalSchema]
    dropped_intervals: List[IntervalSchema] = Field(default_factory=list)
    verification: List[str] = Field(default_factory=list)
    lines: List[str] = Field(..., description="Text report, one sentence per line")

# === API Schemas ===

class AnalyzeRequest(BaseModel):
    """Schema for an analysis request."""
    r: str = Field(..., description="Rational expression for r(t)", examples=["t^2/(t^2-11*t+30)"])
    theta: str = Field(..., description="Rational expression for theta(t)", examples=["(t^2+78)/(t^2+1)"])
    k_cap: Optional[int] = Field(None, ge=1, description="|k| bound solved for infinite families")
    r_cap: Optional[float] = Field(None, gt=0, description="Plot cap on |r|")
    theta_cap: Optional[int] = Field(None, gt=0, description="Plot cap on |theta| as a multiple of pi")

class AnalyzeResponse(BaseModel):
    """Schema for an analysis response."""
    report: AnalysisReportSchema
    text: str = Field(..., description="Text report")
    cached: bool = Field(False, description="Whether the report came from the cache")

