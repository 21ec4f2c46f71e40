# === File: src/analysis/ratan.py ===

"""
Analysis of a single rational function f = N/D of t.

Limits at real points and at +/-infinity, boundedness on the real line,
global extrema, real zeros and poles, and the point at infinity of a curve.
Every decision is exact: parameters are Rationals or RootBoxes, and finite
limit values come back in the same representation.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from sympy import Poly, Rational, oo

from src.curves.polar_curve import PolarCurve
from src.curves.rational_function import RationalFunction
from src.exact.algebraic import algebraic_value, sign_at_value
from src.exact.intervals import RationalInterval
from src.exact.pi_enclosure import cos_sin_enclosure
from src.exact.roots import Real, RootBox, compare_reals, describe_real, is_infinite, isolate_real_roots
from src.exact.symbols import T
from src.exceptions import MisuseError
from src.logging_config import get_logger

logger = get_logger(__name__)


class LimitKind(str, Enum):
    FINITE = 'finite'
    POS_INF = '+inf'
    NEG_INF = '-inf'
    UNDEFINED = 'undefined'


@dataclass(frozen=True)
class ExtendedValue:
    """
    A limit value in R U {+inf, -inf}, or 'undefined' with both one-sided values.
    """
    kind: LimitKind
    value: Optional[Real] = None
    left: Optional['ExtendedValue'] = None
    right: Optional['ExtendedValue'] = None

    @classmethod
    def finite(cls, value: Real) -> 'ExtendedValue':
        return cls(LimitKind.FINITE, value)

    @classmethod
    def infinite(cls, sign: int) -> 'ExtendedValue':
        return cls(LimitKind.POS_INF if sign > 0 else LimitKind.NEG_INF)

    @classmethod
    def undefined(cls, left: 'ExtendedValue', right: 'ExtendedValue') -> 'ExtendedValue':
        return cls(LimitKind.UNDEFINED, left=left, right=right)

    @property
    def is_finite(self) -> bool:
        return self.kind == LimitKind.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind in (LimitKind.POS_INF, LimitKind.NEG_INF)

    @property
    def sign(self) -> int:
        """Sign of an infinite value, or of a finite one."""
        if self.kind == LimitKind.POS_INF:
            return 1
        if self.kind == LimitKind.NEG_INF:
            return -1
        if self.kind == LimitKind.FINITE:
            return compare_reals(self.value, Rational(0))
        raise MisuseError("Undefined limit has no sign")

    def is_zero(self) -> bool:
        return self.is_finite and self.sign == 0

    def describe(self) -> str:
        if self.kind == LimitKind.FINITE:
            return describe_real(self.value)
        if self.kind == LimitKind.UNDEFINED:
            return f"undefined (left {self.left.describe()}, right {self.right.describe()})"
        return 'infinity' if self.kind == LimitKind.POS_INF else '-infinity'

    def __str__(self) -> str:
        return self.describe()


# === Local behavior ===

def _nth_derivative(f: Poly, n: int) -> Poly:
    for _ in range(n):
        f = f.diff(T)
    return f


def vanishing_order(f: Poly, t0: Real) -> int:
    """Multiplicity of t0 as a root of f (0 when f(t0) != 0)."""
    if f.is_zero:
        raise MisuseError("The zero polynomial vanishes to infinite order")
    order = 0
    while sign_at_value(f, t0) == 0:
        order += 1
        f = f.diff(T)
    return order


def _limit_at_infinity(f: RationalFunction, sign: int) -> ExtendedValue:
    n, m = f.degrees
    if n < m:
        return ExtendedValue.finite(Rational(0))
    lead = Rational(f.numerator.LC()) / Rational(f.denominator.LC())
    if n == m:
        return ExtendedValue.finite(lead)
    direction = 1 if lead > 0 else -1
    if sign < 0 and (n - m) % 2 == 1:
        direction = -direction
    return ExtendedValue.infinite(direction)


def one_sided_limits(f: RationalFunction, t0: Real) -> Tuple[ExtendedValue, ExtendedValue]:
    """
    (limit from the left, limit from the right) at a real t0.

    Near a pole of order m, D(t) ~ D^(m)(t0)/m! (t - t0)^m and N(t0) != 0, so
    the right-hand sign is sign(N(t0)) * sign(D^(m)(t0)) and the left-hand one
    picks up (-1)^m.
    """
    order = vanishing_order(f.denominator, t0)
    if order == 0:
        value = ExtendedValue.finite(algebraic_value(f.numerator, f.denominator, t0))
        return value, value
    right = sign_at_value(f.numerator, t0) * sign_at_value(_nth_derivative(f.denominator, order), t0)
    left = right if order % 2 == 0 else -right
    return ExtendedValue.infinite(left), ExtendedValue.infinite(right)


def limit_at(f: RationalFunction, t0, side: Optional[str] = None) -> ExtendedValue:
    """
    Exact limit of f at t0 in R U {+oo, -oo}.

    Args:
        f: rational function of t
        t0: Rational, RootBox, or sympy oo / -oo
        side: '-' or '+' for a one-sided limit at a real t0

    Returns:
        ExtendedValue; 'undefined' only at odd-order poles without a side, and
        then carrying both one-sided infinities
    """
    if is_infinite(t0):
        return _limit_at_infinity(f, 1 if t0 == oo else -1)
    left, right = one_sided_limits(f, t0)
    if side == '-':
        return left
    if side == '+':
        return right
    if left == right:
        return left
    return ExtendedValue.undefined(left, right)


# === Global behavior ===

def bounded_on_reals(f: RationalFunction) -> bool:
    """True iff f has no real pole and deg N <= deg D."""
    n, m = f.degrees
    if n > m:
        return False
    if m == 0:
        return True
    return not isolate_real_roots(f.denominator, T)


@dataclass
class Extrema:
    """
    Global infimum and supremum of a bounded f over R, including the limit at infinity.

    *_at list the critical points where the value is attained; *_at_infinity
    says whether the limit at +/-infinity equals it.
    """
    inf: ExtendedValue
    sup: ExtendedValue
    inf_at: List[Real] = field(default_factory=list)
    sup_at: List[Real] = field(default_factory=list)
    inf_at_infinity: bool = False
    sup_at_infinity: bool = False


def critical_points(f: RationalFunction) -> List[RootBox]:
    numerator = f.derivative().numerator
    if numerator.is_zero or numerator.degree() <= 0:
        return []
    return isolate_real_roots(numerator, T)


def global_extrema(f: RationalFunction) -> Extrema:
    """
    Exact sup and inf of a bounded rational function over R.

    Raises:
        MisuseError: f is unbounded on R
    """
    if not bounded_on_reals(f):
        raise MisuseError(f"global_extrema needs a bounded function, got {f}")
    at_infinity = _limit_at_infinity(f, 1).value
    candidates = [(algebraic_value(f.numerator, f.denominator, c), c) for c in critical_points(f)]

    values = [at_infinity] + [v for v, _ in candidates]
    sup = inf = values[0]
    for v in values[1:]:
        if compare_reals(v, sup) > 0:
            sup = v
        if compare_reals(v, inf) < 0:
            inf = v

    return Extrema(
        inf=ExtendedValue.finite(inf),
        sup=ExtendedValue.finite(sup),
        inf_at=[c for v, c in candidates if compare_reals(v, inf) == 0],
        sup_at=[c for v, c in candidates if compare_reals(v, sup) == 0],
        inf_at_infinity=compare_reals(at_infinity, inf) == 0,
        sup_at_infinity=compare_reals(at_infinity, sup) == 0,
    )


@dataclass
class ZerosAndPoles:
    zeros: List[RootBox]
    poles: List[RootBox]


def zeros_and_poles(f: RationalFunction) -> ZerosAndPoles:
    """Real roots of the numerator and of the denominator, with multiplicities."""
    zeros = isolate_real_roots(f.numerator, T) if f.numerator.degree() > 0 else []
    poles = isolate_real_roots(f.denominator, T) if f.denominator.degree() > 0 else []
    return ZerosAndPoles(zeros, poles)


# === Point at infinity ===

@dataclass
class PInfinity:
    """
    P_inf = lim phi(t) for t -> +/-infinity, when both limits are finite.

    cartesian holds certified enclosures of (r_inf cos theta_inf, r_inf sin theta_inf).
    """
    exists: bool
    r_inf: Optional[Rational] = None
    theta_inf: Optional[Rational] = None
    cartesian: Optional[Tuple[RationalInterval, RationalInterval]] = None

    @property
    def at_origin(self) -> bool:
        return self.exists and self.r_inf == 0


def point_at_infinity(curve: PolarCurve) -> PInfinity:
    """
    Degree criterion: P_inf exists iff deg A <= deg B and deg C <= deg D.

    For rational functions the finite limits at +infinity and -infinity agree,
    so one limit per component suffices.
    """
    if not (bounded_at_infinity(curve.r) and bounded_at_infinity(curve.theta)):
        return PInfinity(exists=False)
    r_inf = _limit_at_infinity(curve.r, 1).value
    theta_inf = _limit_at_infinity(curve.theta, 1).value
    if r_inf == 0:
        zero = RationalInterval.point(0)
        cartesian = (zero, zero)
    else:
        cos_box, sin_box = cos_sin_enclosure(theta_inf)
        cartesian = (cos_box * r_inf, sin_box * r_inf)
    logger.info(f"Point at infinity (r, theta) = ({r_inf}, {theta_inf})")
    return PInfinity(True, Rational(r_inf), Rational(theta_inf), cartesian)


def bounded_at_infinity(f: RationalFunction) -> bool:
    n, m = f.degrees
    return n <= m
