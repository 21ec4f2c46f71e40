# === File: src/exact/pi_enclosure.py ===

"""
Rational enclosures of pi and certified signs of elements of Q[p] at p = pi.

A nonzero element of Q[pi] never vanishes because pi is transcendental, so
doubling the precision until the enclosure excludes zero always terminates.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Sequence, Tuple

from mpmath.libmp import from_rational, mpf_pi, round_ceiling, round_floor, to_rational
from mpmath.libmp.libmpi import mpi_cos_sin
from sympy import QQ, Rational

from config import PI_PRECISION_BITS, DISPLAY_PRECISION_BITS
from src.exact.intervals import RationalInterval, to_qq
from src.exceptions import TheoremViolation
from src.logging_config import get_logger

logger = get_logger(__name__)

MAX_PI_PRECISION_BITS = 1 << 16


@dataclass(frozen=True)
class PiEnclosure:
    """Rational bracket lower <= pi <= upper of width at most 2**(1 - precision)."""
    precision: int
    lower: Any
    upper: Any

    @property
    def interval(self) -> RationalInterval:
        return RationalInterval(self.lower, self.upper)

    def refined(self) -> 'PiEnclosure':
        return pi_enclosure(self.precision * 2)


@lru_cache(maxsize=32)
def pi_enclosure(precision: int = PI_PRECISION_BITS) -> PiEnclosure:
    """
    Enclose pi between two rationals.

    Args:
        precision: bit precision; the bracket width is at most 2**(1 - precision)

    Returns:
        PiEnclosure with 3 < lower <= pi <= upper < 4
    """
    # Two guard bits: pi has two integer bits, so one ulp at precision + 2 is 2**-precision
    lo_p, lo_q = to_rational(mpf_pi(precision + 2, round_floor))
    hi_p, hi_q = to_rational(mpf_pi(precision + 2, round_ceiling))
    return PiEnclosure(precision, QQ(lo_p, lo_q), QQ(hi_p, hi_q))


def enclose_at_pi(coeffs: Sequence[Any], pi: PiEnclosure) -> RationalInterval:
    """
    Enclose c_0 + c_1 pi + ... + c_n pi^n.

    Both endpoints of the pi bracket are positive, so each term is monotone in p
    and the enclosure is exact term by term.
    """
    lower = upper = QQ(0)
    lo_power = hi_power = QQ(1)
    for c in coeffs:
        if c > 0:
            lower += c * lo_power
            upper += c * hi_power
        elif c < 0:
            lower += c * hi_power
            upper += c * lo_power
        lo_power *= pi.lower
        hi_power *= pi.upper
    return RationalInterval(lower, upper)


def sign_at_pi(coeffs: Sequence[Any], precision: int = PI_PRECISION_BITS) -> int:
    """
    Certified sign of an element of Q[p] evaluated at pi.

    Args:
        coeffs: coefficients in increasing powers of p (QQ elements)
        precision: starting precision of the pi enclosure

    Returns:
        -1, 0 or 1; zero only for the zero element
    """
    if all(c == 0 for c in coeffs):
        return 0
    nonzero = [i for i, c in enumerate(coeffs) if c != 0]
    if len(nonzero) == 1:
        return 1 if coeffs[nonzero[0]] > 0 else -1
    while precision <= MAX_PI_PRECISION_BITS:
        sign = enclose_at_pi(coeffs, pi_enclosure(precision)).sign()
        if sign:
            return sign
        precision *= 2
        logger.debug(f"Raising pi precision to {precision} bits")
    raise TheoremViolation("Could not certify the sign of a nonzero element of Q[pi]")


def pi_multiple_interval(multiple, precision: int = PI_PRECISION_BITS) -> RationalInterval:
    """Enclosure of multiple * pi for a rational multiple."""
    pi = pi_enclosure(precision)
    return RationalInterval.point(multiple) * pi.interval


def cos_sin_enclosure(angle: Rational, precision: int = DISPLAY_PRECISION_BITS) -> Tuple[RationalInterval, RationalInterval]:
    """
    Certified enclosures of cos(angle) and sin(angle) for a rational angle.

    Only used for display, never for decisions.
    """
    q = to_qq(angle)
    num, den = int(q.numerator), int(q.denominator)
    wp = precision + 20
    argument = (from_rational(num, den, wp, round_floor), from_rational(num, den, wp, round_ceiling))
    (c_lo, c_hi), (s_lo, s_hi) = mpi_cos_sin(argument, wp)

    def _qq(raw):
        p, q_ = to_rational(raw)
        return QQ(p, q_)

    return RationalInterval(_qq(c_lo), _qq(c_hi)), RationalInterval(_qq(s_lo), _qq(s_hi))
