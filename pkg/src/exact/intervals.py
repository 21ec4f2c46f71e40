# === File: src/exact/intervals.py ===

"""
Exact rational interval arithmetic.

Endpoints are QQ elements (gmpy2 mpq when available), so enclosures never
suffer rounding. Used for every certified sign decision and for residual
checks of certified solutions.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Tuple

from sympy import Poly, QQ, Rational


def to_qq(value) -> Any:
    """Convert int, sympy Rational or QQ element to a QQ element."""
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Rational):
        return QQ(int(value.p), int(value.q))
    return QQ.convert(value)


def to_rational(value) -> Rational:
    """Convert a QQ element back to a sympy Rational."""
    return QQ.to_sympy(to_qq(value))


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""
    lo: Any
    hi: Any

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"Empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value) -> 'RationalInterval':
        q = to_qq(value)
        return cls(q, q)

    @classmethod
    def around(cls, lo, hi) -> 'RationalInterval':
        lo, hi = to_qq(lo), to_qq(hi)
        return cls(min(lo, hi), max(lo, hi))

    # === Arithmetic ===

    def _coerce(self, other) -> 'RationalInterval':
        if isinstance(other, RationalInterval):
            return other
        return RationalInterval.point(other)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("Negative powers are not supported")
        if n == 0:
            return RationalInterval(QQ(1), QQ(1))
        lo_n, hi_n = self.lo ** n, self.hi ** n
        if n % 2 == 1 or self.lo >= 0:
            return RationalInterval(min(lo_n, hi_n), max(lo_n, hi_n))
        if self.hi <= 0:
            return RationalInterval(hi_n, lo_n)
        return RationalInterval(QQ(0), max(lo_n, hi_n))

    def reciprocal(self) -> 'RationalInterval':
        if self.contains_zero():
            raise ZeroDivisionError("Interval contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    # === Queries ===

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, value) -> bool:
        q = to_qq(value)
        return self.lo <= q <= self.hi

    def sign(self) -> int:
        """+1 or -1 when certified, 0 when the interval straddles or touches zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def magnitude_lower(self):
        """min |x| over the interval."""
        if self.contains_zero():
            return QQ(0)
        return min(abs(self.lo), abs(self.hi))

    def magnitude_upper(self):
        """max |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def hull(self, other: 'RationalInterval') -> 'RationalInterval':
        return RationalInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersects(self, other: 'RationalInterval') -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def as_floats(self) -> Tuple[float, float]:
        return float(self.lo), float(self.hi)

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@lru_cache(maxsize=8192)
def qq_terms(poly: Poly) -> tuple:
    """Terms of a QQ polynomial as (monomial, QQ coefficient), cached per polynomial."""
    return tuple((monom, to_qq(coeff)) for monom, coeff in poly.terms())


def enclose_poly(poly: Poly, bindings: Dict[Any, RationalInterval]) -> RationalInterval:
    """
    Enclose the range of a polynomial over a box.

    Args:
        poly: polynomial over QQ
        bindings: interval for every generator of poly

    Returns:
        Interval containing poly(x) for every x in the box
    """
    boxes = [bindings[g] for g in poly.gens]
    total = RationalInterval(QQ(0), QQ(0))
    powers: Dict[Tuple[int, int], RationalInterval] = {}
    for monom, coeff in qq_terms(poly):
        term = RationalInterval.point(coeff)
        for index, exponent in enumerate(monom):
            if exponent:
                key = (index, exponent)
                if key not in powers:
                    powers[key] = boxes[index] ** exponent
                term = term * powers[key]
        total = total + term
    return total
