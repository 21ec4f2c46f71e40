# === File: src/exact/roots.py ===

"""
Certified real root isolation for polynomials in one variable x whose
coefficients lie in Q[p], with p evaluated at pi.

Rational polynomials go through sympy's exact isolation. Polynomials that
involve p use a Sturm chain computed over the field Q(p); every sign in the
chain is an element of Q[p] at a rational point, certified by
src.exact.pi_enclosure.sign_at_pi.
"""

from dataclasses import dataclass, replace
from functools import lru_cache, reduce
from typing import Any, List, Optional, Sequence, Tuple, Union

from sympy import Poly, QQ, Rational, cancel, fraction, lcm, oo

from config import PI_PRECISION_BITS
from src.exact.intervals import RationalInterval, enclose_poly, to_qq, to_rational
from src.exact.pi_enclosure import PiEnclosure, enclose_at_pi, pi_enclosure, sign_at_pi
from src.exact.polynomials import discriminant_in, gcd_poly, leading_coefficient_in, squarefree_part
from src.exact.symbols import P, in_var
from src.exceptions import MisuseError
from src.logging_config import get_logger

logger = get_logger(__name__)


# === Dense Q[p][x] evaluation ===

@dataclass(frozen=True)
class _XPoly:
    """columns[j][i] is the coefficient of x**i * p**j."""
    columns: Tuple[Tuple[Any, ...], ...]

    def at(self, q) -> Tuple[Any, ...]:
        out = []
        for column in self.columns:
            acc = QQ(0)
            for c in reversed(column):
                acc = acc * q + c
            out.append(acc)
        return tuple(out)


@lru_cache(maxsize=4096)
def _xpoly(f: Poly) -> _XPoly:
    dx = max(f.degree(f.gens[0]), 0)
    dp = max(f.degree(P), 0)
    columns = [[QQ(0)] * (dx + 1) for _ in range(dp + 1)]
    for (i, j), c in f.terms():
        columns[j][i] = to_qq(c)
    return _XPoly(tuple(tuple(col) for col in columns))


def _normalized(f: Poly, var=None) -> Poly:
    var = var if var is not None else f.gens[0]
    return in_var(f, var)


def sign_at(f: Poly, q, precision: int = PI_PRECISION_BITS) -> int:
    """Certified sign of f(q, pi) for rational q; f must have generators (x, p)."""
    return sign_at_pi(_xpoly(f).at(to_qq(q)), precision)


def is_zero_at(f: Poly, q) -> bool:
    """True iff f(q, p) is identically zero in Q[p]."""
    return all(c == 0 for c in _xpoly(f).at(to_qq(q)))


def has_pi(f: Poly) -> bool:
    return P in f.gens and f.degree(P) > 0


# === Sturm chains over Q(p) ===

@lru_cache(maxsize=1024)
def _sturm_chain(f: Poly) -> Tuple[Tuple[_XPoly, int], ...]:
    """Sturm chain of f as (numerator, sign of cleared denominator) pairs."""
    x = f.gens[0]
    expr = f.as_expr()
    if not has_pi(f):
        chain = Poly(expr, x, domain=QQ).sturm()
        return tuple((_xpoly(in_var(g, x)), 1) for g in chain)
    chain = Poly(expr, x, domain=QQ.frac_field(P)).sturm()
    out = []
    for g in chain:
        g_expr = g.as_expr()
        dens = [fraction(cancel(c))[1] for c in g.all_coeffs()]
        common = reduce(lcm, dens)
        numer = Poly(cancel(g_expr * common), x, P, domain=QQ)
        common_poly = Poly(common, P, domain=QQ)
        multiplier = sign_at_pi([to_qq(c) for c in reversed(common_poly.all_coeffs())])
        out.append((_xpoly(numer), multiplier))
    return tuple(out)


def _variations(f: Poly, q, precision: int) -> int:
    q = to_qq(q)
    signs = []
    for xp, multiplier in _sturm_chain(f):
        s = sign_at_pi(xp.at(q), precision) * multiplier
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in(f: Poly, lo, hi, var=None, precision: int = PI_PRECISION_BITS) -> int:
    """
    Number of distinct real roots of f(x, pi) in the open interval (lo, hi).

    Raises:
        MisuseError: f is identically zero
    """
    f = _normalized(f, var)
    if f.is_zero:
        raise MisuseError("Cannot count roots of the zero polynomial")
    if f.degree(f.gens[0]) <= 0:
        return 0
    lo, hi = to_qq(lo), to_qq(hi)
    if lo >= hi:
        return 0
    count = _variations(f, lo, precision) - _variations(f, hi, precision)
    if is_zero_at(f, hi):
        count -= 1
    return count


def count_real_roots(f: Poly, var=None) -> int:
    """
    Number of distinct real roots of f(x, pi), without a Sturm chain over Q(p).

    As p moves, the real roots of the square-free part g only appear, merge or
    escape where lc_x(g) disc_x(g) vanishes. pi is never such a root, so the
    count at pi equals the count at a rational p0 sharing its root-free gap.

    Raises:
        MisuseError: f is identically zero
    """
    f = _normalized(f, var)
    if f.is_zero:
        raise MisuseError("Cannot count roots of the zero polynomial")
    x = f.gens[0]
    if f.degree(x) <= 0:
        return 0
    g = in_var(squarefree_part(f), x)
    if g.degree(x) <= 0:
        return 0
    if not has_pi(g):
        return Poly(g.as_expr(), x, domain=QQ).count_roots()

    guard = Poly(leading_coefficient_in(g, x).as_expr() * discriminant_in(g, x).as_expr(), P, domain=QQ)
    pi = pi_enclosure()
    lo, hi = to_rational(pi.lower), to_rational(pi.upper)
    while guard.degree() > 0 and guard.count_roots(lo, hi) > 0:
        pi = pi.refined()
        lo, hi = to_rational(pi.lower), to_rational(pi.upper)
    stand_in = (lo + hi) / 2
    return Poly(g.as_expr().subs(P, stand_in), x, domain=QQ).count_roots()


def cauchy_bound(f: Poly, precision: int = PI_PRECISION_BITS):
    """Rational B with every real root of f(x, pi) in (-B, B)."""
    f = _normalized(f)
    xp = _xpoly(f)
    degree = f.degree(f.gens[0])
    pi = pi_enclosure(precision)
    lead = [column[degree] for column in xp.columns]
    lead_sign = sign_at_pi(lead, precision)
    while True:
        lead_box = enclose_at_pi(lead, pi)
        if lead_box.sign() == lead_sign:
            break
        pi = pi.refined()
    ratio = QQ(0)
    for i in range(degree):
        box = enclose_at_pi([column[i] for column in xp.columns], pi)
        ratio = max(ratio, box.magnitude_upper() / lead_box.magnitude_lower())
    bound = QQ(1)
    while bound <= 1 + ratio:
        bound *= 2
    return bound


# === Root boxes ===

@dataclass(frozen=True)
class RootBox:
    """
    An isolated real root of a square-free polynomial.

    The root lies strictly inside (lower, upper) and is the only root of
    `polynomial` there. `exact` holds the value when it is known to be rational.
    """
    polynomial: Poly
    lower: Any
    upper: Any
    multiplicity: int = 1
    exact: Optional[Rational] = None

    @property
    def var(self):
        return self.polynomial.gens[0]

    @property
    def interval(self) -> RationalInterval:
        if self.exact is not None:
            return RationalInterval.point(self.exact)
        return RationalInterval(self.lower, self.upper)

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def midpoint(self):
        return (self.lower + self.upper) / 2

    def refine(self, width=None) -> 'RootBox':
        """Shrink the isolating interval to at most `width` (default: halve it)."""
        target = to_qq(width) if width is not None else self.width / 2
        if self.width <= target:
            return self
        if self.exact is not None:
            q = to_qq(self.exact)
            half = target / 2
            return replace(self, lower=q - half, upper=q + half)
        lo, hi = self.lower, self.upper
        f = self.polynomial
        sign_lo = sign_at(f, lo)
        while hi - lo > target:
            mid = (lo + hi) / 2
            s = sign_at(f, mid)
            if s == 0:
                quarter = (hi - lo) / 4
                return replace(self, lower=mid - quarter, upper=mid + quarter,
                               exact=to_rational(mid)).refine(target)
            if s == sign_lo:
                lo = mid
            else:
                hi = mid
        return replace(self, lower=lo, upper=hi)

    def contains(self, q) -> bool:
        q = to_qq(q)
        return self.lower < q < self.upper

    def approx(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        scale = max(abs(self.lower), abs(self.upper), QQ(1))
        return float(self.refine(scale / QQ(2 ** 60)).midpoint)

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"RootBox({self.exact})"
        return f"RootBox({self.polynomial.as_expr()}, ({self.lower}, {self.upper}))"


Real = Union[Rational, RootBox]


def _exact_box(root: Rational, var, multiplicity: int) -> RootBox:
    q = to_qq(root)
    return RootBox(Poly(var - root, var, P, domain=QQ), q - QQ(1, 2), q + QQ(1, 2), multiplicity, Rational(root))


def _isolate_rational(f: Poly, multiplicity: int) -> List[RootBox]:
    x = f.gens[0]
    g = Poly(f.as_expr(), x, domain=QQ)
    boxes: List[RootBox] = []
    _, factors = g.factor_list()
    for h, _ in factors:
        if h.degree() == 1:
            a, b = h.all_coeffs()
            boxes.append(_exact_box(-b / a, x, multiplicity))
            continue
        defining = in_var(h, x)
        for (lo, hi), _ in h.intervals():
            lo, hi = to_qq(lo), to_qq(hi)
            if lo == hi or is_zero_at(defining, lo) or is_zero_at(defining, hi):
                # intervals() only returns closed or exact boxes for rational roots,
                # which irreducible factors of degree > 1 do not have
                raise MisuseError(f"Unexpected rational root of {h.as_expr()}")
            boxes.append(RootBox(defining, lo, hi, multiplicity))
    return boxes


def _isolate_sturm(f: Poly, multiplicity: int, precision: int) -> List[RootBox]:
    bound = cauchy_bound(f, precision)
    boxes: List[RootBox] = []
    cache = {}

    def variations(q):
        if q not in cache:
            cache[q] = _variations(f, q, precision)
        return cache[q]

    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = variations(a) - variations(b)
        if n == 0:
            continue
        if n == 1:
            boxes.append(RootBox(f, a, b, multiplicity))
            continue
        mid = (a + b) / 2
        step = 3
        while is_zero_at(f, mid):
            mid = a + (b - a) * QQ(step - 1, 2 * step)
            step += 2
        stack.append((a, mid))
        stack.append((mid, b))
    return boxes


def _separate(boxes: List[RootBox]) -> List[RootBox]:
    """Refine until the boxes are pairwise disjoint, then sort them."""
    boxes = sorted(boxes, key=lambda b: (b.lower, b.upper))
    changed = True
    while changed:
        changed = False
        for i in range(len(boxes) - 1):
            a, b = boxes[i], boxes[i + 1]
            if a.upper >= b.lower:
                boxes[i], boxes[i + 1] = a.refine(), b.refine()
                changed = True
        boxes.sort(key=lambda b: (b.lower, b.upper))
    return boxes


def isolate_real_roots(f: Poly, var=None, pi: Optional[PiEnclosure] = None) -> List[RootBox]:
    """
    Isolate every real root of f(x, pi).

    Args:
        f: polynomial in var with coefficients in Q[p]
        var: the root variable (default: first generator)
        pi: starting pi enclosure; its precision is raised on demand

    Returns:
        Sorted, pairwise disjoint RootBoxes with multiplicities

    Raises:
        MisuseError: f is identically zero
    """
    f = _normalized(f, var)
    if f.is_zero:
        raise MisuseError("Cannot isolate the roots of the zero polynomial")
    precision = pi.precision if pi is not None else PI_PRECISION_BITS
    x = f.gens[0]
    boxes: List[RootBox] = []
    _, factors = f.sqf_list()
    for h, multiplicity in factors:
        h = in_var(h, x)
        if h.degree(x) <= 0:
            continue
        if has_pi(h):
            boxes.extend(_isolate_sturm(h, multiplicity, precision))
        else:
            boxes.extend(_isolate_rational(h, multiplicity))
    return _separate(boxes)


# === Algebraic comparisons ===

def enclosure(value) -> RationalInterval:
    if isinstance(value, RootBox):
        return value.interval
    return RationalInterval.point(value)


def vanishes_at(g: Poly, box: RootBox) -> bool:
    """True iff g(x, pi) vanishes at the root isolated by box."""
    g = in_var(g, box.var)
    if g.is_zero:
        return True
    if box.exact is not None:
        return is_zero_at(g, box.exact)
    common = gcd_poly(g, box.polynomial, main_var=box.var)
    common = in_var(common, box.var)
    if common.degree(box.var) <= 0:
        return False
    return count_roots_in(common, box.lower, box.upper) > 0


def same_root(a: Real, b: Real) -> bool:
    """Exact equality of two real algebraic numbers."""
    if not isinstance(a, RootBox) and not isinstance(b, RootBox):
        return Rational(a) == Rational(b)
    if not isinstance(a, RootBox):
        a, b = b, a
    if not isinstance(b, RootBox):
        if a.exact is not None:
            return a.exact == Rational(b)
        return a.contains(b) and is_zero_at(a.polynomial, b)
    if a.exact is not None and b.exact is not None:
        return a.exact == b.exact
    if a.exact is not None:
        return same_root(b, a.exact)
    if b.exact is not None:
        return same_root(a, b.exact)
    lo, hi = max(a.lower, b.lower), min(a.upper, b.upper)
    if lo >= hi:
        return False
    a_poly = Poly(a.polynomial.as_expr().subs(a.var, b.var), b.var, P, domain=QQ)
    common = in_var(gcd_poly(a_poly, b.polynomial, main_var=b.var), b.var)
    if common.degree(b.var) <= 0:
        return False
    return count_roots_in(common, lo, hi) > 0


def is_infinite(value) -> bool:
    return bool(getattr(value, 'is_infinite', False))


def _infinity_rank(value) -> int:
    if not is_infinite(value):
        return 0
    return 1 if value == oo else -1


def compare_reals(a, b) -> int:
    """
    Certified comparison of reals given as Rationals, RootBoxes or +/-oo.

    Returns:
        -1, 0 or 1
    """
    if is_infinite(a) or is_infinite(b):
        va, vb = _infinity_rank(a), _infinity_rank(b)
        return (va > vb) - (va < vb)
    checked_equal = False
    while True:
        ia, ib = enclosure(a), enclosure(b)
        if ia.hi < ib.lo:
            return -1
        if ib.hi < ia.lo:
            return 1
        if not checked_equal:
            if same_root(a, b):
                return 0
            checked_equal = True
        if isinstance(a, RootBox):
            a = a.refine()
        if isinstance(b, RootBox):
            b = b.refine()


def approx(value) -> float:
    if isinstance(value, RootBox):
        return value.approx()
    return float(value)


def refine_until(boxes: Sequence[RootBox], width) -> List[RootBox]:
    """Every box refined to width at most `width`."""
    return [b.refine(width) for b in boxes]


def enclose_at(f: Poly, value, precision: int = PI_PRECISION_BITS) -> RationalInterval:
    """Enclosure of f(value, pi) with value a Rational or RootBox."""
    f = in_var(f, f.gens[0])
    bindings = {f.gens[0]: enclosure(value), P: pi_enclosure(precision).interval}
    return enclose_poly(f, bindings)


def describe_real(value) -> str:
    """Stable text for an exact real: '5', '-1/2', 'infinity', 'root of t**2 - 2 in (1, 3/2)'."""
    if is_infinite(value):
        return 'infinity' if value == oo else '-infinity'
    if isinstance(value, RootBox):
        if value.exact is not None:
            return str(value.exact)
        return f"root of {value.polynomial.as_expr()} in ({to_rational(value.lower)}, {to_rational(value.upper)})"
    return str(Rational(value))
