# === File: src/exact/algebraic.py ===

"""
Values of polynomials and rational functions at real algebraic points.
"""

from sympy import Poly, QQ, Rational

from src.exact.intervals import RationalInterval, enclose_poly, to_qq
from src.exact.pi_enclosure import pi_enclosure
from src.exact.polynomials import resultant
from src.exact.roots import Real, RootBox, has_pi, isolate_real_roots, sign_at, vanishes_at
from src.exact.symbols import P, Y, in_var
from src.exceptions import MisuseError

# Refinement rounds before giving up on separating candidate values
MAX_REFINEMENTS = 400


def _rename(f: Poly, var) -> Poly:
    old = f.gens[0]
    expr = f.as_expr().subs(old, var) if old != var else f.as_expr()
    return Poly(expr, var, P, domain=QQ)


def _precision_for(box: RootBox) -> int:
    if box.exact is not None or box.width == 0:
        return 128
    return max(128, 2 * int(1 / box.width).bit_length() + 16)


def enclose_value(f: Poly, value: Real) -> RationalInterval:
    """Interval enclosure of f(value, pi)."""
    if isinstance(value, RootBox):
        f = _rename(f, value.var)
        box = value.interval
        precision = _precision_for(value) if value.exact is None else 128
    else:
        f = in_var(f, f.gens[0])
        box = RationalInterval.point(value)
        precision = 128
    return enclose_poly(f, {f.gens[0]: box, P: pi_enclosure(precision).interval})


def sign_at_value(f: Poly, value: Real) -> int:
    """
    Certified sign of f(value, pi), zero exactly when f vanishes there.
    """
    if not isinstance(value, RootBox):
        return sign_at(in_var(f, f.gens[0]), value)
    if value.exact is not None:
        return sign_at(_rename(f, value.var), value.exact)
    f = _rename(f, value.var)
    if vanishes_at(f, value):
        return 0
    box = value
    while True:
        s = enclose_value(f, box).sign()
        if s:
            return s
        box = box.refine()


def algebraic_value(numerator: Poly, denominator: Poly, value: Real) -> Real:
    """
    Exact value of numerator/denominator at a real algebraic point.

    Args:
        numerator, denominator: polynomials in one variable (coefficients may involve p)
        value: Rational or RootBox with denominator(value) != 0

    Returns:
        Rational when the result is known to be rational, otherwise a RootBox in y
    """
    if sign_at_value(denominator, value) == 0:
        raise MisuseError("Denominator vanishes at the evaluation point")
    num_in, den_in = in_var(numerator, numerator.gens[0]), in_var(denominator, denominator.gens[0])
    if not isinstance(value, RootBox) or value.exact is not None:
        q = value.exact if isinstance(value, RootBox) else Rational(value)
        if not has_pi(num_in) and not has_pi(den_in):
            x = num_in.gens[0]
            return Rational(num_in.as_expr().subs(x, q) / den_in.as_expr().subs(x, q))
        box = RootBox(Poly(num_in.gens[0] - q, num_in.gens[0], P, domain=QQ), to_qq(q) - 1, to_qq(q) + 1, 1, q)
    else:
        box = value
    x = box.var
    num_x, den_x = _rename(num_in, x), _rename(den_in, x)
    if num_x.degree(x) <= 0 and den_x.degree(x) <= 0:
        constant = num_x.as_expr() / den_x.as_expr()
        if not constant.free_symbols:
            return Rational(constant)
    defining = Poly(box.polynomial.as_expr(), x, P, domain=QQ)
    if defining.degree(x) <= 0:
        raise MisuseError("Degenerate defining polynomial")
    target = Poly(Y * den_x.as_expr() - num_x.as_expr(), x, Y, P, domain=QQ)
    values = isolate_real_roots(in_var(resultant(defining, target, x), Y), Y)
    for _ in range(MAX_REFINEMENTS):
        den_box = enclose_value(den_x, box)
        if not den_box.contains_zero():
            enclosure = enclose_value(num_x, box) / den_box
            hits = [v for v in values if v.interval.intersects(enclosure)]
            if len(hits) == 1:
                hit = hits[0]
                return hit.exact if hit.exact is not None else hit
        box = box.refine()
        values = [v.refine() for v in values]
    raise MisuseError("Could not separate the algebraic value from its conjugates")
