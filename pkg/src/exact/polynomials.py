# === File: src/exact/polynomials.py ===

"""
Exact polynomial operations over Q[t, s, k, p].

p is a free indeterminate standing for pi; no operation here ever replaces it
by a number, so every gcd, resultant and square-free part is exact.
"""

from functools import reduce
from typing import List, Optional, Sequence

from sympy import Poly, QQ
from sympy.polys.polyerrors import ExactQuotientFailed

from src.exact.symbols import GEN_ORDER, P, as_poly, ordered_gens
from src.exceptions import MisuseError, TheoremViolation, UndefinedGcdError
from src.logging_config import get_logger

logger = get_logger(__name__)


# === Normalization ===

def _common_gens(*polys: Poly, first=None) -> tuple:
    gens = ordered_gens(*(f.as_expr() for f in polys))
    if first is not None:
        gens = (first,) + tuple(g for g in gens if g != first)
    return gens or (GEN_ORDER[0],)


def normalize(f: Poly, main_var=None) -> Poly:
    """
    Primitive part with integer coefficients and positive leading coefficient.

    The leading term is taken under lex order t > s > k > p, or with main_var
    moved to the front when given.
    """
    if f.is_zero:
        return f
    gens = _common_gens(f, first=main_var)
    g = Poly(f.as_expr(), *gens, domain=QQ)
    _, g = g.clear_denoms(convert=True)
    _, g = g.primitive()
    if g.LC() < 0:
        g = -g
    return Poly(g.as_expr(), *gens, domain=QQ)


def is_constant(f: Poly) -> bool:
    return f.is_zero or all(sum(monom) == 0 for monom in f.monoms())


def unify(f: Poly, g: Poly, first=None):
    gens = _common_gens(f, g, first=first)
    return Poly(f.as_expr(), *gens, domain=QQ), Poly(g.as_expr(), *gens, domain=QQ)


# === gcd / resultant / square-free ===

def gcd_poly(f: Poly, g: Poly, main_var=None) -> Poly:
    """
    Normalized greatest common divisor.

    Args:
        f, g: polynomials over QQ
        main_var: variable placed first when normalizing the leading coefficient

    Returns:
        Primitive gcd with positive leading coefficient

    Raises:
        UndefinedGcdError: both inputs are zero
    """
    if f.is_zero and g.is_zero:
        raise UndefinedGcdError("gcd(0, 0) is undefined")
    f, g = unify(f, g, first=main_var)
    return normalize(f.gcd(g), main_var)


def resultant(f: Poly, g: Poly, eliminated_var) -> Poly:
    """
    Resultant with respect to eliminated_var, equal to the Sylvester determinant.

    Computed by sympy through subresultant remainder sequences.

    Raises:
        MisuseError: either input has degree zero in eliminated_var
    """
    f, g = unify(f, g, first=eliminated_var)
    if f.degree(eliminated_var) <= 0 or g.degree(eliminated_var) <= 0:
        raise MisuseError(f"Resultant needs positive degree in {eliminated_var}")
    result = f.resultant(g)
    if isinstance(result, Poly):
        return as_poly(result.as_expr())
    return as_poly(result)


def squarefree_part(f: Poly) -> Poly:
    """
    Product of the distinct irreducible factors of f, normalized.

    sympy divides f by gcd(f, df/dx_1, ..., df/dx_n), which is exact in
    characteristic zero.

    Raises:
        MisuseError: f is zero
    """
    if f.is_zero:
        raise MisuseError("Square-free part of the zero polynomial")
    if is_constant(f):
        return as_poly(1, *f.gens)
    return normalize(f.sqf_part())


def content_in(f: Poly, surviving: Sequence) -> Poly:
    """gcd of the coefficients of f seen as a polynomial in the surviving variables."""
    rest = [g for g in f.gens if g not in surviving]
    view = Poly(f.as_expr(), *surviving, domain=QQ[tuple(rest)] if rest else QQ)
    coeffs = [as_poly(c, *(rest or f.gens)) for c in view.coeffs()]
    return reduce(lambda a, b: gcd_poly(a, b), coeffs)


def primitive_part_in(f: Poly, var) -> Poly:
    """f without the factors free of var (its content over the other variables), normalized."""
    if f.is_zero:
        raise MisuseError("Primitive part of the zero polynomial")
    if degree_in(f, var) == 0:
        return as_poly(1, *f.gens)
    content = content_in(f, (var,))
    if is_constant(content):
        return normalize(f)
    g, c = unify(f, content)
    return normalize(exact_quotient(g, c))


def strip_univariate_in(f: Poly, var) -> Poly:
    """
    Remove every factor depending only on var (and p), and every factor in Q[p].

    The removed part is exactly the content of f over Q[var, p] with respect to
    the remaining variables. A factor like (t - p) counts as univariate in t
    because p is a real constant.

    Returns:
        Normalized polynomial; the constant 1 when nothing survives
    """
    if f.is_zero:
        raise MisuseError("Cannot strip the zero polynomial")
    surviving = tuple(g for g in f.gens if g not in (var, P) and f.degree(g) > 0)
    if not surviving:
        return as_poly(1, *f.gens)
    content = content_in(f, surviving)
    if is_constant(content):
        return normalize(f)
    g, c = unify(f, content)
    return normalize(exact_quotient(g, c))


def exact_quotient(f: Poly, g: Poly) -> Poly:
    """f / g, which must divide exactly."""
    f, g = unify(f, g)
    try:
        return f.exquo(g)
    except ExactQuotientFailed as e:
        raise MisuseError(f"{g.as_expr()} does not divide {f.as_expr()}") from e


def divides(g: Poly, f: Poly) -> bool:
    """True iff g | f over QQ."""
    f, g = unify(f, g)
    try:
        f.exquo(g)
        return True
    except ExactQuotientFailed:
        return False


# === Views in one variable ===

def coefficients_in(f: Poly, var) -> List[Poly]:
    """Coefficients of f in increasing powers of var, each a Poly in the other variables."""
    rest = tuple(g for g in f.gens if g != var) or (P,)
    view = Poly(f.as_expr(), var, domain=QQ[rest])
    return [as_poly(c, *rest) for c in reversed(view.all_coeffs())]


def leading_coefficient_in(f: Poly, var) -> Poly:
    return coefficients_in(f, var)[-1]


def degree_in(f: Poly, var) -> int:
    if var not in f.gens:
        return 0
    return f.degree(var)


def reverse_in(f: Poly, var, new_var, degree: Optional[int] = None) -> Poly:
    """
    Reversal new_var**d * f(var = 1/new_var), d = deg_var f unless given.
    """
    coeffs = coefficients_in(f, var)
    d = len(coeffs) - 1 if degree is None else degree
    expr = sum(c.as_expr() * new_var ** (d - i) for i, c in enumerate(coeffs))
    return as_poly(expr)


def substitute(f: Poly, var, value) -> Poly:
    """f with var replaced by an exact value, as a Poly in the remaining variables."""
    return as_poly(f.as_expr().subs(var, value))


def assert_nonzero_resultant(res: Poly, label: str) -> Poly:
    if res.is_zero:
        logger.error(f"Resultant {label} vanished identically")
        raise TheoremViolation(f"Resultant {label} is identically zero")
    return res


def discriminant_in(f: Poly, var) -> Poly:
    """Discriminant of f with respect to var, as a Poly in the other variables."""
    if degree_in(f, var) < 2:
        return as_poly(1)
    f, _ = unify(f, f, first=var)
    result = f.discriminant()
    return as_poly(result.as_expr() if isinstance(result, Poly) else result)


def lowest_power_removed(f: Poly, var) -> Poly:
    """f / var**v with v the largest power of var dividing f."""
    coeffs = coefficients_in(f, var)
    v = next(i for i, c in enumerate(coeffs) if not c.is_zero)
    return as_poly(sum(c.as_expr() * var ** (i - v) for i, c in enumerate(coeffs) if i >= v))
