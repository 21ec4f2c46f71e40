# === File: src/exact/symbols.py ===

"""
Shared indeterminates.

t, s are curve parameters, k the winding integer, p an exact stand-in for pi.
u and v are the reversal charts u = 1/k and v = 1/t used by branch analysis,
y the value variable of algebraic numbers F(t0).
"""

from sympy import Poly, QQ, symbols

T, S, K, P, U, V, Y = symbols('t s k p u v y')

# Lexicographic order used to normalize gcds: t > s > k > p
GEN_ORDER = (T, S, K, P, U, V, Y)


def ordered_gens(*exprs) -> tuple:
    """Free symbols of the expressions, sorted by GEN_ORDER."""
    found = set()
    for expr in exprs:
        found |= getattr(expr, 'free_symbols', set())
    unknown = found - set(GEN_ORDER)
    if unknown:
        raise ValueError(f"Unexpected symbols: {sorted(map(str, unknown))}")
    return tuple(g for g in GEN_ORDER if g in found)


def as_poly(expr, *gens) -> Poly:
    """
    Build a polynomial over QQ.

    Args:
        expr: sympy expression or Poly
        gens: generators; when omitted, the free symbols in GEN_ORDER

    Returns:
        Poly with domain QQ
    """
    if isinstance(expr, Poly):
        expr = expr.as_expr()
    if not gens:
        gens = ordered_gens(expr) or (T,)
    return Poly(expr, *gens, domain=QQ)


def in_var(f: Poly, var) -> Poly:
    """Re-express f with generators (var, p), p kept even when absent."""
    return Poly(f.as_expr(), var, P, domain=QQ)
