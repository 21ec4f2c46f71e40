# === File: src/analysis/kbounded.py ===

"""
Certified k-boundedness of a real plane curve xi(t, k) = 0.

The real zero set is unbounded in k exactly when it has a branch escaping to
|k| = infinity, either at a finite t0 (a vertical asymptote t = t0 in the
(t, k)-plane) or together with t -> +/-infinity.

Both situations are read in reversal charts. With u = 1/k,
F(t, u) = u^d xi(t, 1/u) and F(t, 0) is the k-leading coefficient c_d(t); a
branch through (t0, 0) with u != 0 is an escape at t0. With v = 1/t as well,
G(v, u) = v^e F(1/v, u) and a branch through (0, 0) is an escape with
t -> +/-infinity.

Branches through a point (x0, 0) of a chart polynomial H(x, u) are counted at
one rational u* on each side of 0. If (a, b) isolates x0 among the roots of
H(x, 0), and eta > 0 is smaller than every nonzero root of lc_x(H), disc_x(H),
H(a, u) and H(b, u), then on 0 < |u| <= eta the real x-roots of H in (a, b)
move continuously without entering or leaving, and every one of them tends to
x0 as u -> 0. So the number of roots in (a, b) at u* = +/-eta/2 is exactly the
number of branches reaching (x0, 0) from that side.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from sympy import Poly, QQ

from src.exact.intervals import to_rational
from src.exact.polynomials import (
    degree_in, discriminant_in, leading_coefficient_in, lowest_power_removed, primitive_part_in, reverse_in,
    substitute,
)
from src.exact.roots import Real, RootBox, count_roots_in, describe_real, is_zero_at, isolate_real_roots, same_root
from src.exact.symbols import K, T, U, V, in_var
from src.logging_config import get_logger

logger = get_logger(__name__)


@dataclass
class VerticalAsymptote:
    """t = t0 approached by the curve while k -> sign * infinity, for each sign in k_signs."""
    t0: Real
    k_signs: Tuple[int, ...]

    def describe(self) -> str:
        return describe_real(self.t0)


@dataclass
class KBoundednessVerdict:
    """
    Aggregated verdict for one xi curve.

    infinite_branches lists the signs of t for branches with t -> +/-infinity
    and |k| -> infinity.
    """
    vertical_asymptotes: List[VerticalAsymptote] = field(default_factory=list)
    infinite_branches: List[int] = field(default_factory=list)

    @property
    def bounded(self) -> bool:
        return not self.vertical_asymptotes and not self.infinite_branches

    @property
    def tags(self) -> List[str]:
        if self.bounded:
            return ['bounded']
        tags = []
        if self.vertical_asymptotes:
            tags.append('vertical_asymptotes')
        if self.infinite_branches:
            tags.append('branch_at_t_infinity')
        return tags

    @property
    def tag(self) -> str:
        return self.tags[0]

    def has_vertical_asymptote_at(self, t0: Real) -> bool:
        return any(same_root(a.t0, t0) for a in self.vertical_asymptotes)


# === Helpers ===

def part_involving_t(xi: Poly) -> Poly:
    """Drop the factors of xi that do not involve t (horizontal lines k = const)."""
    return primitive_part_in(xi, T)


def root_free_radius(polys: List[Poly]) -> object:
    """
    Rational eta in (0, 1] such that no polynomial in u has a root with 0 < |u| <= eta.
    """
    radius = QQ(2)
    for g in polys:
        if g.is_zero:
            continue
        h = in_var(lowest_power_removed(g, U), U)
        if h.degree(U) <= 0:
            continue
        for box in isolate_real_roots(h, U):
            while box.interval.contains_zero():
                box = box.refine()
            radius = min(radius, box.interval.magnitude_lower())
    return radius / 2


def _clean_box(box: RootBox, guard: Poly, var) -> RootBox:
    """Refine until neither endpoint is a root of guard."""
    guard = in_var(guard, var)
    while is_zero_at(guard, box.lower) or is_zero_at(guard, box.upper):
        box = box.refine()
    return box


def branch_counts(H: Poly, x, box: RootBox, x0_rational=None) -> Dict[Tuple[int, int], int]:
    """
    Number of real branches of H(x, u) = 0 reaching the root x0 isolated by box at u = 0.

    Args:
        H: polynomial in (x, u) with coefficients in Q[p]
        x: the non-u variable
        box: isolating box of x0 among the roots of H(x, 0)
        x0_rational: x0 itself when rational; the count is then split by the side of x0

    Returns:
        {(u_sign, x_side): count}; x_side is 0 when x0 is not given
    """
    box = _clean_box(box, substitute(H, U, 0), x)
    a, b = to_rational(box.lower), to_rational(box.upper)
    guards = [
        leading_coefficient_in(H, x),
        discriminant_in(H, x),
        substitute(H, x, a),
        substitute(H, x, b),
    ]
    if x0_rational is not None:
        guards.append(substitute(H, x, x0_rational))
    eta = root_free_radius([in_var(g, U) for g in guards])
    logger.debug(f"Branch test around {describe_real(box)} with eta = {eta}")

    counts = {}
    for u_sign in (1, -1):
        sliced = substitute(H, U, to_rational(u_sign * eta / 2))
        if x0_rational is None:
            counts[(u_sign, 0)] = count_roots_in(sliced, a, b, var=x)
        else:
            counts[(u_sign, -1)] = count_roots_in(sliced, a, x0_rational, var=x)
            counts[(u_sign, 1)] = count_roots_in(sliced, x0_rational, b, var=x)
    return counts


# === Verdict ===

def k_boundedness(xi: Poly) -> KBoundednessVerdict:
    """
    Decide whether the real curve xi(t, k) = 0 is bounded in k.

    Returns:
        KBoundednessVerdict with the vertical asymptotes (real roots t0 of the
        k-leading coefficient reached as |k| -> infinity) and the signs of t
        of infinite branches with |k| -> infinity
    """
    verdict = KBoundednessVerdict()
    core = part_involving_t(xi)
    d = degree_in(core, K)
    if d == 0:
        return verdict

    F = reverse_in(core, K, U, degree=d)
    # content in p alone never vanishes at pi
    lead = in_var(primitive_part_in(leading_coefficient_in(core, K), T), T)
    if lead.degree(T) > 0:
        for box in isolate_real_roots(lead, T):
            counts = branch_counts(F, T, box)
            signs = tuple(sorted({u_sign for (u_sign, _), n in counts.items() if n > 0}, reverse=True))
            if signs:
                t0 = box.exact if box.exact is not None else box
                verdict.vertical_asymptotes.append(VerticalAsymptote(t0, signs))

    e = degree_in(F, T)
    if e > 0:
        G = reverse_in(F, T, V, degree=e)
        G0 = in_var(substitute(G, U, 0), V)
        if is_zero_at(G0, 0):
            zero_box = next(b for b in isolate_real_roots(G0, V) if same_root(b, 0))
            counts = branch_counts(G, V, zero_box, x0_rational=0)
            verdict.infinite_branches = sorted({side for (_, side), n in counts.items() if n > 0}, reverse=True)

    logger.info(f"k-boundedness of {xi.as_expr()}: {verdict.tags}")
    return verdict
