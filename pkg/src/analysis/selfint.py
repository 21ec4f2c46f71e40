# === File: src/analysis/selfint.py ===

"""
Self-intersections of a rational polar curve.

A point of the curve is hit twice, by t != s, when either

    (1)  r(t) = r(s),   theta(t) = theta(s) + 2k pi
    (2)  r(t) = -r(s),  theta(t) = theta(s) + (2k + 1) pi

for some integer k. Clearing denominators gives alpha = 0, beta = 0 for (1)
and mu = 0, nu = 0 for (2), with p standing for pi. Eliminating s yields the
plane curves xi1(t, k) = 0 and xi2(t, k) = 0; there are infinitely many
self-intersections exactly when one of them is unbounded in k.

The origin and the point at infinity are handled separately, since there the
angle carries no information (origin) or is only approached (P_inf).
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy import Poly, QQ, oo

from config import CERTIFICATION_BITS, K_CAP, MAX_WORKERS, PI_PRECISION_BITS
from src.analysis.kbounded import KBoundednessVerdict, k_boundedness
from src.analysis.ratan import LimitKind, PInfinity, bounded_on_reals, global_extrema, limit_at, point_at_infinity, zeros_and_poles
from src.curves.polar_curve import PolarCurve, parse_curve
from src.exact.intervals import RationalInterval, enclose_poly
from src.exact.pi_enclosure import pi_enclosure, pi_multiple_interval
from src.exact.polynomials import (
    as_poly, assert_nonzero_resultant, degree_in, discriminant_in, divides, exact_quotient,
    gcd_poly, leading_coefficient_in, resultant, squarefree_part, strip_univariate_in, substitute,
)
from src.exact.roots import (
    Real, RootBox, approx, compare_reals, count_real_roots, describe_real, enclose_at, enclosure, is_infinite,
    isolate_real_roots, refine_until, vanishes_at,
)
from src.exact.symbols import K, P, S, T, in_var
from src.exceptions import MisuseError, TheoremViolation
from src.logging_config import get_logger

logger = get_logger(__name__)

SYSTEMS = (1, 2)


# === System polynomials and xi curves ===

@dataclass(frozen=True)
class SystemPolys:
    """
    alpha = A(t)B(s) - A(s)B(t)
    beta  = C(t)D(s) - C(s)D(t) - 2kp D(t)D(s)
    mu    = A(t)B(s) + A(s)B(t)
    nu    = C(t)D(s) - C(s)D(t) - (2k+1)p D(t)D(s)
    """
    alpha: Poly
    beta: Poly
    mu: Poly
    nu: Poly

    def equations(self, system: int) -> Tuple[Poly, Poly]:
        return (self.alpha, self.beta) if system == 1 else (self.mu, self.nu)


def build_system_polys(curve: PolarCurve) -> SystemPolys:
    theta_diff = curve.theta.difference_numerator(S).as_expr()
    d_t = curve.D.as_expr()
    d_ts = d_t * d_t.subs(T, S)
    return SystemPolys(
        alpha=as_poly(curve.r.difference_numerator(S)),
        beta=as_poly(theta_diff - 2 * K * P * d_ts),
        mu=as_poly(curve.r.difference_numerator(S, plus=True)),
        nu=as_poly(theta_diff - (2 * K + 1) * P * d_ts),
    )


@dataclass(frozen=True)
class XiCurve:
    xi1: Poly
    xi2: Poly

    def for_system(self, system: int) -> Poly:
        return self.xi1 if system == 1 else self.xi2


def _xi(first: Poly, second: Poly, label: str) -> Poly:
    res = assert_nonzero_resultant(resultant(first, second, S), label)
    return strip_univariate_in(squarefree_part(res), T)


def xi_curves(polys: SystemPolys) -> XiCurve:
    """
    xi1, xi2: square-free parts of Res_s(alpha, beta) and Res_s(mu, nu) without
    factors in t alone or in p alone.

    Raises:
        TheoremViolation: a resultant vanishes identically, or k does not divide Res_s(alpha, beta)
    """
    res1 = assert_nonzero_resultant(resultant(polys.alpha, polys.beta, S), 'Res_s(alpha, beta)')
    if not divides(as_poly(K), res1):
        raise TheoremViolation("k does not divide Res_s(alpha, beta)")
    xi1 = strip_univariate_in(squarefree_part(res1), T)
    xi2 = _xi(polys.mu, polys.nu, 'Res_s(mu, nu)')
    logger.info(f"xi1 = {xi1.as_expr()}, xi2 = {xi2.as_expr()}")
    return XiCurve(xi1, xi2)


def k_verdicts(xi: XiCurve) -> Dict[int, KBoundednessVerdict]:
    return {system: k_boundedness(xi.for_system(system)) for system in SYSTEMS}


def _witness(system: int, verdict: KBoundednessVerdict) -> str:
    parts = [f"vertical asymptote t = {a.describe()}" for a in verdict.vertical_asymptotes]
    parts += [f"infinite branch as t -> {'+' if sign > 0 else '-'}infinity" for sign in verdict.infinite_branches]
    return f"xi{system}: " + ", ".join(parts)


def has_infinitely_many_selfintersections(
        curve: PolarCurve,
        verdicts: Optional[Dict[int, KBoundednessVerdict]] = None) -> Tuple[bool, Optional[str]]:
    """
    True iff xi1 = 0 or xi2 = 0 is unbounded in k; a bounded theta settles it at once.

    Returns:
        (infinite, witness) where witness names the xi curve and its escaping branch
    """
    if bounded_on_reals(curve.theta):
        return False, None
    if verdicts is None:
        verdicts = k_verdicts(xi_curves(build_system_polys(curve)))
    for system in SYSTEMS:
        if not verdicts[system].bounded:
            return True, _witness(system, verdicts[system])
    return False, None


# === Integer k candidates ===

@dataclass(frozen=True)
class KRange:
    """Integers lo..hi, optionally without 0; empty when lo > hi."""
    lo: int
    hi: int
    exclude_zero: bool = False

    def values(self) -> List[int]:
        return [k for k in range(self.lo, self.hi + 1) if not (self.exclude_zero and k == 0)]

    def is_empty(self) -> bool:
        return not self.values()

    def describe(self) -> str:
        text = f"[[ {self.lo},{self.hi}]]"
        if self.exclude_zero:
            text += ", k<>0"
        return text


def _floor(q) -> int:
    return int(q.numerator) // int(q.denominator)


def _ceil(q) -> int:
    return -_floor(-q)


def _value_box(value: Real, width) -> RationalInterval:
    if isinstance(value, RootBox):
        value = value.refine(width)
    return enclosure(value)


def _k_bound_from_xi(xi: Poly) -> Optional[int]:
    """Bound K with every real point of the bounded curve xi = 0 in |k| <= K; None when it has none."""
    if degree_in(xi, T) == 0:
        guards = [xi]
    else:
        guards = [leading_coefficient_in(xi, T), discriminant_in(xi, T)]
    bound = None
    for g in guards:
        g = in_var(g, K)
        if g.is_zero or g.degree(K) <= 0:
            continue
        for box in isolate_real_roots(g, K):
            magnitude = _ceil(box.interval.magnitude_upper())
            bound = magnitude if bound is None else max(bound, magnitude)
    return bound


def integer_k_candidates(curve: PolarCurve, system: int, xi: Optional[XiCurve] = None,
                         verdict: Optional[KBoundednessVerdict] = None) -> KRange:
    """
    Integers k for which system (1) or (2) may have solutions.

    With theta bounded and W = sup theta - inf theta, |theta(t) - theta(s)| <= W
    bounds 2k pi (system 1) or (2k + 1) pi (system 2). Otherwise the relevant
    xi curve must be bounded in k, and the k-projection of its real points lies
    between the extreme real roots of its t-leading coefficient and t-discriminant.

    Raises:
        MisuseError: theta unbounded and the xi curve unbounded in k
    """
    exclude_zero = system == 1
    if bounded_on_reals(curve.theta):
        extrema = global_extrema(curve.theta)
        width = QQ(1, 2 ** 30)
        spread = _value_box(extrema.sup.value, width) - _value_box(extrema.inf.value, width)
        pi = pi_enclosure().interval
        two_pi = pi * 2
        if system == 1:
            k = _floor((spread / two_pi).hi)
            return KRange(-k, k, exclude_zero)
        lo = _ceil(((-spread - pi) / two_pi).lo)
        hi = _floor(((spread - pi) / two_pi).hi)
        return KRange(lo, hi, exclude_zero)

    if xi is None:
        xi = xi_curves(build_system_polys(curve))
    poly = xi.for_system(system)
    if verdict is None:
        verdict = k_boundedness(poly)
    if not verdict.bounded:
        raise MisuseError(f"xi{system} is unbounded in k: the set of candidate k is infinite")
    bound = _k_bound_from_xi(poly)
    if bound is None:
        return KRange(0, -1, exclude_zero)
    return KRange(-bound, bound, exclude_zero)


# === Solving (1) and (2) for one k ===

def mirrored_k(system: int, k: int) -> int:
    """k' such that (s, t) solves the system at k' whenever (t, s) solves it at k."""
    return -k if system == 1 else -k - 1


@dataclass
class SolutionPair:
    """A certified solution (t, s) of system (1) or (2) at integer k."""
    system: int
    k: int
    t: Real
    s: Real
    residual_r: float
    residual_theta: float

    def approx(self) -> Tuple[float, float]:
        return approx(self.t), approx(self.s)


def _rf_enclosure(numerator: Poly, denominator: Poly, value: Real, precision: int) -> RationalInterval:
    return enclose_at(numerator, value, precision) / enclose_at(denominator, value, precision)


class SystemSolver:
    """
    Real solutions of (1) and (2) for given integer k.

    Both systems are solved through a generic resultant R(t, k) = Res_s(first, second)
    specialized at k; the specialization is exact because the s-leading
    coefficients never vanish for admissible k. For system (1) the factor t - s
    of alpha is divided out first. The s-coordinates come from the same
    resultant: swapping t and s maps system (1) at k to k' = -k and system (2)
    at k to k' = -k - 1.
    """

    def __init__(self, curve: PolarCurve, polys: Optional[SystemPolys] = None,
                 certification_bits: int = CERTIFICATION_BITS):
        self.curve = curve
        self.certification_bits = certification_bits
        self.polys = polys or build_system_polys(curve)
        self.alpha_1 = exact_quotient(self.polys.alpha, as_poly(T - S))
        self._resultants: Dict[int, Optional[Poly]] = {}
        self._roots: Dict[Tuple[int, int], List[RootBox]] = {}

    def _equations(self, system: int) -> Tuple[Poly, Poly]:
        if system == 1:
            return self.alpha_1, self.polys.beta
        return self.polys.mu, self.polys.nu

    def _resultant(self, system: int) -> Optional[Poly]:
        if system not in self._resultants:
            first, second = self._equations(system)
            if degree_in(first, S) == 0:
                self._resultants[system] = None
            else:
                self._resultants[system] = resultant(first, second, S)
        return self._resultants[system]

    def _t_roots(self, system: int, k: int) -> List[RootBox]:
        """Real t-coordinates of solutions at k, with B(t) D(t) != 0."""
        key = (system, k)
        if key not in self._roots:
            generic = self._resultant(system)
            if generic is None:
                self._roots[key] = []
                return []
            specialized = in_var(substitute(generic, K, k), T)
            if specialized.is_zero:
                raise TheoremViolation(f"Resultant of system ({system}) vanishes at k = {k}")
            roots = []
            if specialized.degree(T) > 0 and count_real_roots(specialized, T) > 0:
                for box in isolate_real_roots(specialized, T):
                    if not vanishes_at(self.curve.B, box) and not vanishes_at(self.curve.D, box):
                        roots.append(box)
            self._roots[key] = roots
        return self._roots[key]

    def _s_roots(self, system: int, k: int) -> List[RootBox]:
        return self._t_roots(system, mirrored_k(system, k))

    def solve(self, k: int, system: int) -> List[SolutionPair]:
        """
        All real solutions (t, s), t < s, of system (1) or (2) at k.

        The pairs with t > s are the solutions at mirrored_k(system, k), swapped.

        Raises:
            MisuseError: system (1) with k = 0, which only has t = s solutions
        """
        if system == 1 and k == 0:
            raise MisuseError("System (1) with k = 0 only has the trivial solutions t = s")
        if self._resultant(system) is None:
            return []
        first, second = self._equations(system)
        second = as_poly(substitute(second, K, k))
        ts = self._t_roots(system, k)
        if not ts:
            return []
        ss = self._s_roots(system, k)
        alive = [(i, j) for i in range(len(ts)) for j in range(len(ss))]

        stages = {b for b in (8, 16, 24) if b < self.certification_bits} | {self.certification_bits}
        for bits in sorted(stages):
            if not alive:
                break
            width = QQ(1, 2 ** bits)
            ts = refine_until(ts, width)
            ss = refine_until(ss, width)
            precision = max(PI_PRECISION_BITS, 2 * bits)
            pi_box = pi_enclosure(precision).interval
            kept = []
            for i, j in alive:
                bindings = {T: enclosure(ts[i]), S: enclosure(ss[j]), P: pi_box}
                if enclose_poly(first, bindings).contains_zero() and enclose_poly(second, bindings).contains_zero():
                    kept.append((i, j))
            alive = kept

        solutions = []
        for i, j in alive:
            t, s = ts[i], ss[j]
            if compare_reals(t, s) >= 0:
                continue
            solutions.append(self._certified_pair(system, k, t, s))
        solutions.sort(key=lambda pair: pair.approx())
        logger.debug(f"System ({system}) at k = {k}: {len(solutions)} solutions")
        return solutions

    def _certified_pair(self, system: int, k: int, t: RootBox, s: RootBox) -> SolutionPair:
        precision = max(PI_PRECISION_BITS, 2 * self.certification_bits)
        r, theta = self.curve.r, self.curve.theta
        r_t = _rf_enclosure(r.numerator, r.denominator, t, precision)
        r_s = _rf_enclosure(r.numerator, r.denominator, s, precision)
        th_t = _rf_enclosure(theta.numerator, theta.denominator, t, precision)
        th_s = _rf_enclosure(theta.numerator, theta.denominator, s, precision)
        r_gap = r_t - r_s if system == 1 else r_t + r_s
        multiple = 2 * k if system == 1 else 2 * k + 1
        theta_gap = th_t - th_s - pi_multiple_interval(multiple, precision)
        return SolutionPair(
            system=system,
            k=k,
            t=t.exact if t.exact is not None else t,
            s=s.exact if s.exact is not None else s,
            residual_r=float(r_gap.magnitude_upper()),
            residual_theta=float(theta_gap.magnitude_upper()),
        )


def solve_system(curve: PolarCurve, k0: int, system: int) -> List[SolutionPair]:
    """Real solutions (t, s) with t < s and B(t)B(s)D(t)D(s) != 0 of system (1) or (2) at k0."""
    return SystemSolver(curve).solve(k0, system)


_WORKER_SOLVER: Optional[SystemSolver] = None


def _init_worker(r_text: str, theta_text: str, certification_bits: int):
    global _WORKER_SOLVER
    _WORKER_SOLVER = SystemSolver(parse_curve(r_text, theta_text), certification_bits=certification_bits)


def _solve_in_worker(job: Tuple[int, int]) -> List[SolutionPair]:
    system, k = job
    return _WORKER_SOLVER.solve(k, system)


# === Origin and point at infinity ===

@dataclass
class OriginStatus:
    """Real parameters reaching the origin, plus P_inf when it is the origin."""
    parameters: List[Real]
    p_infinity: bool

    @property
    def count(self) -> int:
        return len(self.parameters) + int(self.p_infinity)

    @property
    def is_self_intersection(self) -> bool:
        return self.count >= 2


def origin_status(curve: PolarCurve, p_inf: Optional[PInfinity] = None) -> OriginStatus:
    """
    The origin is reached at the real roots of A (never poles of r, as gcd(A, B) = 1)
    and by P_inf when r_inf = 0; it is a self-intersection when reached twice.
    """
    if p_inf is None:
        p_inf = point_at_infinity(curve)
    zeros = zeros_and_poles(curve.r).zeros
    parameters = [z.exact if z.exact is not None else z for z in zeros]
    return OriginStatus(parameters, p_inf.at_origin)


@dataclass
class PInfinityReached:
    """
    Whether P_inf is reached by a real parameter.

    k0_parameters solve r(s) = r_inf, theta(s) = theta_inf. Reaching it with
    k != 0 would need theta(s) - theta_inf, an algebraic number, to equal a
    nonzero multiple of pi, which is transcendental.
    """
    origin_case: bool
    k0_parameters: List[Real] = field(default_factory=list)
    k_nonzero_possible: bool = False

    @property
    def k0_count(self) -> int:
        return len(self.k0_parameters)


def p_infinity_reached(curve: PolarCurve, p_inf: Optional[PInfinity] = None) -> PInfinityReached:
    """
    Raises:
        MisuseError: the curve has no point at infinity
    """
    if p_inf is None:
        p_inf = point_at_infinity(curve)
    if not p_inf.exists:
        raise MisuseError("There is no point at infinity")
    if p_inf.at_origin:
        return PInfinityReached(origin_case=True, k0_parameters=origin_status(curve, p_inf).parameters)
    r_gap = (curve.r - p_inf.r_inf).numerator
    theta_gap = (curve.theta - p_inf.theta_inf).numerator
    common = in_var(gcd_poly(r_gap, theta_gap), T)
    parameters = []
    if common.degree(T) > 0:
        for box in isolate_real_roots(common, T):
            parameters.append(box.exact if box.exact is not None else box)
    return PInfinityReached(origin_case=False, k0_parameters=parameters)


# === Close self-intersections ===

def generates_winding(curve: PolarCurve, t0) -> bool:
    """True iff theta -> +/-infinity as t -> t0 on some side (limit circle, point or spiral)."""
    limit = limit_at(curve.theta, t0)
    return limit.is_infinite or limit.kind == LimitKind.UNDEFINED


def close_selfintersections(curve: PolarCurve, t0,
                            verdicts: Optional[Dict[int, KBoundednessVerdict]] = None) -> bool:
    """
    Whether the limit circle, limit point or spiral generated by t0 has
    infinitely many close self-intersections.

    A finite t0 qualifies iff t = t0 is a vertical asymptote of xi1 = 0 or
    xi2 = 0; t0 = +/-infinity iff one of them has an infinite branch with t
    going to the same infinity and |k| -> infinity.

    Raises:
        MisuseError: t0 generates none of these features
    """
    if not generates_winding(curve, t0):
        raise MisuseError(f"t = {describe_real(t0)} generates no limit circle, limit point or spiral branch")
    if verdicts is None:
        verdicts = k_verdicts(xi_curves(build_system_polys(curve)))
    if is_infinite(t0):
        sign = 1 if t0 == oo else -1
        return any(sign in v.infinite_branches for v in verdicts.values())
    return any(v.has_vertical_asymptote_at(t0) for v in verdicts.values())


# === Report ===

@dataclass
class SystemSolutions:
    """
    Solutions of one system over its candidate k.

    capped is set when the family is infinite and only |k| <= k_cap was solved.
    """
    system: int
    candidates: KRange
    capped: bool
    solutions: Dict[int, List[SolutionPair]] = field(default_factory=dict)

    @property
    def verified_ks(self) -> List[int]:
        """k with a solution in either order; a pair kept at k also solves mirrored_k swapped."""
        ks = set()
        for k, pairs in self.solutions.items():
            if pairs:
                ks.update((k, mirrored_k(self.system, k)))
        return sorted(ks)

    def verified_range(self) -> Optional[KRange]:
        ks = self.verified_ks
        if not ks:
            return None
        return KRange(min(ks), max(ks), self.candidates.exclude_zero)

    def is_contiguous(self) -> bool:
        ks = self.verified_ks
        rng = self.verified_range()
        return rng is not None and ks == rng.values()


@dataclass
class SelfIntersectionReport:
    polys: SystemPolys
    xi: XiCurve
    verdicts: Dict[int, KBoundednessVerdict]
    infinite: bool
    witness: Optional[str]
    systems: List[SystemSolutions]
    origin: OriginStatus
    p_infinity: Optional[PInfinityReached]

    def system(self, number: int) -> SystemSolutions:
        return self.systems[number - 1]


def _solve_all(curve: PolarCurve, solver: SystemSolver, jobs: List[Tuple[int, int]],
               workers: int) -> Dict[Tuple[int, int], List[SolutionPair]]:
    if workers > 1 and len(jobs) > 1:
        r_text, theta_text = curve.texts
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(r_text, theta_text, solver.certification_bits)) as pool:
            results = list(pool.map(_solve_in_worker, jobs))
        return dict(zip(jobs, results))
    return {(system, k): solver.solve(k, system) for system, k in jobs}


def analyze_self_intersections(curve: PolarCurve, k_cap: int = K_CAP, workers: int = MAX_WORKERS,
                               p_inf: Optional[PInfinity] = None,
                               certification_bits: int = CERTIFICATION_BITS) -> SelfIntersectionReport:
    """
    Full self-intersection analysis: xi curves, finiteness verdict, solutions
    per system over the candidate k, the origin and the point at infinity.

    For an infinite family only |k| <= k_cap is solved; the verdict itself is exact.
    """
    if p_inf is None:
        p_inf = point_at_infinity(curve)
    polys = build_system_polys(curve)
    xi = xi_curves(polys)
    theta_bounded = bounded_on_reals(curve.theta)
    if theta_bounded:
        verdicts = {system: KBoundednessVerdict() for system in SYSTEMS}
    else:
        verdicts = k_verdicts(xi)
    infinite, witness = has_infinitely_many_selfintersections(curve, verdicts)
    logger.info(f"Infinitely many self-intersections: {infinite}" + (f" ({witness})" if witness else ""))

    systems = []
    for system in SYSTEMS:
        if theta_bounded or verdicts[system].bounded:
            candidates = integer_k_candidates(curve, system, xi, verdicts[system])
            capped = False
        else:
            candidates = KRange(-k_cap, k_cap, system == 1)
            capped = True
        logger.info(f"System ({system}) candidates k in {candidates.describe()}{' (capped)' if capped else ''}")
        systems.append(SystemSolutions(system, candidates, capped))

    solver = SystemSolver(curve, polys, certification_bits)
    jobs = [(entry.system, k) for entry in systems for k in entry.candidates.values()]
    results = _solve_all(curve, solver, jobs, workers)
    for (system, k), pairs in sorted(results.items()):
        systems[system - 1].solutions[k] = pairs
    for entry in systems:
        logger.info(f"System ({entry.system}) verified k: {entry.verified_ks}")

    origin = origin_status(curve, p_inf)
    reached = p_infinity_reached(curve, p_inf) if p_inf.exists else None
    return SelfIntersectionReport(polys, xi, verdicts, infinite, witness, systems, origin, reached)
