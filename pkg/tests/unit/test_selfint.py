import math

import pytest
from sympy import Rational, cancel, expand

from src.analysis.selfint import (
    KRange, SolutionPair, SystemSolutions, build_system_polys, close_selfintersections,
    has_infinitely_many_selfintersections, integer_k_candidates, mirrored_k, origin_status, p_infinity_reached,
    solve_system, xi_curves,
)
from src.exact.symbols import K, P, S, T
from src.exceptions import MisuseError


def _swap(expr, k_value):
    return expr.subs({T: S, S: T, K: k_value}, simultaneous=True)


def _same_up_to_pi_unit(poly, expected):
    ratio = cancel(poly.as_expr() / expected)
    return ratio != 0 and ratio.free_symbols <= {P}


@pytest.mark.unit
def test_system_polynomials_symmetries(curve_of):
    polys = build_system_polys(curve_of('phi2'))
    alpha, beta, mu, nu = (f.as_expr() for f in (polys.alpha, polys.beta, polys.mu, polys.nu))

    assert expand(_swap(alpha, K) + alpha) == 0
    assert expand(_swap(mu, K) - mu) == 0
    assert expand(_swap(beta, -K) + beta) == 0
    assert expand(_swap(nu, -K - 1) + nu) == 0


@pytest.mark.unit
@pytest.mark.parametrize(
    "name,xi1,xi2",
    [
        ('line_spiral', 2 * K * P, 2 * T - 2 * K * P - P),
        ('quartic_angle', 2 * K * P, (2 * K + 1) * P),
        ('bounded_loop',
         2 * K * P * (2 * K * P * T ** 2 + 2 * K * P - T ** 2 + 1),
         P * (2 * K + 1) * (2 * K * P * T ** 2 + 2 * K * P - T ** 2 + P * T ** 2 + 1 + P)),
        ('inverse_square',
         K * (K * P * T + 1),
         4 * T ** 6 - 4 * P * (2 * K + 1) * T ** 4 - 4 * T ** 3 + P ** 2 * (2 * K + 1) ** 2 * T ** 2
         + 2 * P * (2 * K + 1) * T + 2),
    ],
)
def test_xi_curves(curve_of, name, xi1, xi2):
    xi = xi_curves(build_system_polys(curve_of(name)))
    assert _same_up_to_pi_unit(xi.xi1, xi1)
    assert _same_up_to_pi_unit(xi.xi2, xi2)


@pytest.mark.unit
def test_infinitely_many_self_intersections(curve_of):
    infinite, witness = has_infinitely_many_selfintersections(curve_of('line_spiral'))
    assert infinite
    assert witness.startswith('xi2')


@pytest.mark.unit
@pytest.mark.parametrize("name", ['quartic_angle', 'bounded_loop', 'phi2'])
def test_finitely_many_self_intersections(curve_of, name):
    infinite, witness = has_infinitely_many_selfintersections(curve_of(name))
    assert not infinite
    assert witness is None


@pytest.mark.unit
def test_k_range():
    k_range = KRange(-2, 2, exclude_zero=True)
    assert k_range.values() == [-2, -1, 1, 2]
    assert k_range.describe() == "[[ -2,2]], k<>0"
    assert KRange(-2, 1).describe() == "[[ -2,1]]"
    assert KRange(0, 0, exclude_zero=True).is_empty()
    assert KRange(0, -1).is_empty()


@pytest.mark.unit
def test_integer_k_candidates_from_theta_spread(curve_of):
    curve = curve_of('phi2')
    assert integer_k_candidates(curve, 1) == KRange(-2, 2, True)
    assert integer_k_candidates(curve, 2) == KRange(-2, 1, False)


@pytest.mark.unit
def test_integer_k_candidates_empty_for_narrow_theta(curve_of):
    curve = curve_of('phi1')
    assert integer_k_candidates(curve, 1).is_empty()
    assert integer_k_candidates(curve, 2).is_empty()


@pytest.mark.unit
def test_integer_k_candidates_of_unbounded_family_raises(curve_of):
    with pytest.raises(MisuseError):
        integer_k_candidates(curve_of('line_spiral'), 2)


@pytest.mark.unit
def test_solve_system_one(curve_of):
    curve = curve_of('phi2')
    solutions = solve_system(curve, 1, 1)

    # r(t) = r(s) forces s = 1/t, then 13 (1 - t^2) / (1 + t^2) = 2 pi; only 0 < t < 1 keeps t < s
    t_expected = math.sqrt((13 - 2 * math.pi) / (13 + 2 * math.pi))
    assert len(solutions) == 1
    t, s = solutions[0].approx()
    assert abs(t - t_expected) < 1e-9
    assert abs(s - 1 / t_expected) < 1e-9
    assert solutions[0].residual_r < 1e-6 and solutions[0].residual_theta < 1e-6


@pytest.mark.unit
@pytest.mark.parametrize("system,k", [(1, 1), (1, -1), (1, 2), (2, -2), (2, 0), (2, 1)])
def test_solutions_are_ordered(curve_of, system, k):
    for pair in solve_system(curve_of('phi2'), k, system):
        t, s = pair.approx()
        assert t < s


@pytest.mark.unit
def test_mirrored_k_holds_the_swapped_pairs(curve_of):
    curve = curve_of('phi2')
    t_expected = math.sqrt((13 - 2 * math.pi) / (13 + 2 * math.pi))
    found = {tuple(round(v, 9) for v in p.approx()) for k in (1, -1) for p in solve_system(curve, k, 1)}
    assert found == {
        (round(t_expected, 9), round(1 / t_expected, 9)),
        (round(-1 / t_expected, 9), round(-t_expected, 9)),
    }
    assert mirrored_k(1, 1) == -1
    assert mirrored_k(2, -2) == 1


@pytest.mark.unit
def test_verified_k_includes_mirrored_k():
    pair = SolutionPair(system=2, k=-2, t=Rational(-3), s=Rational(1, 3), residual_r=0.0, residual_theta=0.0)
    entry = SystemSolutions(2, KRange(-2, 1), capped=False, solutions={-2: [pair], -1: [], 0: [], 1: []})
    assert entry.verified_ks == [-2, 1]


@pytest.mark.unit
def test_system_one_with_k_zero_is_misuse(curve_of):
    with pytest.raises(MisuseError):
        solve_system(curve_of('phi2'), 0, 1)


@pytest.mark.unit
def test_origin_reached_twice(curve_of):
    status = origin_status(curve_of('phi1'))
    assert status.parameters == [0]
    assert status.p_infinity
    assert status.count == 2
    assert status.is_self_intersection


@pytest.mark.unit
def test_origin_reached_once(curve_of):
    status = origin_status(curve_of('phi4'))
    assert status.count == 1
    assert not status.is_self_intersection


@pytest.mark.unit
def test_point_at_infinity_not_reached(curve_of):
    reached = p_infinity_reached(curve_of('phi3'))
    assert not reached.origin_case
    assert reached.k0_count == 0
    assert not reached.k_nonzero_possible


@pytest.mark.unit
def test_point_at_infinity_reached_needs_a_point_at_infinity(curve_of):
    with pytest.raises(MisuseError):
        p_infinity_reached(curve_of('phi4'))


@pytest.mark.unit
def test_close_self_intersections_at_spiral(curve_of):
    assert close_selfintersections(curve_of('inverse_square'), Rational(0))


@pytest.mark.unit
def test_close_self_intersections_need_a_winding_parameter(curve_of):
    with pytest.raises(MisuseError):
        close_selfintersections(curve_of('phi3'), Rational(5))
