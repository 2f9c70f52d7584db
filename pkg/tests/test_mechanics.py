"""Phase-space algebra, the quadratic spinor map, and orbit integration."""

import math
import random
from fractions import Fraction

import pytest

from starga.scalars import C, ONE, ZERO, sym
from starga.grassmann import (
    clifford_star, grade_project, grassmann_product, involution,
    phase_space_algebra, sigma_algebra,
)
from starga.geometric import inner
from starga.moyal import correspondence_order, phase_pairs, poisson_bracket
from starga.mechanics import (
    InvalidOrbitParams, UnknownKind, compare_methods, constraint_expression,
    eta, gradient, hamilton_field, kepler_integrate, kepler_run, ks_map,
    ks_matrix, ks_position, ks_spinor, mat_vec, poisson_ga,
    regularize_hamiltonian, rho, symplectic_bivector,
)
from conftest import random_phase_polynomial, shared_bracket_test_set


def test_symplectic_bivector():
    ps1 = phase_space_algebra(1)
    j = symplectic_bivector(ps1)
    assert j == grassmann_product(eta(ps1, 0), rho(ps1, 0))
    assert inner(eta(ps1, 0), j) == rho(ps1, 0)
    assert inner(j, rho(ps1, 0)) == eta(ps1, 0)
    ps3 = phase_space_algebra(3)
    j3 = symplectic_bivector(ps3)
    assert inner(j3, rho(ps3, 1)) == eta(ps3, 1)
    assert grade_project(clifford_star(j3, j3), 0) == ps3.scalar(-3)


def test_hamilton_field_oscillator():
    ps1 = phase_space_algebra(1)
    m, omega = sym("m"), sym("omega")
    q, p = sym("q1"), sym("p1")
    h = p ** 2 / (2 * m) + m * omega ** 2 * q ** 2 / 2
    assert hamilton_field(h, ps1) \
        == eta(ps1, 0) * (p / m) - rho(ps1, 0) * (m * omega ** 2 * q)
    assert hamilton_field(C(7), ps1).is_zero()


def test_flow_reproduces_the_poisson_bracket():
    ps1 = phase_space_algebra(1)
    rng = random.Random(5)
    for _ in range(30):
        f = random_phase_polynomial(rng, 1, 3)
        h = random_phase_polynomial(rng, 1, 3)
        xdot = hamilton_field(h, ps1)
        fdot = inner(xdot, gradient(f, ps1)).scalar_part()
        assert fdot == poisson_bracket(f, h, phase_pairs(1))


def test_poisson_ga_on_the_shared_test_set():
    # the frame-contraction route and the deformation route must agree on the
    # same polynomial pairs
    ps2 = phase_space_algebra(2)
    pairs = phase_pairs(2)
    for f, g in shared_bracket_test_set(count=200):
        pb = poisson_ga(f, g, ps2)
        assert pb == poisson_bracket(f, g, pairs)
        assert pb == correspondence_order(f, g, pairs)
    q, p = sym("q1"), sym("p1")
    assert poisson_ga(q, p, ps2) == ONE
    assert poisson_ga(q * p, q * p, ps2).is_zero()


def test_ks_position_unit_cases():
    res = ks_position([1, 0, 0, 0])
    assert res.consistent
    assert res.vector == (ONE, ZERO, ZERO)
    res = ks_position([0, 1, 0, 0])
    assert res.consistent and res.vector == (ONE, ZERO, ZERO)
    res = ks_position([0, 0, 1, 0])
    assert res.vector == (C(-1), ZERO, ZERO)


def test_ks_position_random_rational_spinors():
    rng = random.Random(9)
    for _ in range(100):
        u = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)]
        res = ks_position(u)
        assert res.consistent
        assert res.matrix_vector[3].is_zero()
        assert res.pseudoscalar_part.is_zero()


def test_ks_radius_identity():
    u = [sym(f"u{i}") for i in range(1, 5)]
    res = ks_position(u)
    u_sq = u[0] ** 2 + u[1] ** 2 + u[2] ** 2 + u[3] ** 2
    spinor = ks_spinor(u)
    assert clifford_star(spinor, involution(spinor)) == sigma_algebra(3).scalar(u_sq)
    r_sq = sum((comp ** 2 for comp in res.vector), ZERO)
    assert r_sq == u_sq ** 2


@pytest.mark.parametrize("kind", ["velocity", "inverse_velocity", "momentum",
                                  "p4", "constraint"])
def test_ks_map_identities(kind):
    assert ks_map(kind)["consistent"]


def test_ks_map_momentum_prefactors():
    result = ks_map("momentum")
    r = sum((sym(f"u{i}") ** 2 for i in range(1, 5)), ZERO)
    assert result["ga_prefactor_inverse"] == 4 * r
    assert result["matrix_prefactor_inverse"] == 2 * r
    w_sq = sum((sym(f"w{i}") ** 2 for i in range(1, 5)), ZERO)
    assert result["momentum_square"] == w_sq / (4 * r) - result["p4"] ** 2


def test_ks_map_unknown_kind():
    with pytest.raises(UnknownKind):
        ks_map("nonsense")


def test_constraint_expression_matches_matrix_row():
    u = [sym(f"u{i}") for i in range(1, 5)]
    udot = [sym(f"udot{i}") for i in range(1, 5)]
    assert constraint_expression(u, udot) == mat_vec(ks_matrix(u), udot)[3]


def test_regularized_chain():
    chain = regularize_hamiltonian()
    m, k, r, p0 = sym("m"), sym("k"), sym("r"), sym("p0")
    p_sq = sym("p1") ** 2 + sym("p2") ** 2 + sym("p3") ** 2
    assert chain.h_kepler == p_sq / (2 * m) - k / r
    assert chain.h_homogeneous == chain.h_kepler + p0
    assert chain.h_fictitious == r * chain.h_homogeneous
    assert chain.dq0_ds == r
    w_sq = sum((sym(f"w{i}") ** 2 for i in range(1, 5)), ZERO)
    u_sq = sum((sym(f"u{i}") ** 2 for i in range(1, 5)), ZERO)
    assert chain.h_oscillator == w_sq / (8 * m) + sym("Eabs") * u_sq - k
    assert chain.frequency_squared == sym("Eabs") / (2 * m)
    # oscillator reading: mass 4m, frequency sqrt(|E|/2m)
    big_m = 4 * m
    assert chain.h_oscillator + k \
        == w_sq / (2 * big_m) + big_m * chain.frequency_squared / 2 * u_sq


def test_h4_flow_equations_match_the_integrator():
    # the Hamilton field of the regularised oscillator is exactly the system
    # the numeric layer integrates: du/ds = w/4m, dw/ds = -2 |E| u
    chain = regularize_hamiltonian()
    ps4 = phase_space_algebra(4)
    pairs = [(f"u{i}", f"w{i}") for i in range(1, 5)]
    field = hamilton_field(chain.h_oscillator, ps4, pairs)
    m = sym("m")
    expected = ps4.zero()
    for n in range(4):
        expected = expected + eta(ps4, n) * (sym(f"w{n+1}") / (4 * m)) \
            - rho(ps4, n) * (2 * sym("Eabs") * sym(f"u{n+1}"))
    assert field == expected


def test_oscillation_plane_constraint():
    # a grade-1 oscillation a * exp(i w t) forces the component of a outside
    # the plane of the unit bivector to vanish
    sg = sigma_algebra(3)
    a1, a2, a3 = sym("a1"), sym("a2"), sym("a3")
    a = sg.vector([a1, a2, a3])
    i12 = grassmann_product(sg.generator(0), sg.generator(1))
    c, s = sym("c"), sym("s")
    q = clifford_star(a, sg.scalar(c) + i12 * s)
    trivector = grade_project(q, 3)
    assert trivector == sg.blade([0, 1, 2], a3 * s)
    constrained = q.map_coefficients(
        lambda co: co if not co.contains_symbol("a3") else co * ZERO)
    # dropping a3 (i.e. a inside the plane) leaves a grade-1 trajectory
    assert grade_project(constrained, 3).is_zero()
    assert constrained.grades() <= {1}


def test_orbit_parameter_validation():
    for bad in ((-0.1, 1.0, 10, 1), (1.0, 1.0, 10, 1), (0.5, -1.0, 10, 1),
                (0.5, 1.0, 0, 1), (0.5, 1.0, 10, 0)):
        with pytest.raises(InvalidOrbitParams):
            kepler_run("ks", *bad)
    with pytest.raises(InvalidOrbitParams):
        kepler_run("verlet", 0.5, 1.0, 10, 1)


def test_circular_orbits_keep_their_radius():
    # ten orbits at 1e4 steps/orbit: radius constant to < 1e-9 relative
    for method in ("newton", "ks"):
        states = kepler_integrate(method, 0.0, 1.0, 10000, 10, sample_every=50)
        radii = [math.sqrt(sum(c * c for c in st.x)) for st in states]
        assert max(abs(r - 1.0) for r in radii) < 1e-9
        assert states[-1].energy_drift < 1e-10


def test_circular_orbit_matches_analytic_solution():
    states = kepler_integrate("newton", 0.0, 1.0, 4000, 1)
    for st in states[:: len(states) // 7]:
        assert abs(st.x[0] - math.cos(st.t)) < 1e-9
        assert abs(st.x[1] - math.sin(st.t)) < 1e-9


def test_methods_agree_at_matched_times():
    result = compare_methods(0.6, 1.0, 3000, 2)
    assert result["max_relative_position_error"] < 1e-6


def test_regularisation_beats_direct_integration_at_high_eccentricity():
    result = compare_methods(0.99, 1.0, 2000, 2)
    assert result["ks"]["final_drift"] < result["newton"]["final_drift"]
    assert result["ks"]["oscillator_invariant_drift"] < 1e-9


def test_fictitious_time_tracks_radius():
    # dt/ds = r: across one bound orbit the elapsed t must equal the orbit
    # period while s spans 2 pi sqrt(a)
    states = kepler_integrate("ks", 0.3, 1.0, 4000, 1)
    assert abs(states[-1].s - 2 * math.pi) < 1e-12
    assert abs(states[-1].t - 2 * math.pi) < 1e-8
