"""Spacetime algebra: splits, boosts, generators, projectors."""

import random

import pytest

from starga.scalars import (
    C, ONE, ZERO, hyperbolic_relations, substitute, sym,
)
from starga.grassmann import (
    clifford_star, grade_project, grassmann_product, multivectors_equal,
    spacetime_algebra, trace,
)
from starga.geometric import (
    dual_basis, exp_bivector, inner, sandwich, star_many,
)
from starga.spacetime import (
    InvalidSpinVector, NotNormalized, boost, dirac_projector, four_vector,
    lorentz_generators, mass_shell_relations, proper_velocity_split,
    sigma_blades, single_sided_boost, spacetime_split, spin_operator,
    spin_projector,
)

STA = spacetime_algebra()
G = STA.generators()
HBAR, MASS = sym("hbar"), sym("m")
EPS = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
       (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1}


def comm(a, b):
    return clifford_star(a, b) - clifford_star(b, a)


def test_metric_anticommutators():
    for mu in range(4):
        for nu in range(4):
            lhs = clifford_star(G[mu], G[nu]) + clifford_star(G[nu], G[mu])
            assert lhs == STA.scalar(2 * STA.form[mu][nu])


def test_dual_basis():
    assert dual_basis(STA, 0) == G[0]
    for i in (1, 2, 3):
        assert dual_basis(STA, i) == -G[i]
    for mu in range(4):
        for nu in range(4):
            assert inner(G[mu], dual_basis(STA, nu)) \
                == (STA.one() if mu == nu else STA.zero())


def test_spacetime_split():
    t = sym("t")
    assert spacetime_split(four_vector([t, 0, 0, 0])) == (t, STA.zero())
    tc, xv = spacetime_split(G[1])
    assert tc.is_zero() and xv == grassmann_product(G[1], G[0])
    rng = random.Random(1)
    for _ in range(30):
        x = four_vector([C(rng.randint(-4, 4)) for _ in range(4)])
        tc, xv = spacetime_split(x)
        assert clifford_star(x, x).scalar_part() \
            == tc * tc - clifford_star(xv, xv).scalar_part()


def test_sigma_blades():
    sig = sigma_blades()
    for i in range(3):
        for j in range(3):
            dot = grade_project(clifford_star(sig[i], sig[j]), 0).scalar_part()
            assert dot == (ONE if i == j else ZERO)
    assert star_many(*sig) == STA.pseudoscalar()
    i4 = STA.pseudoscalar()
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        antisym = (clifford_star(sig[i], sig[j])
                   - grade_project(clifford_star(sig[i], sig[j]), 0))
        assert antisym == clifford_star(i4, grassmann_product(G[k + 1], G[0]))


def test_proper_velocity_split():
    assert proper_velocity_split(four_vector([1, 0, 0, 0])) == (ONE, STA.zero())
    rel = hyperbolic_relations()
    c, s = sym("c"), sym("s")
    u = G[0] * c + G[1] * s
    u0, uvec = proper_velocity_split(u, rel)
    assert u0 == c
    assert uvec == grassmann_product(G[1], G[0]) * (s / c)
    uvsq = clifford_star(uvec, uvec).scalar_part()
    assert rel.reduce(u0 ** 2 * (1 - uvsq)) == ONE
    with pytest.raises(NotNormalized):
        proper_velocity_split(G[0] * 2)


def test_boost_action_on_the_frame():
    rotor = boost(1)
    rel = rotor.relations
    c, s = sym("c"), sym("s")
    cosh_full, sinh_full = c * c + s * s, 2 * c * s
    assert sandwich(rotor, G[0]).reduce(rel) \
        == (G[0] * cosh_full + G[1] * sinh_full).reduce(rel)
    assert sandwich(rotor, G[1]).reduce(rel) \
        == (G[1] * cosh_full + G[0] * sinh_full).reduce(rel)
    assert sandwich(rotor, G[2]).reduce(rel) == G[2]
    assert sandwich(rotor, G[3]).reduce(rel) == G[3]
    # zero rapidity is the identity
    at_rest = rotor.mv.map_coefficients(lambda co: substitute(co, {"c": 1, "s": 0}))
    assert at_rest == STA.one()
    # gamma (gamma0 + beta gamma1) form with beta = tanh(alpha)
    beta = rel.reduce(sinh_full / cosh_full)
    assert multivectors_equal(sandwich(rotor, G[0]),
                              (G[0] + G[1] * beta) * cosh_full, rel)


def test_single_sided_boost_full_angle():
    mv, _rel = single_sided_boost(1)
    cosh_f, sinh_f = sym("C"), sym("S")
    assert clifford_star(mv, G[0]) == G[0] * cosh_f + G[1] * sinh_f
    assert clifford_star(mv, G[1]) == G[1] * cosh_f + G[0] * sinh_f


def test_boosts_preserve_the_interval():
    rotor = boost(1)
    rel = rotor.relations
    rng = random.Random(2)
    for _ in range(20):
        x = four_vector([C(rng.randint(-4, 4)) for _ in range(4)])
        lhs = clifford_star(sandwich(rotor, x), sandwich(rotor, x)).scalar_part()
        assert rel.reduce(lhs) == rel.reduce(clifford_star(x, x).scalar_part())


def test_boost_composition_adds_rapidities():
    la = boost(1, "c", "s")
    ca, sa, cb, sb = sym("c"), sym("s"), sym("cb"), sym("sb")
    plane = grassmann_product(G[1], G[0])
    lb = STA.scalar(cb) + plane * sb
    prod = clifford_star(la.mv, lb)
    cab, sab = ca * cb + sa * sb, sa * cb + ca * sb
    assert prod == STA.scalar(cab) + plane * sab
    both = la.relations + hyperbolic_relations("cb", "sb")
    assert both.reduce(cab ** 2 - sab ** 2) == ONE
    assert prod.grades() == {0, 2}


def test_lorentz_generator_brackets():
    gen = lorentz_generators()
    sig, K, S = gen["sigma"], gen["K"], gen["S"]
    i4 = STA.pseudoscalar()
    for mu in range(4):
        assert sig[(mu, mu)].is_zero()
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            rhs_ss, rhs_sk, rhs_kk = STA.zero(), STA.zero(), STA.zero()
            for k in (1, 2, 3):
                e = EPS.get((i, j, k))
                if e:
                    rhs_ss = rhs_ss + clifford_star(i4, S[k]) * e
                    rhs_sk = rhs_sk + clifford_star(i4, K[k]) * e
                    rhs_kk = rhs_kk - clifford_star(i4, S[k]) * e
            assert comm(S[i], S[j]) == rhs_ss
            assert comm(S[i], K[j]) == rhs_sk
            assert comm(K[i], K[j]) == rhs_kk


def test_general_transform_reduces_to_the_boost():
    gen = lorentz_generators()
    exponent = clifford_star(STA.pseudoscalar(), gen["sigma"][(0, 1)])
    assert exponent == grassmann_product(G[1], G[0])
    se = exp_bivector(exponent * (sym("alpha") / 2), "c", "s")
    assert se.kind == "hyperbolic"
    assert se.mv == boost(1).mv


def test_parity_flips_the_pseudoscalar():
    assert star_many(G[0], -G[1], -G[2], -G[3]) == -STA.pseudoscalar()


def test_traces():
    assert trace(STA.one()) == C(4)
    for mu in range(4):
        assert trace(G[mu]).is_zero()
        for nu in range(4):
            assert trace(clifford_star(G[mu], G[nu])) == 4 * STA.form[mu][nu]


def test_dirac_projectors_on_shell():
    shell = mass_shell_relations()
    p = four_vector([sym("p0"), sym("p1"), sym("p2"), sym("p3")])
    pi_plus = dirac_projector(p, +1)
    pi_minus = dirac_projector(p, -1)
    assert pi_plus + pi_minus == STA.one()
    assert multivectors_equal(clifford_star(pi_plus, pi_plus), pi_plus, shell)
    assert multivectors_equal(clifford_star(pi_minus, pi_minus), pi_minus, shell)
    assert clifford_star(pi_plus, pi_minus).reduce(shell).is_zero()
    assert clifford_star(p - STA.scalar(MASS), pi_plus).reduce(shell).is_zero()
    assert clifford_star(p + STA.scalar(MASS), pi_minus).reduce(shell).is_zero()


def test_dirac_projector_rest_frame():
    pi = dirac_projector(G[0] * MASS, +1)
    assert pi == (STA.one() + G[0]) / 2
    assert clifford_star(pi, pi) == pi


def test_spin_operator_and_projector():
    s_vec = G[3]
    p_rest = G[0] * MASS
    op = spin_operator(s_vec)
    assert clifford_star(op, op) == STA.scalar(HBAR ** 2 / 4)
    assert comm(op, p_rest - STA.scalar(MASS)).is_zero()
    assert comm(op, p_rest + STA.scalar(MASS)).is_zero()
    pi_up = spin_projector(s_vec, +1, p_rest)
    pi_dn = spin_projector(s_vec, -1, p_rest)
    assert pi_up + pi_dn == STA.one()
    assert clifford_star(op, pi_up) == pi_up * (HBAR / 2)
    assert clifford_star(op, pi_dn) == pi_dn * (-HBAR / 2)
    assert clifford_star(pi_up, pi_up) == pi_up
    total = clifford_star(dirac_projector(p_rest, +1), pi_up)
    assert clifford_star(total, total) == total


def test_spin_vector_validation():
    with pytest.raises(InvalidSpinVector):
        spin_projector(G[0], +1, G[0] * MASS)  # timelike, square +1
    with pytest.raises(InvalidSpinVector):
        spin_projector(G[3], +1, G[3] * MASS)  # not orthogonal to p
