"""Clifford star product core: anticommutators, grades, involution, traces."""

import random

import pytest

from starga.scalars import C, I, ONE, ZERO, sym
from starga.grassmann import (
    AlgebraMismatch, AsymmetricForm, GradeOutOfRange, algebra_new, berezin,
    clifford_star, grade_project, grassmann_product, hodge_dual, involution,
    pauli_function, phase_space_algebra, sigma_algebra, spacetime_algebra,
    theta_algebra, trace,
)
from conftest import random_multivector, random_homogeneous

EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
       (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


def anti(a, b):
    return clifford_star(a, b) + clifford_star(b, a)


def comm(a, b):
    return clifford_star(a, b) - clifford_star(b, a)


def test_algebra_constructors():
    th = theta_algebra(3)
    assert th.dimension == 3 and th.names == ("theta1", "theta2", "theta3")
    assert th.form[0][0] == sym("hbar") / 2
    sg = sigma_algebra(3)
    assert sg.form[1][1] == ONE
    sta = spacetime_algebra()
    assert sta.form[0][0] == ONE and sta.form[2][2] == C(-1)
    ps = phase_space_algebra(2)
    assert ps.dimension == 4 and ps.names[2] == "rho1"


def test_asymmetric_form_rejected():
    with pytest.raises(AsymmetricForm):
        algebra_new(2, ["a", "b"], [[1, 1], [0, 1]])


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        clifford_star(sigma_algebra(3).generator(0), theta_algebra(3).generator(0))


def test_theta_anticommutators():
    th = theta_algebra(3)
    hbar = sym("hbar")
    for i in range(3):
        for j in range(3):
            expected = th.scalar(hbar if i == j else ZERO)
            assert anti(th.generator(i), th.generator(j)) == expected
    assert clifford_star(th.generator(0), th.generator(0)) == th.scalar(hbar / 2)


def test_sigma_and_gamma_anticommutators():
    sg = sigma_algebra(3)
    for i in range(3):
        for j in range(3):
            assert anti(sg.generator(i), sg.generator(j)) \
                == sg.scalar(C(2) if i == j else ZERO)
    sta = spacetime_algebra()
    for mu in range(4):
        for nu in range(4):
            assert anti(sta.generator(mu), sta.generator(nu)) \
                == sta.scalar(2 * sta.form[mu][nu])


def test_vector_star_product_in_two_dimensions():
    sg2 = sigma_algebra(2)
    a1, a2, b1, b2 = (sym(n) for n in ("a1", "a2", "b1", "b2"))
    a = sg2.vector([a1, a2])
    b = sg2.vector([b1, b2])
    expected = sg2.scalar(a1 * b1 + a2 * b2) + sg2.blade([0, 1], a1 * b2 - a2 * b1)
    assert clifford_star(a, b) == expected


def test_identity_element():
    th = theta_algebra(3)
    rng = random.Random(1)
    for _ in range(20):
        a = random_multivector(rng, th)
        assert clifford_star(th.one(), a) == a
        assert clifford_star(a, th.one()) == a


@pytest.mark.parametrize("algebra_factory", [
    lambda: theta_algebra(3), lambda: sigma_algebra(3),
    spacetime_algebra, lambda: phase_space_algebra(2)])
def test_associativity_per_algebra(algebra_factory):
    alg = algebra_factory()
    rng = random.Random(42)
    for _ in range(200):
        a = random_multivector(rng, alg)
        b = random_multivector(rng, alg)
        c = random_multivector(rng, alg)
        assert clifford_star(clifford_star(a, b), c) \
            == clifford_star(a, clifford_star(b, c))


def test_pauli_closure():
    th = theta_algebra(3)
    sigma = [pauli_function(i, th) for i in range(3)]
    for i in range(3):
        for j in range(3):
            expected = th.zero()
            for k in range(3):
                e = EPS.get((i, j, k))
                if e:
                    expected = expected + sigma[k] * (2 * I * e)
            assert comm(sigma[i], sigma[j]) == expected
            assert anti(sigma[i], sigma[j]) \
                == th.scalar(C(2) if i == j else ZERO)


def test_grade_projection():
    sg = sigma_algebra(3)
    s1, s2 = sg.generator(0), sg.generator(1)
    a = sg.one() + s1 + grassmann_product(s1, s2)
    assert grade_project(a, 1) == s1
    assert grade_project(clifford_star(s1, s2), 0).is_zero()
    total = sg.zero()
    for n in range(4):
        total = total + grade_project(a, n)
    assert total == a
    with pytest.raises(GradeOutOfRange):
        grade_project(a, 4)


def test_product_grades_stay_in_the_allowed_ladder():
    rng = random.Random(8)
    for alg in (sigma_algebra(3), spacetime_algebra()):
        d = alg.dimension
        for _ in range(100):
            r, s = rng.randint(0, d), rng.randint(0, d)
            a = random_homogeneous(rng, alg, r)
            b = random_homogeneous(rng, alg, s)
            allowed = set(range(abs(r - s), min(r + s, 2 * d - r - s) + 1, 2))
            assert clifford_star(a, b).grades() <= allowed


def test_involution():
    th = theta_algebra(3)
    t12 = grassmann_product(th.generator(0), th.generator(1))
    assert involution(t12) == -t12
    for i in range(3):
        assert involution(pauli_function(i, th)) == pauli_function(i, th)
    sg = sigma_algebra(3)
    assert involution(sg.pseudoscalar()) == -sg.pseudoscalar()
    # antiautomorphism and complex conjugation of scalars
    a = th.generator(0) * (2 * I)
    assert involution(a) == th.generator(0) * (-2 * I)
    rng = random.Random(4)
    for alg in (th, sg, spacetime_algebra()):
        for _ in range(200):
            x = random_multivector(rng, alg)
            y = random_multivector(rng, alg)
            assert involution(involution(x)) == x
            assert involution(clifford_star(x, y)) \
                == clifford_star(involution(y), involution(x))


def test_hodge_dual():
    th = theta_algebra(3)
    t1, t2, t3 = th.generators()
    assert hodge_dual(t1) == grassmann_product(t2, t3)
    assert hodge_dual(th.one()) == th.pseudoscalar()
    assert hodge_dual(th.pseudoscalar()) == th.one()
    assert hodge_dual(t2) == grassmann_product(t3, t1)


def test_berezin():
    th = theta_algebra(3)
    hbar = sym("hbar")
    top = th.blade([0, 1, 2])
    assert berezin(top) == hbar ** 3
    assert berezin(sigma_algebra(3).pseudoscalar()) == ONE
    assert berezin(th.one()) == ZERO


def test_trace_rules():
    th = theta_algebra(3)
    sigma = [pauli_function(i, th) for i in range(3)]
    assert trace(th.one()) == C(2)
    for i in range(3):
        assert trace(sigma[i]).is_zero()
        for j in range(3):
            assert trace(clifford_star(sigma[i], sigma[j])) \
                == (C(2) if i == j else ZERO)
    sta = spacetime_algebra()
    assert trace(sta.one()) == C(4)
    for mu in range(4):
        assert trace(sta.generator(mu)).is_zero()
        for nu in range(4):
            assert trace(clifford_star(sta.generator(mu), sta.generator(nu))) \
                == 4 * sta.form[mu][nu]


def test_trace_is_cyclic():
    rng = random.Random(6)
    for alg in (theta_algebra(3), sigma_algebra(3), spacetime_algebra()):
        for _ in range(100):
            a = random_multivector(rng, alg)
            b = random_multivector(rng, alg)
            assert trace(clifford_star(a, b)) == trace(clifford_star(b, a))


def test_trace_agrees_with_scalar_part_rule():
    rng = random.Random(7)
    for alg in (theta_algebra(3), sigma_algebra(3), spacetime_algebra()):
        norm = C(2) ** (alg.dimension // 2)
        for _ in range(30):
            a = random_multivector(rng, alg)
            assert trace(a) == norm * a.scalar_part()


def test_symbolic_form_entries_flow_into_coefficients():
    th = theta_algebra(2)
    hbar = sym("hbar")
    t1, t2 = th.generators()
    prod = clifford_star(grassmann_product(t1, t2), grassmann_product(t1, t2))
    assert prod == th.scalar(-hbar ** 2 / 4)


def test_multivector_printing():
    sg = sigma_algebra(3)
    mv = sg.one() + sg.generator(0) * 2 - sg.blade([0, 1])
    assert str(mv) == "1 + 2 sigma1 - sigma1 sigma2"
    assert str(sg.zero()) == "0"
