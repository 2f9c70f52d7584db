"""Spacetime algebra on the (+,-,-,-) metric: splits, boosts, Lorentz
generators, and the energy/spin projectors of the relativistic theory.

Boosts are labelled by the spatial direction they mix with the time axis;
the rotor for rapidity alpha is exp(alpha gamma_i gamma_0 / 2), expressed in
half-angle symbols (c, s) carrying the hyperbolic relation c^2 - s^2 = 1.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .scalars import (
    C, I, ONE, RelationSet, hyperbolic_relations, on_shell_relations, sym,
)
from .grassmann import (
    AlgebraError, AlgebraSpec, Multivector, clifford_star, grade_project,
    grassmann_product, spacetime_algebra,
)
from .geometric import Rotor, exp_bivector, inner


class NotNormalized(AlgebraError):
    """Proper velocities must have unit star square."""


class InvalidSpinVector(AlgebraError):
    """Spin vectors must be spacelike unit and orthogonal to the momentum."""


def gammas(algebra: Optional[AlgebraSpec] = None) -> list:
    alg = algebra if algebra is not None else spacetime_algebra()
    return alg.generators()


def four_vector(components: Sequence, algebra: Optional[AlgebraSpec] = None) -> Multivector:
    alg = algebra if algebra is not None else spacetime_algebra()
    return alg.vector([C(x) for x in components])


# ---------------------------------------------------------------------------
# splits
# ---------------------------------------------------------------------------

def spacetime_split(x: Multivector) -> tuple:
    """x * gamma0 = t + xvec: (time component, relative-vector bivector)."""
    alg = x.algebra
    prod = clifford_star(x, alg.generator(0))
    return prod.scalar_part(), grade_project(prod, 2)


def sigma_blades(algebra: Optional[AlgebraSpec] = None) -> list:
    """The relative-frame vectors gamma_i gamma_0, i = 1..3."""
    alg = algebra if algebra is not None else spacetime_algebra()
    return [grassmann_product(alg.generator(i), alg.generator(0))
            for i in (1, 2, 3)]


def proper_velocity_split(u: Multivector,
                          relations: Optional[RelationSet] = None) -> tuple:
    """(gamma factor, relative velocity) of a unit four-velocity.

    Raises NotNormalized unless u * u reduces to 1 under the given relations.
    """
    alg = u.algebra
    sq = clifford_star(u, u).reduce(relations)
    if not sq == alg.scalar(1):
        raise NotNormalized(f"u has star square {sq}")
    u0, uvec = spacetime_split(u)
    if u0.is_zero():
        raise NotNormalized("vanishing time component")
    return u0, (uvec * (ONE / u0)).reduce(relations)


# ---------------------------------------------------------------------------
# boosts and generators
# ---------------------------------------------------------------------------

def boost(direction: int, cosh_symbol: str = "c",
          sinh_symbol: str = "s") -> Rotor:
    """Rotor exp(alpha gamma_i gamma_0 / 2) for a boost along direction i.

    The symbols (c, s) stand for cosh(alpha/2), sinh(alpha/2); full-angle
    functions appear as c^2 + s^2 and 2 c s after a sandwich.
    """
    if direction not in (1, 2, 3):
        raise AlgebraError("boost direction must be 1, 2 or 3")
    alg = spacetime_algebra()
    plane = grassmann_product(alg.generator(direction), alg.generator(0))
    relations = hyperbolic_relations(cosh_symbol, sinh_symbol)
    mv = alg.scalar(sym(cosh_symbol)) + plane * sym(sinh_symbol)
    return Rotor(mv, relations)


def boost_half_angle_relations(cosh_symbol: str = "c",
                               sinh_symbol: str = "s") -> RelationSet:
    return hyperbolic_relations(cosh_symbol, sinh_symbol)


def single_sided_boost(direction: int, cosh_symbol: str = "C",
                       sinh_symbol: str = "S") -> tuple:
    """exp(alpha gamma_i gamma_0) with full-angle symbols, and its relations."""
    alg = spacetime_algebra()
    plane = grassmann_product(alg.generator(direction), alg.generator(0))
    se = exp_bivector(plane * sym("alpha"), cosh_symbol, sinh_symbol)
    return se.mv, se.relations


def lorentz_generators(algebra: Optional[AlgebraSpec] = None) -> dict:
    """sigma_mu_nu = (I4/2) [gamma_mu, gamma_nu]*, boosts K_i, rotations S_i."""
    alg = algebra if algebra is not None else spacetime_algebra()
    i4 = alg.pseudoscalar()
    sig = {}
    for mu in range(4):
        for nu in range(4):
            comm = clifford_star(alg.generator(mu), alg.generator(nu)) \
                - clifford_star(alg.generator(nu), alg.generator(mu))
            sig[(mu, nu)] = clifford_star(i4 * C(1) / 2, comm)
    boosts = {i: sig[(0, i)] / 2 for i in (1, 2, 3)}
    eps = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
           (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1}
    rotations = {}
    for i in (1, 2, 3):
        total = alg.zero()
        for j in (1, 2, 3):
            for k in (1, 2, 3):
                if j < k and (i, j, k) in eps:
                    total = total + sig[(j, k)] * eps[(i, j, k)]
        rotations[i] = total / 2
    return {"sigma": sig, "K": boosts, "S": rotations}


# ---------------------------------------------------------------------------
# projectors
# ---------------------------------------------------------------------------

def dirac_projector(p: Multivector, sign: int) -> Multivector:
    """(pm p + m)/2m; idempotent once the on-shell relation p^2* = m^2 holds."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    alg = p.algebra
    m = sym("m")
    return (p * sign + alg.scalar(m)) * (ONE / (2 * m))


def mass_shell_relations() -> RelationSet:
    return on_shell_relations("p0", "m", ("p1", "p2", "p3"))


def spin_operator(s: Multivector) -> Multivector:
    """S_s = (hbar/2) gamma5 * s with gamma5 = i I4."""
    alg = s.algebra
    gamma5 = alg.pseudoscalar() * I
    return clifford_star(gamma5, s) * (sym("hbar") / 2)


def spin_projector(s: Multivector, sign: int, p: Multivector,
                   relations: Optional[RelationSet] = None) -> Multivector:
    """1/2 pm S_s/hbar for a spin vector with s^2* = -1 and s . p = 0."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    alg = s.algebra
    s_sq = clifford_star(s, s).reduce(relations)
    if not s_sq == alg.scalar(-1):
        raise InvalidSpinVector(f"s has star square {s_sq}, need -1")
    orth = inner(s, p).reduce(relations)
    if not orth.is_zero():
        raise InvalidSpinVector(f"s . p = {orth}, need 0")
    return alg.scalar(C(1) / 2) + spin_operator(s) * (sign / sym("hbar"))
