"""Shared test helpers: seeded random scalars, multivectors and polynomials."""

from __future__ import annotations

import random

from starga.scalars import C, Coefficient, sym
from starga.grassmann import AlgebraSpec, Multivector


def random_coefficient(rng: random.Random, symbols, max_terms=3, max_factors=2) -> Coefficient:
    total = C(0)
    for _ in range(rng.randint(1, max_terms)):
        term = C(rng.randint(-4, 4))
        for _ in range(rng.randint(0, max_factors)):
            term = term * sym(rng.choice(symbols))
        total = total + term
    return total


def random_rational_function(rng: random.Random, symbols) -> Coefficient:
    num = random_coefficient(rng, symbols)
    den = random_coefficient(rng, symbols)
    while den.is_zero():
        den = random_coefficient(rng, symbols)
    return num / den


def random_multivector(rng: random.Random, algebra: AlgebraSpec,
                       max_blades=3, coeff_range=4) -> Multivector:
    mv = algebra.zero()
    for _ in range(rng.randint(1, max_blades)):
        mask = rng.randrange(1 << algebra.dimension)
        c = rng.randint(-coeff_range, coeff_range)
        mv = mv + Multivector(algebra, {mask: C(c if c else 1)})
    return mv


def random_homogeneous(rng: random.Random, algebra: AlgebraSpec, grade: int) -> Multivector:
    masks = [m for m in range(1 << algebra.dimension)
             if bin(m).count("1") == grade]
    mv = algebra.zero()
    for _ in range(2):
        c = rng.randint(1, 4)
        mv = mv + Multivector(algebra, {rng.choice(masks): C(c)})
    return mv


def random_phase_polynomial(rng: random.Random, dimension: int,
                            max_degree: int = 4) -> Coefficient:
    names = [f"q{i+1}" for i in range(dimension)] + \
            [f"p{i+1}" for i in range(dimension)]
    total = C(0)
    for _ in range(rng.randint(1, 4)):
        term = C(rng.randint(-3, 3))
        for _ in range(rng.randint(0, max_degree)):
            term = term * sym(rng.choice(names))
        total = total + term
    return total


def shared_bracket_test_set(count: int = 200, dimension: int = 2,
                            seed: int = 2024) -> list:
    """The polynomial pair set used by both Poisson-bracket routes."""
    rng = random.Random(seed)
    return [(random_phase_polynomial(rng, dimension),
             random_phase_polynomial(rng, dimension))
            for _ in range(count)]
