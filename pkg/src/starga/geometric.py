"""Geometric-algebra operations on top of the Clifford star product.

Grade conventions: the inner and outer products of homogeneous multivectors
are the lowest- and highest-grade projections of their star product.  The
inner product with a scalar factor is defined to be zero (the contraction
convention); the outer product with a scalar is ordinary scaling.  Rotors are
constructed, never decomposed: there is no rotor logarithm here.

Basic 2-blades are stored in ascending index order; quantities like the unit
area elements of a right-handed frame are derived values (duals of the basis
vectors), not storage conventions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .scalars import (
    Coefficient, ONE, RelationSet, ZERO, circular_relations,
    hyperbolic_relations, sym,
)
from .grassmann import (
    AlgebraError, AlgebraSpec, Multivector, clifford_star, grade_project,
    involution, star_many,
)


class NonUnitVector(AlgebraError):
    """A reflection/rotor constructor needs exact unit vectors."""


class NotInvertible(AlgebraError):
    """The element has no star-product inverse of versor type."""


class NotDecomposable(AlgebraError):
    """Bivector exponential needs a star-square that is an exact scalar square."""


# ---------------------------------------------------------------------------
# graded products
# ---------------------------------------------------------------------------

def graded_products(a: Multivector, b: Multivector) -> tuple:
    """(inner, outer) products, distributed over homogeneous parts."""
    a._check(b)
    inner = a.algebra.zero()
    outer = a.algebra.zero()
    d = a.algebra.dimension
    for r in a.grades():
        ar = grade_project(a, r)
        for s in b.grades():
            bs = grade_project(b, s)
            prod = clifford_star(ar, bs)
            if r and s:
                inner = inner + grade_project(prod, abs(r - s))
            if r + s <= d:
                outer = outer + grade_project(prod, r + s)
    return inner, outer


def inner(a: Multivector, b: Multivector) -> Multivector:
    return graded_products(a, b)[0]


def outer(a: Multivector, b: Multivector) -> Multivector:
    return graded_products(a, b)[1]


def scalar_product(a: Multivector, b: Multivector) -> Coefficient:
    """Grade-0 part of a * b."""
    return clifford_star(a, b).scalar_part()


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def star_inverse(a: Multivector) -> Multivector:
    """Inverse of a versor/invertible blade: involution(a) / (a * involution(a))."""
    rev = involution(a)
    norm = clifford_star(a, rev)
    if not norm.is_scalar() or norm.scalar_part().is_zero():
        raise NotInvertible("element has no versor-type inverse")
    return rev / norm.scalar_part()


def dual(a: Multivector) -> Multivector:
    """I_d * a (star multiplication by the pseudoscalar)."""
    return clifford_star(a.algebra.pseudoscalar(), a)


def dual_basis(algebra: AlgebraSpec, j: int) -> Multivector:
    """The reciprocal basis vector for generator j (0-based index): the
    complement blade, alternating sign, star-divided by the pseudoscalar."""
    if not 0 <= j < algebra.dimension:
        raise AlgebraError(f"generator index {j} out of range")
    rest = [i for i in range(algebra.dimension) if i != j]
    blade = algebra.blade(rest, 1 if j % 2 == 0 else -1)
    return clifford_star(blade, star_inverse(algebra.pseudoscalar()))


# ---------------------------------------------------------------------------
# reflections and rotors
# ---------------------------------------------------------------------------

def _require_unit(u: Multivector, relations: Optional[RelationSet]) -> None:
    if u.grades() not in ({1}, set()):
        raise NonUnitVector("expected a grade-1 vector")
    sq = clifford_star(u, u).reduce(relations)
    if not sq == u.algebra.scalar(1):
        raise NonUnitVector(f"vector has star square {sq}, not 1")


def reflect(x: Multivector, u: Multivector,
            relations: Optional[RelationSet] = None) -> Multivector:
    """-u * x * u: reflection at the plane with unit normal u."""
    _require_unit(u, relations)
    return -star_many(u, x, u)


@dataclass(frozen=True)
class Rotor:
    """Even-grade multivector U with U * involution(U) = 1."""

    mv: Multivector
    relations: Optional[RelationSet] = field(default=None, compare=False)

    def __post_init__(self):
        if any(g % 2 for g in self.mv.grades()):
            raise NotInvertible("rotor must have even grade support")
        norm = clifford_star(self.mv, involution(self.mv)).reduce(self.relations)
        if not norm == self.mv.algebra.scalar(1):
            raise NotInvertible(f"U * rev(U) = {norm}, not 1")

    @property
    def reverse(self) -> Multivector:
        return involution(self.mv)


def rotor_from(v: Multivector, u: Multivector,
               relations: Optional[RelationSet] = None) -> Rotor:
    """Rotor of the double reflection through unit vectors u then v: U = v * u."""
    _require_unit(u, relations)
    _require_unit(v, relations)
    return Rotor(clifford_star(v, u), relations)


def sandwich(rotor, x: Multivector) -> Multivector:
    """U * x * involution(U)."""
    mv = rotor.mv if isinstance(rotor, Rotor) else rotor
    return star_many(mv, x, involution(mv))


# ---------------------------------------------------------------------------
# bivector exponentials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StarExponential:
    """Closed form of exp_*(A) for a bivector with scalar star square.

    ``mv`` is c + (s/|A|) A with fresh symbols (c, s) meaning the matching
    circular or hyperbolic function pair of the magnitude |A|; ``relations``
    carries the defining identity (c^2 + s^2 = 1 or c^2 - s^2 = 1).  The
    nilpotent and constant cases come back exact with no symbols at all.
    """

    mv: Multivector
    relations: Optional[RelationSet]
    magnitude: Coefficient
    kind: str

    @property
    def rotor(self) -> Rotor:
        return Rotor(self.mv, self.relations)


def exp_bivector(a: Multivector, cos_symbol: str = "c",
                 sin_symbol: str = "s") -> StarExponential:
    """Star exponential of a grade-2 multivector whose star square is scalar.

    The square must be an exact square of a Coefficient (its square root
    fixes the rotation/boost magnitude); otherwise NotDecomposable.
    """
    alg = a.algebra
    if a.is_zero():
        return StarExponential(alg.one(), None, ZERO, "constant")
    if a.grades() != {2}:
        raise NotDecomposable("argument must be a pure bivector")
    sq = clifford_star(a, a)
    if not sq.is_scalar():
        raise NotDecomposable(f"star square is not scalar: {sq}")
    c2 = sq.scalar_part()
    if c2.is_zero():
        return StarExponential(alg.one() + a, None, ZERO, "nilpotent")
    cs, ss = sym(cos_symbol), sym(sin_symbol)
    mag = _real_sqrt(-c2)
    if mag is not None:
        # circular case: A*A = -|A|^2
        rel = circular_relations(cos_symbol, sin_symbol)
        kind = "circular"
    else:
        mag = _real_sqrt(c2)
        if mag is None:
            raise NotDecomposable(
                "star square is not an exact scalar square; cannot extract the angle")
        rel = hyperbolic_relations(cos_symbol, sin_symbol)
        kind = "hyperbolic"
    mv = alg.scalar(cs) + a * (ss / mag)
    return StarExponential(mv, rel, mag, kind)


def _real_sqrt(c2: Coefficient) -> Optional[Coefficient]:
    root = c2.sqrt()
    if root is None:
        return None
    real = all(not qc.im for qc in root.num.terms.values()) and \
        all(not qc.im for qc in root.den.terms.values())
    return root if real else None


# ---------------------------------------------------------------------------
# plane decomposition
# ---------------------------------------------------------------------------

def plane_split(x: Multivector, a: Multivector) -> tuple:
    """Split a vector into components in and out of the plane of bivector a:
    x_par anticommutes with a under star, x_perp commutes."""
    if x.grades() not in ({1}, set()):
        raise AlgebraError("plane_split expects a grade-1 vector")
    a_inv = star_inverse(a)
    prod = clifford_star(x, a)
    x_par = clifford_star(grade_project(prod, 1), a_inv)
    x_perp = clifford_star(grade_project(prod, 3), a_inv)
    return x_par, x_perp


# ---------------------------------------------------------------------------
# vector derivative
# ---------------------------------------------------------------------------

def vector_derivative(f: Multivector,
                      coordinates: Sequence[str] = ("x1", "x2", "x3")) -> Multivector:
    """nabla * f for a grade-1 field with components in the given coordinate
    symbols: scalar part is the divergence, bivector part the dual curl."""
    alg = f.algebra
    if len(coordinates) != alg.dimension:
        raise AlgebraError("need one coordinate symbol per generator")
    if f.grades() not in ({1}, set()):
        raise AlgebraError("vector_derivative expects a grade-1 field")
    result = alg.zero()
    for i, xi in enumerate(coordinates):
        gi = alg.generator(i)
        df = f.map_coefficients(lambda c: c.diff(xi))
        result = result + clifford_star(gi, df)
    return result


# ---------------------------------------------------------------------------
# Wick expansion
# ---------------------------------------------------------------------------

def wick_expand(indices: Sequence[int], algebra: AlgebraSpec) -> Multivector:
    """n-fold star product of basis vectors as a sum over pair contractions.

    Every way of contracting disjoint index pairs contributes the product of
    form entries times the Grassmann monomial of the surviving vectors, with
    the parity of moving contracted pairs to the front.
    """
    n = len(indices)
    for i in indices:
        if not 0 <= i < algebra.dimension:
            raise AlgebraError(f"generator index {i} out of range")
    total = algebra.zero()
    for pairing in _pairings(tuple(range(n))):
        coeff = ONE
        order = []
        for a, b in pairing:
            entry = algebra.form[indices[a]][indices[b]]
            coeff = coeff * entry
            order.extend((a, b))
        if coeff.is_zero():
            continue
        singles = [i for i in range(n) if i not in order]
        sign = _permutation_sign(tuple(order + singles))
        rest = algebra.blade([indices[i] for i in singles], coeff * sign)
        total = total + rest
    return total


def _pairings(positions: tuple):
    """All partial pairings: sets of disjoint position pairs (a, b), a < b."""
    if not positions:
        yield ()
        return
    first, rest = positions[0], positions[1:]
    for sub in _pairings(rest):
        yield sub
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1:]
        for sub in _pairings(remaining):
            yield ((first, partner),) + sub


def _permutation_sign(perm: tuple) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv & 1 else 1
