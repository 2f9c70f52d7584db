"""Grassmann algebra core with a metric-parameterised Clifford star product.

Blades are bitmasks over the generator slots; the canonical order inside a
blade is ascending generator index, with all permutation signs absorbed into
the coefficients.  The star product of two basis blades is computed once per
algebra and cached, so products of large multivectors reduce to table lookups
and coefficient arithmetic.

Shipped algebra instances:

* ``theta_algebra(d)``   -- form (hbar/2) delta, Berezin scale hbar
* ``sigma_algebra(d)``   -- orthonormal Euclidean basis vectors
* ``spacetime_algebra()``-- gamma0..gamma3 with signature (+,-,-,-)
* ``phase_space_algebra(d)`` -- eta1..etad, rho1..rhod, Euclidean
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .scalars import (
    C, Coefficient, CoefficientLike, ONE, RelationSet, ZERO, sym,
)


class AlgebraError(Exception):
    """Base class for algebra-layer errors."""


class AsymmetricForm(AlgebraError):
    """The supplied bilinear form is not symmetric."""


class AlgebraMismatch(AlgebraError):
    """Operands belong to different algebra instances."""


class GradeOutOfRange(AlgebraError):
    """Grade projection outside 0..d."""


def _merge_sign(left: int, right: int) -> int:
    """Sign of reordering the concatenation (left blade, right blade) into
    ascending order; assumes the masks are disjoint."""
    inversions = 0
    t = right
    while t:
        low = t & -t
        inversions += (left >> (low.bit_length())).bit_count()
        t ^= low
    return -1 if inversions & 1 else 1


def _derivative_sign(mask: int, n: int) -> int:
    """Sign picked up by the left derivative d/d(theta_n) acting on a blade."""
    below = mask & ((1 << n) - 1)
    return -1 if below.bit_count() & 1 else 1


class AlgebraSpec:
    """Generator count, names and symmetric bilinear form of one algebra."""

    __slots__ = ("dimension", "names", "form", "berezin_scale", "hodge_signs",
                 "_star_table", "_form_rows", "label")

    def __init__(self, dimension: int, names: Sequence[str],
                 form: Sequence[Sequence[CoefficientLike]],
                 berezin_scale: CoefficientLike = 1,
                 hodge_signs: Optional[Sequence[int]] = None,
                 label: str = ""):
        if dimension < 0 or dimension > 12:
            raise AlgebraError("dimension must be between 0 and 12")
        if len(names) != dimension:
            raise AlgebraError("need one name per generator")
        rows = [tuple(C(v) for v in row) for row in form]
        if len(rows) != dimension or any(len(r) != dimension for r in rows):
            raise AlgebraError("form must be a d x d matrix")
        for i in range(dimension):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise AsymmetricForm(
                        f"form[{i}][{j}] != form[{j}][{i}]")
        self.dimension = dimension
        self.names = tuple(names)
        self.form = tuple(rows)
        self.berezin_scale = C(berezin_scale)
        self.hodge_signs = tuple(hodge_signs) if hodge_signs else (1,) * dimension
        self.label = label or "x".join(names)
        self._star_table: dict = {}
        # nonzero entries per row, for sparse contraction loops
        self._form_rows = tuple(
            tuple((j, rows[i][j]) for j in range(dimension) if not rows[i][j].is_zero())
            for i in range(dimension))

    # -- construction helpers ------------------------------------------------

    def scalar(self, value: CoefficientLike) -> "Multivector":
        c = C(value)
        return Multivector(self, {} if c.is_zero() else {0: c})

    def zero(self) -> "Multivector":
        return Multivector(self, {})

    def one(self) -> "Multivector":
        return self.scalar(1)

    def generator(self, i: int) -> "Multivector":
        if not 0 <= i < self.dimension:
            raise AlgebraError(f"generator index {i} out of range")
        return Multivector(self, {1 << i: ONE})

    def generators(self) -> list:
        return [self.generator(i) for i in range(self.dimension)]

    def blade(self, indices: Iterable[int], coeff: CoefficientLike = 1) -> "Multivector":
        """Blade from an ordered generator index sequence, tracking the sign
        of sorting it into canonical ascending order."""
        mask = 0
        sign = 1
        for i in indices:
            if not 0 <= i < self.dimension:
                raise AlgebraError(f"generator index {i} out of range")
            bit = 1 << i
            if mask & bit:
                return self.zero()
            sign *= _merge_sign(mask, bit)
            mask |= bit
        c = C(coeff) * sign
        return Multivector(self, {mask: c} if not c.is_zero() else {})

    def pseudoscalar(self) -> "Multivector":
        return Multivector(self, {(1 << self.dimension) - 1: ONE})

    def vector(self, components: Sequence[CoefficientLike]) -> "Multivector":
        if len(components) != self.dimension:
            raise AlgebraError("need one component per generator")
        terms = {}
        for i, v in enumerate(components):
            c = C(v)
            if not c.is_zero():
                terms[1 << i] = c
        return Multivector(self, terms)

    def blade_name(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return " ".join(self.names[i] for i in range(self.dimension) if mask >> i & 1)

    def __repr__(self) -> str:
        return f"AlgebraSpec({self.label}, d={self.dimension})"

    # -- the star product on basis blades ------------------------------------

    def star_blades(self, s: int, t: int) -> dict:
        """Expansion of blade_s * blade_t as {blade: Coefficient}."""
        key = (s, t)
        cached = self._star_table.get(key)
        if cached is not None:
            return cached
        if s == 0:
            result = {t: ONE}
        else:
            low = s & -s
            m = low.bit_length() - 1
            rest = s ^ low
            # blade_s = g_m ^ blade_rest, hence
            # blade_s * G = g_m * (blade_rest * G) - sum_n B[m][n] (d_n blade_rest) * G
            result: dict = {}
            base = self.star_blades(rest, t)
            for u, cu in base.items():
                # wedge part of g_m * blade_u
                if not (u >> m) & 1:
                    nm = u | (1 << m)
                    sgn = _merge_sign(1 << m, u)
                    _acc(result, nm, cu * sgn if sgn < 0 else cu)
                # contraction part
                for n, bmn in self._form_rows[m]:
                    if (u >> n) & 1:
                        du = u ^ (1 << n)
                        c = cu * bmn
                        if _derivative_sign(u, n) < 0:
                            c = -c
                        _acc(result, du, c)
            for n, bmn in self._form_rows[m]:
                if (rest >> n) & 1:
                    drest = rest ^ (1 << n)
                    sgn = _derivative_sign(rest, n)
                    sub = self.star_blades(drest, t)
                    c0 = -bmn if sgn > 0 else bmn
                    for u, cu in sub.items():
                        _acc(result, u, cu * c0)
            result = {u: cv for u, cv in result.items() if not cv.is_zero()}
        self._star_table[key] = result
        return result


def _acc(d: dict, key: int, value: Coefficient) -> None:
    v = d.get(key)
    d[key] = value if v is None else v + value


def algebra_new(dimension: int, names: Sequence[str],
                form: Sequence[Sequence[CoefficientLike]],
                berezin_scale: CoefficientLike = 1,
                hodge_signs: Optional[Sequence[int]] = None,
                label: str = "") -> AlgebraSpec:
    """General constructor; raises AsymmetricForm for a non-symmetric form."""
    return AlgebraSpec(dimension, names, form, berezin_scale, hodge_signs, label)


def _diag(dimension: int, value: Coefficient) -> list:
    return [[value if i == j else ZERO for j in range(dimension)]
            for i in range(dimension)]


@lru_cache(maxsize=None)
def theta_algebra(dimension: int = 3) -> AlgebraSpec:
    """Grassmann dynamical variables theta_i with {theta_i, theta_j}* = hbar d_ij."""
    return AlgebraSpec(dimension,
                       [f"theta{i+1}" for i in range(dimension)],
                       _diag(dimension, sym("hbar") / 2),
                       berezin_scale=sym("hbar"),
                       label=f"theta{dimension}")


@lru_cache(maxsize=None)
def sigma_algebra(dimension: int = 3) -> AlgebraSpec:
    """Dimensionless Euclidean basis vectors sigma_i."""
    return AlgebraSpec(dimension,
                       [f"sigma{i+1}" for i in range(dimension)],
                       _diag(dimension, ONE),
                       label=f"sigma{dimension}")


@lru_cache(maxsize=None)
def spacetime_algebra() -> AlgebraSpec:
    """gamma_mu with metric diag(1,-1,-1,-1)."""
    g = _diag(4, ONE)
    for i in (1, 2, 3):
        g[i][i] = C(-1)
    return AlgebraSpec(4, ["gamma0", "gamma1", "gamma2", "gamma3"], g,
                       hodge_signs=(1, -1, -1, -1), label="sta")


@lru_cache(maxsize=None)
def phase_space_algebra(dimension: int) -> AlgebraSpec:
    """2d Euclidean generators eta_1..eta_d, rho_1..rho_d for phase space."""
    names = [f"eta{i+1}" for i in range(dimension)] + \
            [f"rho{i+1}" for i in range(dimension)]
    return AlgebraSpec(2 * dimension, names, _diag(2 * dimension, ONE),
                       label=f"phase{dimension}")


@lru_cache(maxsize=None)
def scalar_algebra() -> AlgebraSpec:
    """Degenerate 0-generator algebra: multivectors are bare coefficients."""
    return AlgebraSpec(0, [], [], label="scalar")


# ---------------------------------------------------------------------------
# multivectors
# ---------------------------------------------------------------------------

class Multivector:
    """Sparse blade -> Coefficient mapping over one AlgebraSpec."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AlgebraSpec, terms: dict):
        self.algebra = algebra
        self.terms = terms

    # -- predicates/access ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def grades(self) -> set:
        return {mask.bit_count() for mask in self.terms}

    def coefficient(self, mask: int) -> Coefficient:
        return self.terms.get(mask, ZERO)

    def scalar_part(self) -> Coefficient:
        return self.terms.get(0, ZERO)

    def is_scalar(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def component(self, i: int) -> Coefficient:
        """Grade-1 component along generator i."""
        return self.terms.get(1 << i, ZERO)

    # -- linear structure ----------------------------------------------------

    def _check(self, other: "Multivector") -> None:
        if self.algebra is not other.algebra:
            raise AlgebraMismatch(
                f"operands from {self.algebra.label} and {other.algebra.label}")

    def __add__(self, other) -> "Multivector":
        if isinstance(other, (int, Coefficient)):
            other = self.algebra.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for mask, c in other.terms.items():
            v = out.get(mask)
            nv = c if v is None else v + c
            if nv.is_zero():
                out.pop(mask, None)
            else:
                out[mask] = nv
        return Multivector(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Multivector":
        if isinstance(other, (int, Coefficient)):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "Multivector":
        return (-self) + other

    def __mul__(self, scalar) -> "Multivector":
        c = C(scalar)
        if c.is_zero():
            return Multivector(self.algebra, {})
        return Multivector(self.algebra,
                           {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Multivector":
        return self * (ONE / C(scalar))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Coefficient)):
            c = C(other)
            if c.is_zero():
                return not self.terms
            return set(self.terms) == {0} and self.terms[0] == c
        if isinstance(other, Multivector):
            return self.algebra is other.algebra and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.algebra), frozenset(self.terms.items())))

    def map_coefficients(self, fn: Callable[[Coefficient], Coefficient]) -> "Multivector":
        out = {}
        for m, c in self.terms.items():
            nc = fn(c)
            if not nc.is_zero():
                out[m] = nc
        return Multivector(self.algebra, out)

    def reduce(self, relations: Optional[RelationSet]) -> "Multivector":
        if relations is None:
            return self
        return self.map_coefficients(relations.reduce)

    def __str__(self) -> str:
        return format_multivector(self)

    def __repr__(self) -> str:
        return f"Multivector<{self.algebra.label}>({format_multivector(self)})"


def format_multivector(mv: Multivector) -> str:
    if not mv.terms:
        return "0"
    items = sorted(mv.terms.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))
    parts = []
    for mask, c in items:
        cs = str(c)
        if mask == 0:
            parts.append(cs)
            continue
        name = mv.algebra.blade_name(mask)
        if c == ONE:
            parts.append(name)
        elif c == C(-1):
            parts.append(f"-{name}")
        else:
            if " + " in cs or " - " in cs:
                cs = f"({cs})"
            parts.append(f"{cs} {name}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def grassmann_product(f: Multivector, g: Multivector) -> Multivector:
    """Plain (undeformed) Grassmann product; the juxtaposition of superanalysis."""
    f._check(g)
    out: dict = {}
    for ms, cs in f.terms.items():
        for mt, ct in g.terms.items():
            if ms & mt:
                continue
            sign = _merge_sign(ms, mt)
            c = cs * ct
            if sign < 0:
                c = -c
            _acc(out, ms | mt, c)
    return Multivector(f.algebra, {m: c for m, c in out.items() if not c.is_zero()})


def clifford_star(f: Multivector, g: Multivector) -> Multivector:
    """The Clifford star product F exp[sum B_mn d<-_m d->_n] G."""
    f._check(g)
    alg = f.algebra
    out: dict = {}
    for ms, cs in f.terms.items():
        for mt, ct in g.terms.items():
            c = cs * ct
            for mask, bc in alg.star_blades(ms, mt).items():
                _acc(out, mask, c * bc)
    return Multivector(alg, {m: c for m, c in out.items() if not c.is_zero()})


def star_many(*factors: Multivector) -> Multivector:
    """Left-to-right iterated Clifford star product."""
    result = factors[0]
    for f in factors[1:]:
        result = clifford_star(result, f)
    return result


def grade_project(a: Multivector, n: int) -> Multivector:
    if not 0 <= n <= a.algebra.dimension:
        raise GradeOutOfRange(f"grade {n} not in 0..{a.algebra.dimension}")
    return Multivector(a.algebra,
                       {m: c for m, c in a.terms.items() if m.bit_count() == n})


def involution(f: Multivector) -> Multivector:
    """The antiautomorphism reversing blade factors and conjugating scalars."""
    out = {}
    for m, c in f.terms.items():
        r = m.bit_count()
        c = c.conjugate()
        if (r * (r - 1) // 2) & 1:
            c = -c
        out[m] = c
    return Multivector(f.algebra, out)


def hodge_dual(f: Multivector) -> Multivector:
    """Grade-r blades to grade-(d-r) complements with epsilon weights; indices
    are raised with the algebra's diagonal signs first."""
    alg = f.algebra
    full = (1 << alg.dimension) - 1
    out: dict = {}
    for m, c in f.terms.items():
        comp = full ^ m
        sign = _merge_sign(m, comp)
        for i in range(alg.dimension):
            if (m >> i) & 1:
                sign *= alg.hodge_signs[i]
        _acc(out, comp, c * sign if sign < 0 else c)
    return Multivector(alg, {m: c for m, c in out.items() if not c.is_zero()})


def berezin(f: Multivector) -> Coefficient:
    """Full Berezin integral: scale^d times the top-blade coefficient."""
    alg = f.algebra
    top = (1 << alg.dimension) - 1
    c = f.terms.get(top)
    if c is None:
        return ZERO
    return c * alg.berezin_scale ** alg.dimension


def trace(f: Multivector) -> Coefficient:
    """Star-product trace, normalised to 2^(d//2) on the identity."""
    alg = f.algebra
    prefactor = C(2) ** (alg.dimension // 2) / alg.berezin_scale ** alg.dimension
    return prefactor * berezin(hodge_dual(f))


def pauli_function(i: int, algebra: AlgebraSpec) -> Multivector:
    """sigma^i = (1/(i hbar)) eps_ijk theta_j theta_k inside a d=3 theta algebra."""
    if algebra.dimension != 3:
        raise AlgebraError("Pauli functions need a 3-generator algebra")
    j, k = {0: (1, 2), 1: (2, 0), 2: (0, 1)}[i]
    from .scalars import I as IMAG
    two_over_ihbar = C(2) / (IMAG * sym("hbar"))
    return algebra.blade([j, k], two_over_ihbar)


def multivectors_equal(a: Multivector, b: Multivector,
                       relations: Optional[RelationSet] = None) -> bool:
    if relations is None:
        return a == b
    return a.reduce(relations) == b.reduce(relations)
