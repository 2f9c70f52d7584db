"""Exact scalar arithmetic.

All coefficients in the engine are rational functions over the Gaussian
rationals Q(i) in a table of formal symbols (hbar, omega, m, ...).  Values
are kept in a canonical form at all times: numerator and denominator are
GCD-reduced and the denominator is made monic with respect to a graded
lexicographic monomial order, so equal values have identical term dicts.

A :class:`RelationSet` bundles rewrite rules of the form ``x^2 -> R`` (with
``R`` free of ``x``), used for exact circular/hyperbolic function pairs and
on-shell conditions.  Only single-symbol square eliminations are supported;
this is not a Groebner engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union


class ScalarError(Exception):
    """Base class for scalar-arithmetic errors."""


class ZeroDenominator(ScalarError):
    """A denominator vanished identically (division, substitution, reduction)."""


class NotPolynomialInSymbol(ScalarError):
    """Operation requires the value to be polynomial in a given symbol."""


# ---------------------------------------------------------------------------
# symbol table
# ---------------------------------------------------------------------------

# Fixed base order; anything else is appended on first use.  The order only
# influences the monomial order (and hence printing and the leading-term
# normalisation), never the value semantics.
_BASE_SYMBOLS = [
    "hbar", "omega", "m", "e", "B3", "t", "E", "Eabs", "k",
    "c", "s", "alpha", "phi", "r", "pi", "mu", "nu", "H", "N",
    "p0", "q0",
    "x1", "x2", "x3",
    "q1", "q2", "q3", "q4", "p1", "p2", "p3", "p4",
    "u1", "u2", "u3", "u4", "w1", "w2", "w3", "w4",
    "udot1", "udot2", "udot3", "udot4",
    "rdot1", "rdot2", "rdot3",
]

_SYMBOLS: list[str] = []
_SYM_INDEX: dict[str, int] = {}


def sym_index(name: str) -> int:
    """Index of a symbol in the global table, registering it if new."""
    idx = _SYM_INDEX.get(name)
    if idx is None:
        if not name or not name.replace("_", "a").isalnum() or name[0].isdigit():
            raise ScalarError(f"invalid symbol name: {name!r}")
        idx = len(_SYMBOLS)
        _SYMBOLS.append(name)
        _SYM_INDEX[name] = idx
    return idx


def sym_name(index: int) -> str:
    return _SYMBOLS[index]


for _n in _BASE_SYMBOLS:
    sym_index(_n)


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

_FR0 = Fraction(0)
_FR1 = Fraction(1)


class QI:
    """A Gaussian rational a + b*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other: "QI") -> "QI":
        return QI(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QI") -> "QI":
        return QI(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def __mul__(self, other: "QI") -> "QI":
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return QI(a * c)
        return QI(a * c - b * d, a * d + b * c)

    def inverse(self) -> "QI":
        a, b = self.re, self.im
        n = a * a + b * b
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI(a / n, -b / n)

    def __truediv__(self, other: "QI") -> "QI":
        return self * other.inverse()

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def sqrt(self) -> Optional["QI"]:
        """Exact square root if one exists in Q(i) restricted to the real and
        purely imaginary cases; None otherwise."""
        if self.im:
            return None
        if self.re >= 0:
            root = _frac_sqrt(self.re)
            return None if root is None else QI(root)
        root = _frac_sqrt(-self.re)
        return None if root is None else QI(0, root)

    def __repr__(self) -> str:
        return f"QI({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        return qi_str(self)


def _frac_sqrt(f: Fraction) -> Optional[Fraction]:
    n, d = f.numerator, f.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


QI_ZERO = QI(0)
QI_ONE = QI(1)
QI_I = QI(0, 1)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def qi_str(c: QI) -> str:
    if not c.im:
        return _frac_str(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        sep = " " if c.im.denominator != 1 else ""
        return f"{_frac_str(c.im)}{sep}i"
    im = qi_str(QI(0, c.im))
    return f"{_frac_str(c.re)} + {im}" if c.im > 0 else f"{_frac_str(c.re)} - {im[1:]}"


# ---------------------------------------------------------------------------
# monomials: sorted tuples of (symbol_index, exponent)
# ---------------------------------------------------------------------------

Mono = tuple  # tuple[tuple[int, int], ...]

MONO_ONE: Mono = ()


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ai, ae = a[i]
        bi, be = b[j]
        if ai == bi:
            out.append((ai, ae + be))
            i += 1
            j += 1
        elif ai < bi:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_gcd(a: Mono, b: Mono) -> Mono:
    bd = dict(b)
    out = []
    for i, e in a:
        be = bd.get(i)
        if be:
            out.append((i, min(e, be)))
    return tuple(out)


def mono_div(a: Mono, b: Mono) -> Optional[Mono]:
    """a / b, or None when b does not divide a."""
    if not b:
        return a
    bd = dict(b)
    out = []
    for i, e in a:
        be = bd.pop(i, 0)
        if be > e:
            return None
        if e > be:
            out.append((i, e - be))
    if bd:
        return None
    return tuple(out)


def _mono_cmp(a: Mono, b: Mono) -> int:
    """Graded lex: higher total degree first, ties broken by the exponent of
    the earliest symbol in the global order."""
    da, db = mono_degree(a), mono_degree(b)
    if da != db:
        return 1 if da > db else -1
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ai, ae = a[i]
        bi, be = b[j]
        if ai == bi:
            if ae != be:
                return 1 if ae > be else -1
            i += 1
            j += 1
        elif ai < bi:
            return 1
        else:
            return -1
    if i < la:
        return 1
    if j < lb:
        return -1
    return 0


def mono_str(m: Mono) -> str:
    parts = []
    for i, e in m:
        name = sym_name(i)
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# multivariate polynomials over QI
# ---------------------------------------------------------------------------

class Poly:
    """Sparse multivariate polynomial: dict from monomial to nonzero QI."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None, _clean: bool = True):
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = {m: c for m, c in terms.items() if c}
        else:
            self.terms = terms

    # construction -----------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly(None)

    @staticmethod
    def const(c: QI) -> "Poly":
        return Poly({MONO_ONE: c}) if c else Poly(None)

    @staticmethod
    def symbol(name: str) -> "Poly":
        return Poly({((sym_index(name), 1),): QI_ONE}, _clean=False)

    # predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and MONO_ONE in self.terms)

    def const_value(self) -> QI:
        if not self.terms:
            return QI_ZERO
        if len(self.terms) == 1 and MONO_ONE in self.terms:
            return self.terms[MONO_ONE]
        raise ScalarError("polynomial is not constant")

    def contains_symbol(self, index: int) -> bool:
        return any(i == index for m in self.terms for i, _ in m)

    def degree_in(self, index: int) -> int:
        deg = 0
        for m in self.terms:
            for i, e in m:
                if i == index and e > deg:
                    deg = e
        return deg

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def symbols(self) -> set:
        return {i for m in self.terms for i, _ in m}

    # comparisons ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # ring operations --------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly(out, _clean=False)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()}, _clean=False)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.terms or not other.terms:
            return Poly(None)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                c = ca * cb
                v = out.get(m)
                if v is None:
                    out[m] = c
                else:
                    v = v + c
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return Poly(out, _clean=False)

    def scale(self, c: QI) -> "Poly":
        if not c:
            return Poly(None)
        return Poly({m: v * c for m, v in self.terms.items()}, _clean=False)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ScalarError("negative power on a polynomial")
        result = Poly.const(QI_ONE)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # calculus / structure ----------------------------------------------

    def diff(self, index: int) -> "Poly":
        out: dict = {}
        for m, c in self.terms.items():
            for pos, (i, e) in enumerate(m):
                if i == index:
                    nm = m[:pos] + ((i, e - 1),) + m[pos + 1:] if e > 1 else m[:pos] + m[pos + 1:]
                    nc = c * QI(e)
                    v = out.get(nm)
                    out[nm] = nc if v is None else v + nc
                    break
        return Poly(out)

    def coeff_of_power(self, index: int, order: int) -> "Poly":
        """Collect the coefficient of symbol^order (a polynomial in the rest)."""
        out: dict = {}
        for m, c in self.terms.items():
            e = 0
            rest = m
            for pos, (i, ee) in enumerate(m):
                if i == index:
                    e = ee
                    rest = m[:pos] + m[pos + 1:]
                    break
            if e == order:
                out[rest] = out.get(rest, QI_ZERO) + c
        return Poly(out)

    def leading(self) -> tuple:
        """(monomial, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ScalarError("zero polynomial has no leading term")
        best = None
        for m in self.terms:
            if best is None or _mono_cmp(m, best) > 0:
                best = m
        return best, self.terms[best]

    def conjugate(self) -> "Poly":
        return Poly({m: c.conjugate() for m, c in self.terms.items()}, _clean=False)

    def __repr__(self) -> str:
        return f"Poly({poly_str(self)})"


POLY_ZERO = Poly(None)
POLY_ONE = Poly({MONO_ONE: QI_ONE}, _clean=False)


def poly_str(p: Poly) -> str:
    if not p.terms:
        return "0"
    import functools
    monos = sorted(p.terms, key=functools.cmp_to_key(_mono_cmp), reverse=True)
    parts = []
    for m in monos:
        c = p.terms[m]
        cs = qi_str(c)
        if m == MONO_ONE:
            term = f"({cs})" if ("+" in cs[1:] or "-" in cs[1:] or " " in cs) else cs
        else:
            ms = mono_str(m)
            if c == QI_ONE:
                term = ms
            elif c == QI(-1):
                term = f"-{ms}"
            else:
                if "+" in cs[1:] or "-" in cs[1:] or " " in cs:
                    cs = f"({cs})"
                term = f"{cs} {ms}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


# ---------------------------------------------------------------------------
# polynomial gcd (primitive PRS) and exact division
# ---------------------------------------------------------------------------

def _monic(p: Poly) -> Poly:
    if p.is_zero():
        return p
    _, lc = p.leading()
    if lc == QI_ONE:
        return p
    return p.scale(lc.inverse())


def exact_div(a: Poly, b: Poly) -> Poly:
    """a / b for exact polynomial division; raises if any step fails."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return a
    if b.is_const():
        return a.scale(b.const_value().inverse())
    bm, bc = b.leading()
    bc_inv = bc.inverse()
    rem = a
    out: dict = {}
    while not rem.is_zero():
        rm, rc = rem.leading()
        qm = mono_div(rm, bm)
        if qm is None:
            raise ScalarError("inexact polynomial division")
        qc = rc * bc_inv
        out[qm] = out.get(qm, QI_ZERO) + qc
        rem = rem - Poly({qm: qc}, _clean=False) * b
    return Poly(out)


def _poly_to_univar(p: Poly, index: int) -> dict:
    """Split p as a univariate polynomial in the given symbol: degree -> Poly."""
    out: dict = {}
    for m, c in p.terms.items():
        e = 0
        rest = m
        for pos, (i, ee) in enumerate(m):
            if i == index:
                e = ee
                rest = m[:pos] + m[pos + 1:]
                break
        q = out.setdefault(e, {})
        q[rest] = q.get(rest, QI_ZERO) + c
    return {e: Poly(d) for e, d in out.items() if any(d.values())}


def _univar_to_poly(u: dict, index: int) -> Poly:
    out: dict = {}
    for e, p in u.items():
        if e == 0:
            for m, c in p.terms.items():
                out[m] = out.get(m, QI_ZERO) + c
        else:
            xm = ((index, e),)
            for m, c in p.terms.items():
                mm = mono_mul(m, xm)
                out[mm] = out.get(mm, QI_ZERO) + c
    return Poly(out)


def _content(u: dict) -> Poly:
    g = POLY_ZERO
    for p in u.values():
        g = poly_gcd(g, p)
        if g.is_const() and not g.is_zero():
            return POLY_ONE
    return g if not g.is_zero() else POLY_ONE


def _univar_scale(u: dict, p: Poly) -> dict:
    return {e: q * p for e, q in u.items()}


def _univar_exact_div(u: dict, p: Poly) -> dict:
    return {e: exact_div(q, p) for e, q in u.items()}


def _pseudo_rem(u: dict, v: dict, index: int) -> dict:
    du = max(u)
    dv = max(v)
    lv = v[dv]
    rem = dict(u)
    while rem:
        dr = max(rem)
        if dr < dv:
            break
        lr = rem[dr]
        # rem <- lv*rem - lr*x^(dr-dv)*v
        new: dict = {}
        for e, q in rem.items():
            new[e] = q * lv
        for e, q in v.items():
            ee = e + dr - dv
            t = q * lr
            new[ee] = new.get(ee, POLY_ZERO) - t
        rem = {e: q for e, q in new.items() if not q.is_zero()}
    return rem


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """GCD in Q(i)[symbols], normalised to leading coefficient 1."""
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    if a.is_const() or b.is_const():
        return POLY_ONE
    if len(a.terms) == 1 and len(b.terms) == 1:
        (ma, _), (mb, _) = next(iter(a.terms.items())), next(iter(b.terms.items()))
        return Poly({mono_gcd(ma, mb): QI_ONE}, _clean=False)
    if len(a.terms) == 1 or len(b.terms) == 1:
        mono = next(iter((a if len(a.terms) == 1 else b).terms))
        other = b if len(a.terms) == 1 else a
        g = mono
        for m in other.terms:
            g = mono_gcd(g, m)
            if not g:
                return POLY_ONE
        return Poly({g: QI_ONE}, _clean=False)
    if a == b:
        return _monic(a)

    index = max(a.symbols() | b.symbols())
    ua, ub = _poly_to_univar(a, index), _poly_to_univar(b, index)
    if max(ua) == 0 or max(ub) == 0:
        # index does not actually appear in one of them: gcd divides its content
        if max(ua) == 0:
            return _monic(poly_gcd(a, _content(ub)))
        return _monic(poly_gcd(_content(ua), b))
    ca, cb = _content(ua), _content(ub)
    gc = poly_gcd(ca, cb)
    u = _univar_exact_div(ua, ca)
    v = _univar_exact_div(ub, cb)
    if max(u) < max(v):
        u, v = v, u
    while v:
        r = _pseudo_rem(u, v, index)
        if not r:
            break
        cr = _content(r)
        u, v = v, _univar_exact_div(r, cr)
    g = _univar_to_poly(v if v else u, index)
    if not gc.is_const():
        g = g * gc
    return _monic(g)


def poly_sqrt(p: Poly) -> Optional[Poly]:
    """Exact square root of a polynomial, or None."""
    if p.is_zero():
        return p
    lm, lc = p.leading()
    if any(e % 2 for _, e in lm):
        return None
    rc = lc.sqrt()
    if rc is None:
        return None
    root = Poly({tuple((i, e // 2) for i, e in lm): rc}, _clean=False)
    for _ in range(len(p.terms) * 2 + 4):
        rem = p - root * root
        if rem.is_zero():
            return root
        rm, rcoef = rem.leading()
        dm = mono_div(rm, tuple((i, e // 2) for i, e in lm))
        if dm is None:
            return None
        root = root + Poly({dm: rcoef / (rc * QI(2))}, _clean=False)
    return None


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

CoefficientLike = Union["Coefficient", int, Fraction, QI]


class Coefficient:
    """Canonical rational function num/den over Q(i) in the global symbols."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = POLY_ONE, _canonical: bool = False):
        if _canonical:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if num.is_zero():
            self.num, self.den = POLY_ZERO, POLY_ONE
            return
        if den.is_const():
            c = den.const_value()
            self.num = num if c == QI_ONE else num.scale(c.inverse())
            self.den = POLY_ONE
            return
        g = poly_gcd(num, den)
        if not (g.is_const()):
            num = exact_div(num, g)
            den = exact_div(den, g)
        _, lc = den.leading()
        if lc != QI_ONE:
            inv = lc.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        self.num, self.den = num, den

    # constructors -------------------------------------------------------

    @staticmethod
    def from_value(v: CoefficientLike) -> "Coefficient":
        if isinstance(v, Coefficient):
            return v
        if isinstance(v, QI):
            return Coefficient(Poly.const(v), POLY_ONE, _canonical=True)
        if isinstance(v, (int, Fraction)):
            return Coefficient(Poly.const(QI(v)), POLY_ONE, _canonical=True)
        raise TypeError(f"cannot coerce {type(v).__name__} to Coefficient")

    @staticmethod
    def symbol(name: str) -> "Coefficient":
        return Coefficient(Poly.symbol(name), POLY_ONE, _canonical=True)

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == POLY_ONE and self.den == POLY_ONE

    def is_rational(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def rational_value(self) -> QI:
        if not self.is_rational():
            raise ScalarError("coefficient is not a plain number")
        return self.num.const_value()

    def is_polynomial(self) -> bool:
        return self.den == POLY_ONE

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: CoefficientLike) -> "Coefficient":
        other = Coefficient.from_value(other)
        if self.den is POLY_ONE and other.den is POLY_ONE:
            return Coefficient(self.num + other.num, POLY_ONE)
        if self.den == other.den:
            return Coefficient(self.num + other.num, self.den)
        return Coefficient(self.num * other.den + other.num * self.den,
                           self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Coefficient":
        return Coefficient(-self.num, self.den, _canonical=True)

    def __sub__(self, other: CoefficientLike) -> "Coefficient":
        return self + (-Coefficient.from_value(other))

    def __rsub__(self, other: CoefficientLike) -> "Coefficient":
        return Coefficient.from_value(other) + (-self)

    def __mul__(self, other: CoefficientLike) -> "Coefficient":
        other = Coefficient.from_value(other)
        return Coefficient(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: CoefficientLike) -> "Coefficient":
        other = Coefficient.from_value(other)
        if other.is_zero():
            raise ZeroDenominator("division by zero coefficient")
        return Coefficient(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: CoefficientLike) -> "Coefficient":
        return Coefficient.from_value(other) / self

    def __pow__(self, n: int) -> "Coefficient":
        if n == 0:
            return ONE
        if n < 0:
            if self.is_zero():
                raise ZeroDenominator("zero to a negative power")
            return Coefficient(self.den ** (-n), self.num ** (-n))
        return Coefficient(self.num ** n, self.den ** n)

    def conjugate(self) -> "Coefficient":
        return Coefficient(self.num.conjugate(), self.den.conjugate())

    def sqrt(self) -> Optional["Coefficient"]:
        rn = poly_sqrt(self.num)
        if rn is None:
            return None
        rd = poly_sqrt(self.den)
        if rd is None:
            return None
        return Coefficient(rn, rd)

    def diff(self, symbol: str) -> "Coefficient":
        idx = sym_index(symbol)
        dn = self.num.diff(idx)
        if self.den is POLY_ONE or not self.den.contains_symbol(idx):
            return Coefficient(dn, self.den)
        dd = self.den.diff(idx)
        return Coefficient(dn * self.den - self.num * dd, self.den * self.den)

    # structure ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QI)):
            other = Coefficient.from_value(other)
        if isinstance(other, Coefficient):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def contains_symbol(self, name: str) -> bool:
        idx = _SYM_INDEX.get(name)
        if idx is None:
            return False
        return self.num.contains_symbol(idx) or self.den.contains_symbol(idx)

    def __str__(self) -> str:
        return coefficient_str(self)

    def __repr__(self) -> str:
        return f"Coefficient({coefficient_str(self)})"


ZERO = Coefficient.from_value(0)
ONE = Coefficient.from_value(1)
I = Coefficient.from_value(QI_I)


def C(v: CoefficientLike) -> Coefficient:
    """Coerce ints, Fractions and QI values to Coefficient."""
    return Coefficient.from_value(v)


def sym(name: str) -> Coefficient:
    return Coefficient.symbol(name)


def frac(a: int, b: int) -> Coefficient:
    return Coefficient.from_value(Fraction(a, b))


def coefficient_str(c: Coefficient) -> str:
    ns = poly_str(c.num)
    if c.den == POLY_ONE:
        return ns
    ds = poly_str(c.den)
    if len(c.num.terms) > 1:
        ns = f"({ns})"
    if len(c.den.terms) > 1 or " " in ds:
        ds = f"({ds})"
    return f"{ns}/{ds}"


# ---------------------------------------------------------------------------
# substitution and series extraction
# ---------------------------------------------------------------------------

def _poly_subs(p: Poly, bindings: Mapping[int, Coefficient]) -> Coefficient:
    total = ZERO
    for m, qc in p.terms.items():
        term = Coefficient.from_value(qc)
        for i, e in m:
            repl = bindings.get(i)
            if repl is None:
                term = term * Coefficient(Poly({((i, e),): QI_ONE}, _clean=False),
                                          POLY_ONE, _canonical=True)
            else:
                term = term * repl ** e
        total = total + term
    return total


def substitute(expr: Coefficient,
               bindings: Mapping[str, CoefficientLike],
               relations: Optional["RelationSet"] = None) -> Coefficient:
    """Simultaneous substitution of symbols, followed by relation reduction.

    Raises ZeroDenominator when the substituted denominator vanishes
    identically.
    """
    idx_bindings = {sym_index(k): Coefficient.from_value(v) for k, v in bindings.items()}
    num = _poly_subs(expr.num, idx_bindings)
    den = _poly_subs(expr.den, idx_bindings)
    if den.is_zero():
        raise ZeroDenominator("substitution made the denominator vanish")
    result = num / den
    if relations is not None:
        result = relations.reduce(result)
    return result


def series_coefficient(expr: Coefficient, symbol: str, order: int) -> Coefficient:
    """Coefficient of symbol**order; requires a denominator free of the symbol."""
    idx = sym_index(symbol)
    if expr.den.contains_symbol(idx):
        raise NotPolynomialInSymbol(
            f"denominator contains {symbol}; not polynomial in it")
    return Coefficient(expr.num.coeff_of_power(idx, order), expr.den)


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """Rewrite rule symbol^2 -> replacement (replacement free of symbol)."""

    symbol: str
    replacement: Poly

    def __post_init__(self):
        if self.replacement.contains_symbol(sym_index(self.symbol)):
            raise ScalarError(f"relation for {self.symbol} must eliminate it")


class RelationSet:
    """A bundle of square-elimination rewrite rules.

    Reduction is confluent because each rule eliminates powers >= 2 of one
    designated symbol and its replacement does not contain that symbol.
    """

    __slots__ = ("relations",)

    def __init__(self, relations: Iterable[Relation]):
        self.relations = tuple(relations)

    def reduce_poly(self, p: Poly) -> Poly:
        changed = True
        while changed:
            changed = False
            for rel in self.relations:
                idx = sym_index(rel.symbol)
                if p.degree_in(idx) < 2:
                    continue
                out = POLY_ZERO
                for m, c in p.terms.items():
                    e = 0
                    rest = m
                    for pos, (i, ee) in enumerate(m):
                        if i == idx:
                            e = ee
                            rest = m[:pos] + m[pos + 1:]
                            break
                    if e < 2:
                        out = out + Poly({m: c}, _clean=False)
                        continue
                    changed = True
                    piece = rel.replacement ** (e // 2)
                    if e % 2:
                        piece = piece * Poly({((idx, 1),): QI_ONE}, _clean=False)
                    out = out + piece * Poly({rest: c}, _clean=False)
                p = out
        return p

    def reduce(self, c: Coefficient) -> Coefficient:
        num = self.reduce_poly(c.num)
        den = self.reduce_poly(c.den)
        if den.is_zero():
            raise ZeroDenominator("denominator vanished under relations")
        return Coefficient(num, den)

    def __add__(self, other: "RelationSet") -> "RelationSet":
        return RelationSet(self.relations + other.relations)

    def __repr__(self) -> str:
        rules = ", ".join(f"{r.symbol}^2 -> {poly_str(r.replacement)}"
                          for r in self.relations)
        return f"RelationSet({rules})"


def square_relation(symbol: str, replacement: Coefficient) -> RelationSet:
    """symbol^2 -> replacement (replacement must be polynomial)."""
    repl = Coefficient.from_value(replacement)
    if not repl.is_polynomial():
        raise ScalarError("relation replacement must be polynomial")
    return RelationSet([Relation(symbol, repl.num)])


def circular_relations(c: str = "c", s: str = "s") -> RelationSet:
    """c = cos x, s = sin x: eliminates c^2 via c^2 + s^2 = 1."""
    repl = POLY_ONE - Poly.symbol(s) * Poly.symbol(s)
    return RelationSet([Relation(c, repl)])


def hyperbolic_relations(c: str = "c", s: str = "s") -> RelationSet:
    """c = cosh x, s = sinh x: eliminates c^2 via c^2 - s^2 = 1."""
    repl = POLY_ONE + Poly.symbol(s) * Poly.symbol(s)
    return RelationSet([Relation(c, repl)])


def on_shell_relations(p0: str = "p0", mass: str = "m",
                       momenta: Iterable[str] = ("p1", "p2", "p3")) -> RelationSet:
    """p0^2 -> m^2 + p1^2 + p2^2 + p3^2 (mass-shell condition)."""
    repl = Poly.symbol(mass) * Poly.symbol(mass)
    for name in momenta:
        repl = repl + Poly.symbol(name) * Poly.symbol(name)
    return RelationSet([Relation(p0, repl)])
