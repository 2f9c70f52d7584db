"""Expression language for star-product computations.

Grammar (left associative, '^' binds tightest):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/\\' | '|' | '.') factor)*
    factor := atom ['^' ['-'] INT]
    atom   := INT ['/' INT] | 'i' | IDENT | FUNC '(' expr (',' expr)* ')'
            | '(' expr ')'

'*' is the session's active star product (Clifford, Moyal, or the combined
product, depending on the session algebra); '/\\' is the outer product, '|'
the inner product and '.' its scalar-product alias.  Functions: grade(e, n),
rev(e), hodge(e), tr(e), berezin(e), expb(e), dual(e).

Identifiers that look like generator references (sigma1, theta2, gamma0,
eta1, rho1, I3, ...) must exist in the session's generator table; anything
else is a free scalar symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .scalars import (
    C, I as IMAG, RelationSet, ScalarError, circular_relations,
    hyperbolic_relations, sym,
)
from .grassmann import (
    AlgebraError, AlgebraSpec, Multivector, berezin, clifford_star,
    grade_project, hodge_dual, involution, phase_space_algebra, scalar_algebra,
    sigma_algebra, spacetime_algebra, theta_algebra, trace,
)
from .geometric import (
    dual, exp_bivector, graded_products, star_inverse,
)
from .moyal import moyal_clifford_star, phase_pairs
from .spacetime import mass_shell_relations


class ExprSyntaxError(ValueError):
    """Parse failure; carries the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class UnknownSymbol(ValueError):
    """A generator-style name that the session algebra does not provide."""

    def __init__(self, name: str, table: Sequence[str]):
        super().__init__(
            f"unknown generator {name!r}; session provides: {', '.join(table)}")
        self.name = name
        self.table = tuple(table)


class EvalError(ValueError):
    """Evaluation failure with the source span of the offending node."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Num(Node):
    value: Fraction = Fraction(0)


@dataclass(frozen=True)
class ImagUnit(Node):
    pass


@dataclass(frozen=True)
class Name(Node):
    ident: str = ""


@dataclass(frozen=True)
class Neg(Node):
    operand: "Expr" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class BinOp(Node):
    op: str = "*"
    left: "Expr" = None  # type: ignore[assignment]
    right: "Expr" = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Pow(Node):
    base: "Expr" = None  # type: ignore[assignment]
    exponent: int = 1


@dataclass(frozen=True)
class Call(Node):
    func: str = ""
    args: tuple = ()


Expr = Union[Num, ImagUnit, Name, Neg, BinOp, Pow, Call]

FUNCTIONS = ("grade", "rev", "hodge", "tr", "berezin", "expb", "dual")

_ADD_OPS = ("+", "-")
_MUL_OPS = ("*", "/\\", "|", ".")


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(/\\)|([-+*|.^(),/]))")


def tokenize(text: str) -> list:
    """(kind, value, byte_offset) triples; kinds INT, IDENT, OP."""
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = n - len(stripped)
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}",
                                  _byte_offset(text, bad_at))
        start = m.start(m.lastindex)
        offset = _byte_offset(text, start)
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), offset))
        elif m.group(2) is not None:
            tokens.append(("IDENT", m.group(2), offset))
        elif m.group(3) is not None:
            tokens.append(("OP", "/\\", offset))
        else:
            tokens.append(("OP", m.group(4), offset))
        pos = m.end()
    rest = text[pos:].strip()
    if rest:
        raise ExprSyntaxError(f"unexpected character {rest[0]!r}",
                              _byte_offset(text, text.index(rest, pos)))
    return tokens


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input",
                                  len(self.text.encode("utf-8")))
        self.index += 1
        return tok

    def expect_op(self, op: str):
        tok = self.next()
        if tok[0] != "OP" or tok[1] != op:
            raise ExprSyntaxError(f"expected {op!r}, found {tok[1]!r}", tok[2])
        return tok

    def at_op(self, *ops) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "OP" and tok[1] in ops

    # grammar ----------------------------------------------------------

    def parse_expr(self) -> Expr:
        if self.at_op("-"):
            tok = self.next()
            node: Expr = Neg(pos=tok[2], operand=self.parse_term())
        else:
            node = self.parse_term()
        while self.at_op(*_ADD_OPS):
            tok = self.next()
            right = self.parse_term()
            node = BinOp(pos=tok[2], op=tok[1], left=node, right=right)
        return node

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while self.at_op(*_MUL_OPS):
            tok = self.next()
            right = self.parse_factor()
            node = BinOp(pos=tok[2], op=tok[1], left=node, right=right)
        return node

    def parse_factor(self) -> Expr:
        node = self.parse_atom()
        if self.at_op("^"):
            tok = self.next()
            negative = False
            if self.at_op("-"):
                self.next()
                negative = True
            etok = self.next()
            if etok[0] != "INT":
                raise ExprSyntaxError("exponent must be an integer", etok[2])
            exp = int(etok[1])
            node = Pow(pos=tok[2], base=node, exponent=-exp if negative else exp)
        return node

    def parse_atom(self) -> Expr:
        tok = self.next()
        kind, value, pos = tok
        if kind == "INT":
            if self.at_op("/"):
                self.next()
                dtok = self.next()
                if dtok[0] != "INT":
                    raise ExprSyntaxError("expected integer denominator", dtok[2])
                return Num(pos=pos, value=Fraction(int(value), int(dtok[1])))
            return Num(pos=pos, value=Fraction(int(value)))
        if kind == "IDENT":
            if value == "i":
                return ImagUnit(pos=pos)
            if value in FUNCTIONS:
                self.expect_op("(")
                args = [self.parse_expr()]
                while self.at_op(","):
                    self.next()
                    args.append(self.parse_expr())
                self.expect_op(")")
                return Call(pos=pos, func=value, args=tuple(args))
            return Name(pos=pos, ident=value)
        if kind == "OP" and value == "(":
            node = self.parse_expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(f"unexpected token {value!r}", pos)


def parse(text: str) -> Expr:
    parser = _Parser(text)
    node = parser.parse_expr()
    tok = parser.peek()
    if tok is not None:
        raise ExprSyntaxError(f"trailing input {tok[1]!r}", tok[2])
    return node


# ---------------------------------------------------------------------------
# formatter (inverse of parse on ASTs)
# ---------------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4


def _precedence(node: Expr) -> int:
    if isinstance(node, BinOp):
        return _PREC_ADD if node.op in _ADD_OPS else _PREC_MUL
    if isinstance(node, Neg):
        return _PREC_ADD
    if isinstance(node, Pow):
        return _PREC_POW
    return _PREC_ATOM


def format_expr(node: Expr) -> str:
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, ImagUnit):
        return "i"
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _PREC_MUL)
    if isinstance(node, BinOp):
        left_min = _precedence(node)
        right_min = left_min + 1  # left associative chains
        return f"{_wrap(node.left, left_min)} {node.op} {_wrap(node.right, right_min)}"
    if isinstance(node, Pow):
        base = _wrap(node.base, _PREC_ATOM)
        if isinstance(node.base, Num) and node.base.value.denominator != 1:
            base = format_expr(node.base)  # INT '/' INT '^' INT reparses as a power of the fraction
        return f"{base}^{node.exponent}"
    if isinstance(node, Call):
        args = ", ".join(format_expr(a) for a in node.args)
        return f"{node.func}({args})"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node: Expr, minimum: int) -> str:
    text = format_expr(node)
    return f"({text})" if _precedence(node) < minimum else text


# ---------------------------------------------------------------------------
# sessions and evaluation
# ---------------------------------------------------------------------------

_GENERATOR_SHAPE = re.compile(r"^(?:sigma|theta|gamma|eta|rho)\d+$|^I\d+$")

RELATION_NAMES = {
    "circular": circular_relations,
    "hyperbolic": hyperbolic_relations,
    "massshell": mass_shell_relations,
    "mass-shell": mass_shell_relations,
}

ALGEBRA_CHOICES = "sigmaN | thetaN | sta | phase:d | moyal:d | mc:d"


@dataclass
class Session:
    """One evaluation context: algebra, optional Moyal sector, relations."""

    name: str
    algebra: AlgebraSpec
    phase_dim: Optional[int] = None
    relations: Optional[RelationSet] = None

    def __post_init__(self):
        self.table = {}
        for i, gname in enumerate(self.algebra.names):
            self.table[gname] = self.algebra.generator(i)
        if self.algebra.dimension:
            self.table[f"I{self.algebra.dimension}"] = self.algebra.pseudoscalar()

    def product(self, a: Multivector, b: Multivector) -> Multivector:
        if self.phase_dim is None:
            return clifford_star(a, b)
        return moyal_clifford_star(a, b, phase_pairs(self.phase_dim))

    def generator_names(self) -> list:
        return sorted(self.table)


def session_from_name(name: str,
                      relations: Optional[RelationSet] = None) -> Session:
    m = re.fullmatch(r"sigma(\d+)", name)
    if m:
        return Session(name, sigma_algebra(int(m.group(1))), None, relations)
    m = re.fullmatch(r"theta(\d+)", name)
    if m:
        return Session(name, theta_algebra(int(m.group(1))), None, relations)
    if name == "sta":
        return Session(name, spacetime_algebra(), None, relations)
    m = re.fullmatch(r"phase:(\d+)", name)
    if m:
        return Session(name, phase_space_algebra(int(m.group(1))), None, relations)
    m = re.fullmatch(r"moyal:(\d+)", name)
    if m:
        return Session(name, scalar_algebra(), int(m.group(1)), relations)
    m = re.fullmatch(r"mc:(\d+)", name)
    if m:
        return Session(name, sigma_algebra(int(m.group(1))), int(m.group(1)),
                       relations)
    raise ValueError(f"unknown algebra {name!r}; choose one of {ALGEBRA_CHOICES}")


def relations_from_names(names: Sequence[str]) -> Optional[RelationSet]:
    sets = []
    for raw in names:
        key = raw.strip().lower()
        if not key:
            continue
        factory = RELATION_NAMES.get(key)
        if factory is None:
            raise ValueError(
                f"unknown relation set {raw!r}; choose from "
                f"{', '.join(sorted(set(RELATION_NAMES)))}")
        sets.append(factory())
    if not sets:
        return None
    total = sets[0]
    for extra in sets[1:]:
        total = total + extra
    return total


class _Evaluator:
    def __init__(self, session: Session):
        self.session = session
        self.extra_relations = []

    def run(self, node: Expr) -> Multivector:
        value = self.eval(node)
        for rel in self._all_relations():
            value = value.reduce(rel)
        return value

    def _all_relations(self):
        out = []
        if self.session.relations is not None:
            out.append(self.session.relations)
        out.extend(self.extra_relations)
        return out

    def eval(self, node: Expr) -> Multivector:
        alg = self.session.algebra
        if isinstance(node, Num):
            return alg.scalar(C(node.value))
        if isinstance(node, ImagUnit):
            return alg.scalar(IMAG)
        if isinstance(node, Name):
            mv = self.session.table.get(node.ident)
            if mv is not None:
                return mv
            if _GENERATOR_SHAPE.match(node.ident):
                raise UnknownSymbol(node.ident, self.session.generator_names())
            return alg.scalar(sym(node.ident))
        if isinstance(node, Neg):
            return -self.eval(node.operand)
        if isinstance(node, BinOp):
            left = self.eval(node.left)
            right = self.eval(node.right)
            try:
                if node.op == "+":
                    return left + right
                if node.op == "-":
                    return left - right
                if node.op == "*":
                    return self.session.product(left, right)
                if node.op == "/\\":
                    return graded_products(left, right)[1]
                return graded_products(left, right)[0]  # '|' and '.'
            except (AlgebraError, ScalarError) as exc:
                raise EvalError(str(exc), node.pos) from exc
        if isinstance(node, Pow):
            base = self.eval(node.base)
            n = node.exponent
            try:
                if n < 0:
                    base = star_inverse(base)
                    n = -n
                out = self.session.algebra.one()
                for _ in range(n):
                    out = self.session.product(out, base)
                return out
            except (AlgebraError, ScalarError) as exc:
                raise EvalError(str(exc), node.pos) from exc
        if isinstance(node, Call):
            return self.call(node)
        raise EvalError(f"cannot evaluate {type(node).__name__}", getattr(node, "pos", 0))

    def call(self, node: Call) -> Multivector:
        name = node.func
        expected = 2 if name == "grade" else 1
        if len(node.args) != expected:
            raise EvalError(f"{name}() takes {expected} argument(s)", node.pos)
        value = self.eval(node.args[0])
        alg = self.session.algebra
        try:
            if name == "grade":
                arg = self.eval(node.args[1])
                n = arg.scalar_part()
                if not arg.is_scalar() or not n.is_rational() \
                        or n.rational_value().im or n.rational_value().re.denominator != 1:
                    raise EvalError("grade() needs an integer grade", node.args[1].pos)
                return grade_project(value, int(n.rational_value().re))
            if name == "rev":
                return involution(value)
            if name == "hodge":
                return hodge_dual(value)
            if name == "tr":
                return alg.scalar(trace(value))
            if name == "berezin":
                return alg.scalar(berezin(value))
            if name == "expb":
                se = exp_bivector(value)
                if se.relations is not None:
                    self.extra_relations.append(se.relations)
                return se.mv
            if name == "dual":
                return dual(value)
        except (AlgebraError, ScalarError) as exc:
            raise EvalError(str(exc), node.pos) from exc
        raise EvalError(f"unknown function {name}", node.pos)


def evaluate(text: str, session: Session) -> Multivector:
    return _Evaluator(session).run(parse(text))


def eval_command(text: str, session: Session) -> str:
    """Parse, evaluate and pretty-print in canonical blade order."""
    return str(evaluate(text, session))
