# Expression trees for closed-form solutions in z with named parameter slots
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from typing import Mapping

import sympy

from algebra import ExactComplex
from algebra.numbers import Scalar
from utils.errors import InputError


class Expr:
    """Base node; arithmetic builds simplified trees."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, wrap(other))

    def __radd__(self, other):
        return add(wrap(other), self)

    def __sub__(self, other):
        return sub(self, wrap(other))

    def __rsub__(self, other):
        return sub(wrap(other), self)

    def __mul__(self, other):
        return mul(self, wrap(other))

    def __rmul__(self, other):
        return mul(wrap(other), self)

    def __truediv__(self, other):
        return div(self, wrap(other))

    def __rtruediv__(self, other):
        return div(wrap(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: Scalar


@dataclass(frozen=True, eq=True)
class Param(Expr):
    name: str


@dataclass(frozen=True, eq=True)
class Var(Expr):
    pass


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    """base**exponent with an exponent free of z."""

    base: Expr
    exponent: Expr


@dataclass(frozen=True, eq=True)
class Exp(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Tanh(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Cot(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Log(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Sqrt(Expr):
    arg: Expr


@dataclass(frozen=True, eq=True)
class Wp(Expr):
    arg: Expr
    g2: Expr
    g3: Expr


@dataclass(frozen=True, eq=True)
class WpPrime(Expr):
    arg: Expr
    g2: Expr
    g3: Expr


@dataclass(frozen=True, eq=True)
class BesselJ(Expr):
    nu: Expr
    arg: Expr


@dataclass(frozen=True, eq=True)
class BesselY(Expr):
    nu: Expr
    arg: Expr


@dataclass(frozen=True, eq=True)
class BesselJPrime(Expr):
    nu: Expr
    arg: Expr


@dataclass(frozen=True, eq=True)
class BesselYPrime(Expr):
    nu: Expr
    arg: Expr


@dataclass(frozen=True, eq=True)
class Compose(Expr):
    """outer evaluated at inner: z in `outer` stands for the value of `inner`."""

    outer: Expr
    inner: Expr


Z = Var()
FUNCTIONS = (Exp, Tanh, Cot, Log, Sqrt)
WEIERSTRASS = (Wp, WpPrime)
BESSEL = (BesselJ, BesselY, BesselJPrime, BesselYPrime)


def wrap(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not expression constants")
    if isinstance(value, (ExactComplex, int, Fraction)):
        return Const(ExactComplex.of(value))
    if isinstance(value, (float, complex)):
        return Const(complex(value))
    raise TypeError(f"cannot use {type(value).__name__} in an expression")


def const(value) -> Const:
    return wrap(value)


def _is_value(e: Expr, value) -> bool:
    return isinstance(e, Const) and e.value == value


def is_zero(e: Expr) -> bool:
    return isinstance(e, Const) and (e.value == 0 if isinstance(e.value, ExactComplex) else e.value == 0j)


def _is_one(e: Expr) -> bool:
    return isinstance(e, Const) and (e.value == 1 if isinstance(e.value, ExactComplex) else e.value == 1 + 0j)


def add(a: Expr, b: Expr) -> Expr:
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return wrap(a.value + b.value)
    if isinstance(b, Neg):
        return sub(a, b.operand)
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if is_zero(b):
        return a
    if is_zero(a):
        return neg(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return wrap(a.value - b.value)
    return Sub(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return wrap(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def mul(a: Expr, b: Expr) -> Expr:
    if is_zero(a) or is_zero(b):
        return wrap(0)
    if _is_one(a):
        return b
    if _is_one(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return wrap(a.value * b.value)
    if _is_value(a, -1):
        return neg(b)
    if _is_value(b, -1):
        return neg(a)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if is_zero(b):
        raise ZeroDivisionError("expression divided by the constant zero")
    if _is_one(b):
        return a
    if is_zero(a):
        return wrap(0)
    if isinstance(a, Const) and isinstance(b, Const):
        return wrap(a.value / b.value)
    return Div(a, b)


def power(base: Expr, exponent) -> Expr:
    exponent = wrap(exponent)
    if is_zero(exponent):
        return wrap(1)
    if _is_one(exponent):
        return base
    if isinstance(base, Const) and isinstance(exponent, Const):
        value = exponent.value
        if isinstance(value, ExactComplex) and value.is_integer():
            return wrap(base.value ** int(value.re))
    return Pow(base, exponent)


def exp(arg) -> Expr:
    arg = wrap(arg)
    return wrap(1) if is_zero(arg) else Exp(arg)


def tanh(arg) -> Expr:
    return Tanh(wrap(arg))


def cot(arg) -> Expr:
    return Cot(wrap(arg))


def log(arg) -> Expr:
    return Log(wrap(arg))


def sqrt(arg) -> Expr:
    return Sqrt(wrap(arg))


def wp(arg, g2, g3) -> Expr:
    return Wp(wrap(arg), wrap(g2), wrap(g3))


def wp_prime(arg, g2, g3) -> Expr:
    return WpPrime(wrap(arg), wrap(g2), wrap(g3))


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (Const, Param, Var)):
        return ()
    return tuple(getattr(e, name) for name in e.__dataclass_fields__)


def rebuild(e: Expr, parts: tuple[Expr, ...]) -> Expr:
    """Same node type over new children, through the simplifying constructors."""
    if isinstance(e, Add):
        return add(*parts)
    if isinstance(e, Sub):
        return sub(*parts)
    if isinstance(e, Mul):
        return mul(*parts)
    if isinstance(e, Div):
        return div(*parts)
    if isinstance(e, Neg):
        return neg(*parts)
    if isinstance(e, Pow):
        return power(*parts)
    if isinstance(e, (Const, Param, Var)):
        return e
    return type(e)(*parts)


def substitute(e: Expr, assignment: Mapping[str, object]) -> Expr:
    """Replaces named Param slots by constants (or expressions)."""
    cache: dict[int, Expr] = {}

    def walk(node: Expr) -> Expr:
        key = id(node)
        if key in cache:
            return cache[key]
        if isinstance(node, Param) and node.name in assignment:
            result = wrap(assignment[node.name])
        elif isinstance(node, (Const, Param, Var)):
            result = node
        else:
            result = rebuild(node, tuple(walk(c) for c in children(node)))
        cache[key] = result
        return result

    return walk(e)


def free_params(e: Expr) -> set[str]:
    found: set[str] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Param):
            found.add(node.name)
        stack.extend(children(node))
    return found


def depends_on_z(e: Expr) -> bool:
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            return True
        if isinstance(node, Compose):
            # z inside `outer` refers to `inner`
            stack.append(node.inner)
            continue
        stack.extend(children(node))
    return False


_WP = sympy.Function("wp")
_WP_PRIME = sympy.Function("wp_prime")
_J_PRIME = sympy.Function("besselj_prime")
_Y_PRIME = sympy.Function("bessely_prime")
Z_SYMBOL = sympy.Symbol("z")


def _sympy_scalar(value: Scalar):
    if isinstance(value, ExactComplex):
        return sympy.Rational(value.re.numerator, value.re.denominator) + sympy.I * sympy.Rational(
            value.im.numerator, value.im.denominator
        )
    value = complex(value)
    if value.imag == 0:
        return sympy.Float(value.real, 15)
    return sympy.Float(value.real, 15) + sympy.I * sympy.Float(value.imag, 15)


@singledispatch
def to_sympy(e: Expr):
    raise InputError(f"unknown expression node {type(e).__name__}")


@to_sympy.register
def _(e: Const):
    return _sympy_scalar(e.value)


@to_sympy.register
def _(e: Param):
    return sympy.Symbol(e.name)


@to_sympy.register
def _(e: Var):
    return Z_SYMBOL


@to_sympy.register
def _(e: Add):
    return to_sympy(e.left) + to_sympy(e.right)


@to_sympy.register
def _(e: Sub):
    return to_sympy(e.left) - to_sympy(e.right)


@to_sympy.register
def _(e: Mul):
    return to_sympy(e.left) * to_sympy(e.right)


@to_sympy.register
def _(e: Div):
    return to_sympy(e.left) / to_sympy(e.right)


@to_sympy.register
def _(e: Neg):
    return -to_sympy(e.operand)


@to_sympy.register
def _(e: Pow):
    return to_sympy(e.base) ** to_sympy(e.exponent)


@to_sympy.register
def _(e: Exp):
    return sympy.exp(to_sympy(e.arg))


@to_sympy.register
def _(e: Tanh):
    return sympy.tanh(to_sympy(e.arg))


@to_sympy.register
def _(e: Cot):
    return sympy.cot(to_sympy(e.arg))


@to_sympy.register
def _(e: Log):
    return sympy.log(to_sympy(e.arg))


@to_sympy.register
def _(e: Sqrt):
    return sympy.sqrt(to_sympy(e.arg))


@to_sympy.register
def _(e: Wp):
    return _WP(to_sympy(e.arg), to_sympy(e.g2), to_sympy(e.g3))


@to_sympy.register
def _(e: WpPrime):
    return _WP_PRIME(to_sympy(e.arg), to_sympy(e.g2), to_sympy(e.g3))


@to_sympy.register
def _(e: BesselJ):
    return sympy.besselj(to_sympy(e.nu), to_sympy(e.arg))


@to_sympy.register
def _(e: BesselY):
    return sympy.bessely(to_sympy(e.nu), to_sympy(e.arg))


@to_sympy.register
def _(e: BesselJPrime):
    return _J_PRIME(to_sympy(e.nu), to_sympy(e.arg))


@to_sympy.register
def _(e: BesselYPrime):
    return _Y_PRIME(to_sympy(e.nu), to_sympy(e.arg))


@to_sympy.register
def _(e: Compose):
    return to_sympy(e.outer).subs(Z_SYMBOL, to_sympy(e.inner))


def render(e: Expr) -> str:
    """Human-readable form; deterministic for equal trees."""
    return sympy.sstr(to_sympy(e))


def constant_value(e: Expr) -> complex:
    """Numeric value of a z-free expression without special-function nodes."""
    if depends_on_z(e):
        raise InputError("expression still depends on z")
    unbound = free_params(e)
    if unbound:
        raise InputError(f"unbound parameters: {', '.join(sorted(unbound))}")
    return complex(sympy.N(to_sympy(e), 30))
