# Symbolic d/dz over the expression node set; closed under its own rules
from __future__ import annotations

from functools import singledispatch

from classify.expr import (
    Add,
    BesselJ,
    BesselJPrime,
    BesselY,
    BesselYPrime,
    Compose,
    Const,
    Cot,
    Div,
    Exp,
    Expr,
    Log,
    Mul,
    Neg,
    Param,
    Pow,
    Sqrt,
    Sub,
    Tanh,
    Var,
    Wp,
    WpPrime,
    depends_on_z,
    wrap,
)
from utils.errors import DomainError, InputError


def differentiate(e: Expr) -> Expr:
    return _d(e)


def derivatives(e: Expr, order: int) -> list[Expr]:
    """[e, e', ..., e^(order)]."""
    out = [e]
    for _ in range(order):
        out.append(_d(out[-1]))
    return out


@singledispatch
def _d(e: Expr) -> Expr:
    raise InputError(f"cannot differentiate node {type(e).__name__}")


@_d.register
def _(e: Const) -> Expr:
    return wrap(0)


@_d.register
def _(e: Param) -> Expr:
    return wrap(0)


@_d.register
def _(e: Var) -> Expr:
    return wrap(1)


@_d.register
def _(e: Add) -> Expr:
    return _d(e.left) + _d(e.right)


@_d.register
def _(e: Sub) -> Expr:
    return _d(e.left) - _d(e.right)


@_d.register
def _(e: Neg) -> Expr:
    return -_d(e.operand)


@_d.register
def _(e: Mul) -> Expr:
    return _d(e.left) * e.right + e.left * _d(e.right)


@_d.register
def _(e: Div) -> Expr:
    return (_d(e.left) * e.right - e.left * _d(e.right)) / e.right**2


@_d.register
def _(e: Pow) -> Expr:
    if depends_on_z(e.exponent):
        raise DomainError("exponents depending on z are not supported; use exp(log(.)) instead")
    return e.exponent * e.base ** (e.exponent - 1) * _d(e.base)


@_d.register
def _(e: Exp) -> Expr:
    return e * _d(e.arg)


@_d.register
def _(e: Tanh) -> Expr:
    return (1 - e**2) * _d(e.arg)


@_d.register
def _(e: Cot) -> Expr:
    return -(1 + e**2) * _d(e.arg)


@_d.register
def _(e: Log) -> Expr:
    return _d(e.arg) / e.arg


@_d.register
def _(e: Sqrt) -> Expr:
    return _d(e.arg) / (2 * e)


@_d.register
def _(e: Wp) -> Expr:
    return WpPrime(e.arg, e.g2, e.g3) * _d(e.arg)


@_d.register
def _(e: WpPrime) -> Expr:
    # p'' = 6 p^2 - g2/2
    return (6 * Wp(e.arg, e.g2, e.g3) ** 2 - e.g2 / 2) * _d(e.arg)


@_d.register
def _(e: BesselJ) -> Expr:
    return BesselJPrime(e.nu, e.arg) * _d(e.arg)


@_d.register
def _(e: BesselY) -> Expr:
    return BesselYPrime(e.nu, e.arg) * _d(e.arg)


def _bessel_second(value: Expr, slope: Expr, nu: Expr, x: Expr) -> Expr:
    # from x^2 f'' + x f' + (x^2 - nu^2) f = 0
    return -slope / x - (1 - nu**2 / x**2) * value


@_d.register
def _(e: BesselJPrime) -> Expr:
    return _bessel_second(BesselJ(e.nu, e.arg), e, e.nu, e.arg) * _d(e.arg)


@_d.register
def _(e: BesselYPrime) -> Expr:
    return _bessel_second(BesselY(e.nu, e.arg), e, e.nu, e.arg) * _d(e.arg)


@_d.register
def _(e: Compose) -> Expr:
    outer = _d(e.outer)
    if isinstance(outer, Const):
        return outer * _d(e.inner)
    return Compose(outer, e.inner) * _d(e.inner)
