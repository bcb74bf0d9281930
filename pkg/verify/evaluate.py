# Pointwise evaluation of bound expressions through the specfun evaluators
from __future__ import annotations

import cmath
from functools import singledispatch

import config
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
)
from algebra import ExactComplex
from specfun import bessel_j, bessel_j_prime, bessel_y, bessel_y_prime, elementary, invariants, wp_pair
from specfun.elementary import SpecialFunctionError
from utils.errors import InputError, PoleNear


class _Point:
    __slots__ = ("z", "cache", "pole_eps")

    def __init__(self, z: complex, pole_eps: float):
        self.z = z
        self.cache: dict[int, complex] = {}
        self.pole_eps = pole_eps


def evaluate(e: Expr, z: complex, pole_eps: float | None = None) -> complex:
    """Value of e at z; raises PoleNear when a denominator or special function is at a pole."""
    point = _Point(complex(z), config.POLE_EPS if pole_eps is None else pole_eps)
    value = _value(e, point)
    if not cmath.isfinite(value):
        raise PoleNear(point.z, "expression is not finite")
    return value


def _value(e: Expr, point: _Point) -> complex:
    key = id(e)
    cached = point.cache.get(key)
    if cached is not None:
        return cached
    value = _eval(e, point)
    point.cache[key] = value
    return value


@singledispatch
def _eval(e: Expr, point: _Point) -> complex:
    raise InputError(f"cannot evaluate node {type(e).__name__}")


@_eval.register
def _(e: Const, point: _Point) -> complex:
    return complex(e.value)


@_eval.register
def _(e: Param, point: _Point) -> complex:
    raise InputError(f"parameter {e.name!r} is unbound")


@_eval.register
def _(e: Var, point: _Point) -> complex:
    return point.z


@_eval.register
def _(e: Add, point: _Point) -> complex:
    return _value(e.left, point) + _value(e.right, point)


@_eval.register
def _(e: Sub, point: _Point) -> complex:
    return _value(e.left, point) - _value(e.right, point)


@_eval.register
def _(e: Neg, point: _Point) -> complex:
    return -_value(e.operand, point)


@_eval.register
def _(e: Mul, point: _Point) -> complex:
    return _value(e.left, point) * _value(e.right, point)


@_eval.register
def _(e: Div, point: _Point) -> complex:
    num = _value(e.left, point)
    den = _value(e.right, point)
    if abs(den) <= point.pole_eps * max(1.0, abs(num)):
        raise PoleNear(point.z, "denominator vanishes")
    return num / den


@_eval.register
def _(e: Pow, point: _Point) -> complex:
    base = _value(e.base, point)
    if isinstance(e.exponent, Const) and isinstance(e.exponent.value, ExactComplex) and e.exponent.value.is_integer():
        n = int(e.exponent.value.re)
        if n < 0 and abs(base) <= point.pole_eps:
            raise PoleNear(point.z, "negative power of a vanishing base")
        try:
            return base**n
        except OverflowError:
            raise SpecialFunctionError(f"power overflow at z={point.z}")
    exponent = _value(e.exponent, point)
    if base == 0:
        if exponent.real > 0:
            return 0j
        raise PoleNear(point.z, "non-positive power of zero")
    return cmath.exp(exponent * cmath.log(base))


@_eval.register
def _(e: Exp, point: _Point) -> complex:
    return elementary("exp", _value(e.arg, point))


@_eval.register
def _(e: Tanh, point: _Point) -> complex:
    return elementary("tanh", _value(e.arg, point))


@_eval.register
def _(e: Cot, point: _Point) -> complex:
    return elementary("cot", _value(e.arg, point))


@_eval.register
def _(e: Log, point: _Point) -> complex:
    return elementary("log", _value(e.arg, point))


@_eval.register
def _(e: Sqrt, point: _Point) -> complex:
    return elementary("sqrt", _value(e.arg, point))


def _wp_values(e, point: _Point) -> tuple[complex, complex]:
    inv = invariants(_value(e.g2, point), _value(e.g3, point))
    return wp_pair(_value(e.arg, point), inv)


@_eval.register
def _(e: Wp, point: _Point) -> complex:
    return _wp_values(e, point)[0]


@_eval.register
def _(e: WpPrime, point: _Point) -> complex:
    return _wp_values(e, point)[1]


@_eval.register
def _(e: BesselJ, point: _Point) -> complex:
    return bessel_j(_value(e.nu, point), _value(e.arg, point))


@_eval.register
def _(e: BesselY, point: _Point) -> complex:
    return bessel_y(_value(e.nu, point), _value(e.arg, point))


@_eval.register
def _(e: BesselJPrime, point: _Point) -> complex:
    return bessel_j_prime(_value(e.nu, point), _value(e.arg, point))


@_eval.register
def _(e: BesselYPrime, point: _Point) -> complex:
    return bessel_y_prime(_value(e.nu, point), _value(e.arg, point))


@_eval.register
def _(e: Compose, point: _Point) -> complex:
    inner = _value(e.inner, point)
    return _value(e.outer, _Point(inner, point.pole_eps))
