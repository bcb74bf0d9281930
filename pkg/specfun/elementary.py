# Principal-branch elementary functions with pole and overflow checks
import cmath

import config
from utils.errors import DomainError, PoleNear


class SpecialFunctionError(DomainError):
    """Custom exception for overflow or branch violations in special functions."""

    pass


def _half_plane_ratio(x: complex) -> complex:
    """q = exp(2ix) or exp(-2ix), whichever has modulus <= 1."""
    return cmath.exp(2j * x) if x.imag >= 0 else cmath.exp(-2j * x)


def cot(x: complex) -> complex:
    x = complex(x)
    q = _half_plane_ratio(x)
    if abs(1 - q) <= config.POLE_EPS:
        raise PoleNear(x, "cot evaluated at a multiple of pi")
    value = 1j * (q + 1) / (q - 1)
    return value if x.imag >= 0 else -value


def csc2(x: complex) -> complex:
    """1/sin(x)^2 without overflow for large |Im x|."""
    x = complex(x)
    q = _half_plane_ratio(x)
    if abs(1 - q) <= config.POLE_EPS:
        raise PoleNear(x, "csc evaluated at a multiple of pi")
    return -4 * q / (1 - q) ** 2


def exp(x: complex) -> complex:
    try:
        return cmath.exp(x)
    except OverflowError:
        raise SpecialFunctionError(f"exp overflow at {x} (scale e^{complex(x).real:.1f})")


def tanh(x: complex) -> complex:
    x = complex(x)
    # poles at i*pi*(k + 1/2): where exp(-2|x|) = -1
    q = cmath.exp(-2 * x) if x.real >= 0 else cmath.exp(2 * x)
    if abs(1 + q) <= config.POLE_EPS:
        raise PoleNear(x, "tanh evaluated at a pole")
    value = (1 - q) / (1 + q)
    return value if x.real >= 0 else -value


def log(x: complex) -> complex:
    if x == 0:
        raise SpecialFunctionError("log of zero")
    return cmath.log(x)


def sqrt(x: complex) -> complex:
    return cmath.sqrt(x)


ELEMENTARY = {"exp": exp, "tanh": tanh, "cot": cot, "log": log, "sqrt": sqrt}


def elementary(name: str, x: complex) -> complex:
    try:
        function = ELEMENTARY[name]
    except KeyError:
        raise SpecialFunctionError(f"unknown elementary function {name!r}")
    return function(complex(x))
