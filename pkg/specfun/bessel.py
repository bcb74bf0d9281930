# Bessel J and Y of complex order and argument on the principal branch
from __future__ import annotations

import cmath

import mpmath

from utils.errors import PoleNear

from .elementary import SpecialFunctionError


def _finite(value, name: str, nu: complex, zeta: complex) -> complex:
    try:
        result = complex(value)
    except OverflowError:
        result = complex("inf")
    if not cmath.isfinite(result):
        scale = float(abs(complex(zeta).imag))
        raise SpecialFunctionError(
            f"{name}(nu={nu}, zeta={zeta}) overflowed (|Im zeta| = {scale:.1f}, growth ~ e^{scale:.1f})"
        )
    return result


def bessel_j(nu: complex, zeta: complex) -> complex:
    nu, zeta = complex(nu), complex(zeta)
    return _finite(mpmath.besselj(nu, zeta), "J", nu, zeta)


def bessel_y(nu: complex, zeta: complex) -> complex:
    nu, zeta = complex(nu), complex(zeta)
    if zeta == 0:
        raise PoleNear(0j, "Y evaluated at zeta = 0")
    return _finite(mpmath.bessely(nu, zeta), "Y", nu, zeta)


def bessel_j_prime(nu: complex, zeta: complex) -> complex:
    """2 J'_nu = J_(nu-1) - J_(nu+1)."""
    return (bessel_j(nu - 1, zeta) - bessel_j(nu + 1, zeta)) / 2


def bessel_y_prime(nu: complex, zeta: complex) -> complex:
    return (bessel_y(nu - 1, zeta) - bessel_y(nu + 1, zeta)) / 2


def bessel_second(kind: str, nu: complex, zeta: complex) -> complex:
    """f'' from the Bessel equation zeta^2 f'' + zeta f' + (zeta^2 - nu^2) f = 0."""
    zeta = complex(zeta)
    if zeta == 0:
        raise PoleNear(0j, "Bessel equation is singular at zeta = 0")
    if kind == "J":
        value, slope = bessel_j(nu, zeta), bessel_j_prime(nu, zeta)
    elif kind == "Y":
        value, slope = bessel_y(nu, zeta), bessel_y_prime(nu, zeta)
    else:
        raise SpecialFunctionError(f"unknown Bessel kind {kind!r}")
    return -slope / zeta - (1 - nu * nu / (zeta * zeta)) * value
