# Weierstrass p and p' from invariants: Laurent series plus duplication, with degenerations
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import mpmath
import numpy as np
from loguru import logger

import config
from utils.errors import PoleNear

from .elementary import SpecialFunctionError, cot, csc2

DegeneracyClass = Literal["Generic", "DoubleRoot", "TripleRoot"]

SERIES_RADIUS_FACTOR = 0.8
POLE_MAGNITUDE = 1e16


@dataclass(frozen=True)
class EllipticInvariants:
    g2: complex
    g3: complex
    discriminant: complex = field(init=False)
    degeneracy: DegeneracyClass = field(init=False)

    def __post_init__(self):
        g2, g3 = complex(self.g2), complex(self.g3)
        object.__setattr__(self, "g2", g2)
        object.__setattr__(self, "g3", g3)
        delta = g2**3 - 27 * g3**2
        object.__setattr__(self, "discriminant", delta)
        scale = max(abs(g2) ** 3, abs(g3) ** 2)
        if g2 == 0 and g3 == 0:
            degeneracy = "TripleRoot"
        elif abs(delta) <= config.DEGENERACY_TOL * scale:
            degeneracy = "DoubleRoot"
        else:
            degeneracy = "Generic"
        object.__setattr__(self, "degeneracy", degeneracy)

    @property
    def double_root(self) -> complex:
        """The repeated root e of 4x^3 - g2 x - g3 in the DoubleRoot class."""
        return -3 * self.g3 / (2 * self.g2)

    @property
    def series_radius(self) -> float:
        scale = max(abs(self.g2) ** 0.25, abs(self.g3) ** (1 / 6), 1e-12)
        return SERIES_RADIUS_FACTOR / scale


@lru_cache(maxsize=256)
def invariants(g2: complex, g3: complex) -> EllipticInvariants:
    return EllipticInvariants(complex(g2), complex(g3))


@lru_cache(maxsize=256)
def laurent_coefficients(g2: complex, g3: complex, degree: int) -> tuple[complex, ...]:
    """c_k with p(z) = z^-2 + sum_{k>=2} c_k z^(2k-2), up to z^degree."""
    top = degree // 2 + 1
    c = [0j] * (top + 1)
    if top >= 2:
        c[2] = g2 / 20
    if top >= 3:
        c[3] = g3 / 28
    for k in range(4, top + 1):
        c[k] = 3 / ((2 * k + 1) * (k - 3)) * sum(c[m] * c[k - m] for m in range(2, k - 1))
    return tuple(c)


def _series_pair(z: complex, inv: EllipticInvariants) -> tuple[complex, complex]:
    c = laurent_coefficients(inv.g2, inv.g3, config.WP_SERIES_DEGREE)
    z2 = z * z
    value = 1 / z2
    slope = -2 / (z2 * z)
    power = 1 + 0j  # z^(2k-4)
    for k in range(2, len(c)):
        value += c[k] * power * z2
        slope += (2 * k - 2) * c[k] * power * z
        power *= z2
    return value, slope


def _generic_pair(z: complex, inv: EllipticInvariants, extra_steps: int = 0) -> tuple[complex, complex]:
    radius = inv.series_radius
    steps = max(0, math.ceil(math.log2(abs(z) / radius))) if abs(z) > radius else 0
    steps += extra_steps
    w = z / 2**steps
    value, slope = _series_pair(w, inv)
    for _ in range(steps):
        if abs(slope) < 1e-300:
            raise PoleNear(z, "p' vanished during duplication (near a lattice point)")
        second = 6 * value * value - inv.g2 / 2
        m = second / slope
        doubled = m * m / 4 - 2 * value
        slope = -slope - m * (doubled - value)
        value = doubled
        if not (cmath.isfinite(value) and cmath.isfinite(slope)):
            raise PoleNear(z, "p overflowed during duplication")
    return value, slope


def wp_pair(z: complex, inv: EllipticInvariants, extra_steps: int = 0) -> tuple[complex, complex]:
    """(p(z), p'(z)) for the given invariants."""
    z = complex(z)
    if abs(z) <= config.POLE_EPS:
        raise PoleNear(0j, "p evaluated at the lattice origin")
    if inv.degeneracy == "TripleRoot":
        return 1 / z**2, -2 / z**3
    if inv.degeneracy == "DoubleRoot":
        e = inv.double_root
        k = cmath.sqrt(-3 * e)
        x = k * z
        inverse_square = csc2(x)
        return e + k * k * inverse_square, -2 * k**3 * cot(x) * inverse_square
    value, slope = _generic_pair(z, inv, extra_steps)
    if abs(value) > POLE_MAGNITUDE:
        raise PoleNear(z, "p evaluated next to a lattice point")
    return value, slope


def wp(z: complex, inv: EllipticInvariants) -> complex:
    return wp_pair(z, inv)[0]


def wp_prime(z: complex, inv: EllipticInvariants) -> complex:
    return wp_pair(z, inv)[1]


def _is_period(omega: complex, inv: EllipticInvariants) -> bool:
    probe = 0.137 + 0.071j
    probe *= max(abs(omega), 1e-3) * 0.3
    try:
        here = wp(probe, inv)
        there = wp(probe + omega, inv)
    except PoleNear:
        return False
    return abs(here - there) <= 1e-6 * (1 + abs(here))


def _reduce_basis(w1: complex, w2: complex) -> tuple[complex, complex]:
    """Lagrange-Gauss reduction of a lattice basis."""
    if abs(w2) < abs(w1):
        w1, w2 = w2, w1
    for _ in range(64):
        n = round((w2 / w1).real)
        w2 = w2 - n * w1
        if abs(w2) >= abs(w1):
            break
        w1, w2 = w2, w1
    return w1, w2


@lru_cache(maxsize=64)
def lattice_periods(g2: complex, g3: complex) -> tuple[complex, ...]:
    """Reduced basis of the period lattice; one period for DoubleRoot, none for TripleRoot."""
    inv = invariants(g2, g3)
    if inv.degeneracy == "TripleRoot":
        return ()
    if inv.degeneracy == "DoubleRoot":
        return (cmath.pi / cmath.sqrt(-3 * inv.double_root),)
    roots = np.roots([4, 0, -inv.g2, -inv.g3])
    for e1, e2, e3 in itertools.permutations(roots):
        try:
            m = (e2 - e3) / (e1 - e3)
            s = mpmath.sqrt(mpmath.mpc(e1 - e3))
            big_k = mpmath.ellipk(m)
            small_k = mpmath.ellipk(1 - m)
        except (ZeroDivisionError, ValueError):
            continue
        w1 = complex(2 * big_k / s)
        w2 = complex(2j * small_k / s)
        if not (cmath.isfinite(w1) and cmath.isfinite(w2)):
            continue
        if abs((w2 / w1).imag) < 1e-9:
            continue
        if _is_period(w1, inv) and _is_period(w2, inv):
            basis = _reduce_basis(w1, w2)
            logger.debug(f"Lattice basis for g2={g2}, g3={g3}: {basis}")
            return basis
    raise SpecialFunctionError(f"could not determine the period lattice for g2={g2}, g3={g3}")
