import cmath
import math

import numpy as np
import pytest

from specfun import (
    SpecialFunctionError,
    bessel_j,
    bessel_j_prime,
    bessel_y,
    bessel_y_prime,
    cot,
    elementary,
    invariants,
    lattice_periods,
    wp,
    wp_pair,
    wp_prime,
)
from specfun.bessel import bessel_second
from utils.errors import PoleNear


def test_degeneracy_classes():
    assert invariants(0, 0).degeneracy == "TripleRoot"
    assert invariants(12, -8).degeneracy == "DoubleRoot"
    assert invariants(1, 1).degeneracy == "Generic"


def test_triple_root_is_inverse_square():
    z = 0.3 + 0.1j
    assert wp(z, invariants(0, 0)) == pytest.approx(1 / z**2)
    assert wp_prime(z, invariants(0, 0)) == pytest.approx(-2 / z**3)


def test_double_root_closed_form():
    # g2 = 12, g3 = -8 has the double root e = 1
    z = 0.4 + 0.2j
    expected = 1 + 3 / cmath.sinh(math.sqrt(3) * z) ** 2
    assert wp(z, invariants(12, -8)) == pytest.approx(expected, rel=1e-12)


def test_differential_equation_on_random_points():
    rng = np.random.default_rng(0)
    checked = 0
    for _ in range(100):
        g2 = complex(*rng.uniform(-3, 3, 2))
        g3 = complex(*rng.uniform(-3, 3, 2))
        z = rng.uniform(0.1, 1.5) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        inv = invariants(g2, g3)
        try:
            p, dp = wp_pair(z, inv)
        except PoleNear:
            continue
        rhs = 4 * p**3 - g2 * p - g3
        scale = max(1.0, abs(dp) ** 2, abs(4 * p**3))
        assert abs(dp**2 - rhs) / scale < 1e-9
        checked += 1
    assert checked >= 90


def test_extra_duplication_agrees():
    inv = invariants(1 + 0.5j, -0.3)
    z = 0.9 - 0.4j
    plain = wp_pair(z, inv)
    refined = wp_pair(z, inv, extra_steps=1)
    assert refined[0] == pytest.approx(plain[0], rel=1e-8)
    assert refined[1] == pytest.approx(plain[1], rel=1e-8)


def test_pole_at_origin():
    with pytest.raises(PoleNear):
        wp(0, invariants(1, 1))


def test_lattice_periods_are_periods():
    periods = lattice_periods(4, 0)
    assert len(periods) == 2
    z = 0.3 + 0.2j
    inv = invariants(4, 0)
    for omega in periods:
        assert wp(z + omega, inv) == pytest.approx(wp(z, inv), rel=1e-7)


def test_degenerate_lattices():
    assert lattice_periods(0, 0) == ()
    assert len(lattice_periods(12, -8)) == 1


def test_half_order_closed_form():
    x = 1.3
    assert bessel_j(0.5, x) == pytest.approx(math.sqrt(2 / (math.pi * x)) * math.sin(x), rel=1e-12)
    assert bessel_y(0.5, x) == pytest.approx(-math.sqrt(2 / (math.pi * x)) * math.cos(x), rel=1e-12)


def test_wronskian():
    rng = np.random.default_rng(1)
    for _ in range(25):
        nu = complex(rng.uniform(-2, 2), rng.uniform(-0.5, 0.5))
        zeta = complex(rng.uniform(0.2, 6), rng.uniform(-3, 3))
        w = bessel_j(nu, zeta) * bessel_y_prime(nu, zeta) - bessel_j_prime(nu, zeta) * bessel_y(nu, zeta)
        assert w == pytest.approx(2 / (math.pi * zeta), rel=1e-9)


@pytest.mark.parametrize("kind, value, slope", [("J", bessel_j, bessel_j_prime), ("Y", bessel_y, bessel_y_prime)])
def test_derivatives_against_finite_differences(kind, value, slope):
    nu, zeta, h = 1 / 3, 2.1 + 0.7j, 1e-5
    numeric = (value(nu, zeta + h) - value(nu, zeta - h)) / (2 * h)
    assert slope(nu, zeta) == pytest.approx(numeric, rel=1e-7)
    numeric_second = (slope(nu, zeta + h) - slope(nu, zeta - h)) / (2 * h)
    assert bessel_second(kind, nu, zeta) == pytest.approx(numeric_second, rel=1e-6)


def test_bessel_y_pole():
    with pytest.raises(PoleNear):
        bessel_y(1, 0)


def test_unknown_bessel_kind():
    with pytest.raises(SpecialFunctionError):
        bessel_second("K", 1, 1)


def test_cot_pole_and_far_field():
    with pytest.raises(PoleNear):
        cot(math.pi)
    assert cot(400j) == pytest.approx(-1j)
    assert cot(-400j) == pytest.approx(1j)


def test_tanh_saturates():
    assert elementary("tanh", 1000) == pytest.approx(1.0)
    assert elementary("tanh", -1000) == pytest.approx(-1.0)


def test_unknown_elementary():
    with pytest.raises(SpecialFunctionError):
        elementary("sec", 1)
