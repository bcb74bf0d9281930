import cmath
import random
from fractions import Fraction

import pytest

from classify import Z, classify, instantiate, substitute, wrap
from classify.expr import BesselJ, cot, exp, log, sqrt, tanh, wp, wp_prime
from operators import FactorChain, expand_chain
from painleve import LeadingBalance, laurent_expand
from utils.errors import InputError, PoleNear
from verify import InconclusiveError, derivatives, differentiate, evaluate, relative_residual, residual, residual_series


def test_evaluate_simple_expressions():
    assert evaluate(-2 / (3 * Z), 1) == pytest.approx(-2 / 3)
    assert evaluate(exp(Z) * Z**2, 1j) == pytest.approx(cmath.exp(1j) * -1)


def test_evaluate_pole():
    with pytest.raises(PoleNear):
        evaluate(1 / Z, 0)


def test_evaluate_unbound_slot():
    family = classify(0, 1, 0, 3, 0).family("I.B2.row4")
    with pytest.raises(InputError):
        evaluate(family.expr, 1)


@pytest.mark.parametrize(
    "expr",
    [
        tanh(Z**2) + 3 * Z,
        cot(Z / 2 + 0.3) * exp(-Z),
        wp_prime(exp(2 * Z) - 0.3, 0, 1),
        wp(Z + 0.4j, 1, 0.5) / (1 + Z),
        sqrt(Z + 5) * log(Z + 4),
        BesselJ(wrap(Fraction(1, 3)), 2 * exp(Z / 2)),
    ],
)
def test_derivative_matches_finite_differences(expr):
    derivative = differentiate(expr)
    h = 1e-5
    for z in (0.4 + 0.3j, -0.7 + 0.2j, 0.9 - 0.8j):
        numeric = (evaluate(expr, z + h) - evaluate(expr, z - h)) / (2 * h)
        exact = evaluate(derivative, z)
        assert abs(exact - numeric) <= 1e-6 * (1 + abs(exact))


def test_derivatives_list():
    jet = derivatives(Z**3, 3)
    assert [evaluate(d, 2) for d in jet] == pytest.approx([8, 12, 12, 6])


def test_particular_family_value():
    # alpha = 1, a1 = 1, b1 = 1, c = 2 gives u(0) = -3
    report = classify(1, 1, 1, 3, 0)
    u = instantiate(report.family("particular-riccati"), {"c": 2})
    assert evaluate(u, 0) == pytest.approx(-3)


def test_constant_alpha_has_zero_residual():
    chain = FactorChain.of(2, (1, 3), (-5, 4))
    report = residual(chain, wrap(2), n=10)
    assert report.max_relative_residual == 0
    assert report.passed


FAMILIES = [
    ((Fraction(1, 2), 1, 1, 3, 0), "particular-riccati", {"c": 0.7}),
    ((0, 1, 0, 3, 0), "I.B2.row4", {"z0": 0.2}),
    ((1, 1, 1, 3, 1), "I.B2.row1", {"z0": 0.1}),
    ((1, 1, 1, 3, -1), "I.B2.row2", {"z0": 0.1}),
    ((1, 1, 1, 3, 0), "I.B2.row3", {"z0": 0.1}),
    ((0, 1, 1, 1, 2), "I.A1.i", {"c1": 1, "c2": 2, "beta": 3}),
    ((0, 1, 0, 1, 2), "I.A1.ii", {"c1": 1, "c2": 2, "beta": 3}),
    ((0, 1, 1, 1, 1), "I.A1.iii", {"c1": 1, "c2": 2, "beta": 3}),
    ((0, 1, 1, 1, 0), "I.A1.iv", {"c1": 1, "c2": 2, "beta": 3}),
    ((0, 1, 0, 1, 0), "I.A1.v", {"c1": 1, "c2": 2, "beta": 3}),
    ((0, 1, 0, -1, 0), "I.A2.i", {"z0": 0.1, "g3": 1}),
    ((0, 1, Fraction(1, 2), -1, 1), "I.A2.ii(2,1)", {"zeta0": 0.3, "g3": 1}),
    ((0, 1, -2, -4, 4), "I.A3.1.i", {"z0": 0.1, "g3": 0.5}),
    ((0, 1, 0, 4, 0), "I.A4.i", {"c0": 0.5, "c1": -0.7}),
    ((0, 1, 1, 4, 2), "I.A4.ii", {"c1": 0.5}),
    ((0, 1, 1, 4, 2), "I.A4.iii", {"c0": 1, "c1": 2, "beta": 3}),
    ((0, 1, -2, -2, 2), "II.c=0.midpoint+", {"z0": 0.1}),
    ((0, 1, -2, -2, 2), "II.c=0.two-cot[1]", {"z0": 0.1}),
    ((0, 1, -2, -2, 2), "II.c=0.wp", {"z0": 0.1, "h": 0.5}),
    ((0, 1, 0, -2, 0), "II.c=0.double+", {"z0": 0.1}),
    ((0, 1, -1, -2, 6), "II.c!=0.exp-ratio-[3]", {"z0": 0.1}),
    ((1, 1, 0, -2, 4), "II.c!=0.wp-exp-[2]", {"zeta0": 0.2, "g2": 1}),
    ((0, 0, 1, 1, 2), "III.c0=0", {"c1": 0.5}),
    ((0, 0, 1, 1, 2), "III.tanh", {"c0": 0.7, "c1": 0.3}),
    ((0, 1, 1, 0, 2), "IV.bessel", {"beta": 0.6, "c1": 1, "c2": 0.5}),
    ((0, 1, 1, 0, 2), "IV.bessel-half", {"beta": 0.6, "c1": 1, "c2": 0.5}),
    ((0, 1, 1, 0, 3), "IV.bessel", {"beta": 0.6, "c1": 1, "c2": 0.5}),
    ((0, 0, 1, 0, 2), "V.linear", {"c1": 0.5, "c2": -0.3}),
    ((0, 0, 1, 0, 1), "V.linear-double", {"c1": 0.5, "c2": -0.3}),
    ((0, 0, 0, 1, 1), "V.cot-outer", {"c1": 0.8, "c2": 0.3}),
    ((1, 1, 0, 0, 0), "V.cot-inner", {"c1": 0.8, "c2": 0.3}),
]


@pytest.mark.parametrize("chain, tag, assignment", FAMILIES, ids=[tag + str(chain) for chain, tag, _ in FAMILIES])
def test_families_solve_their_chain(chain, tag, assignment):
    report = classify(*chain)
    u = instantiate(report.family(tag), assignment)
    for seed in (0, 1):
        verdict = residual(report.chain, u, n=20, seed=seed)
        assert verdict.passed, verdict.max_relative_residual


def _jittered(assignment, rng):
    return {name: value * (1 + rng.uniform(-0.2, 0.2)) for name, value in assignment.items()}


@pytest.mark.parametrize("chain, tag, assignment", FAMILIES, ids=[tag + str(chain) for chain, tag, _ in FAMILIES])
def test_random_instantiations_solve_their_chain(chain, tag, assignment):
    report = classify(*chain)
    family = report.family(tag)
    rng = random.Random(tag)
    for k in range(50):
        values = _jittered(assignment, rng)
        verdict = residual(report.chain, instantiate(family, values), n=20, seed=k)
        assert verdict.passed, (values, verdict.max_relative_residual)


@pytest.mark.parametrize("chain, tag, assignment", FAMILIES, ids=[tag + str(chain) for chain, tag, _ in FAMILIES])
def test_shifted_chain_rejects_the_family(chain, tag, assignment):
    # b1 and b2 both moved by 1/2: every case relation on the chain is broken
    alpha, a1, b1, a2, b2 = chain
    u = instantiate(classify(*chain).family(tag), assignment)
    shifted = FactorChain.of(alpha, (a1, b1 + Fraction(1, 2)), (a2, b2 + Fraction(1, 2)))
    verdict = residual(shifted, u, n=20)
    assert verdict.verdict == "Fail"
    assert verdict.max_relative_residual >= 1e-3


def test_perturbed_chain_fails():
    u = instantiate(classify(1, 1, 1, 3, 1).family("I.B2.row1"), {"z0": 0.1})
    verdict = residual(FactorChain.of(1, (1, 1), (3, Fraction(11, 10))), u, n=20)
    assert verdict.verdict == "Fail"
    assert verdict.max_relative_residual >= 1e-3


def test_wrong_shift_fails():
    family = classify(0, 1, -2, -2, 2).family("II.c=0.two-cot[1]")
    broken = substitute(family.expr, {"z0": 0.1, "a": 1.0})
    verdict = residual(classify(0, 1, -2, -2, 2).chain, broken, n=20)
    assert verdict.verdict == "Fail"


def test_bessel_half_agrees_with_bessel():
    report = classify(0, 1, 1, 0, 2)
    values = {"beta": 0.6, "c1": 1, "c2": 0.5}
    general = instantiate(report.family("IV.bessel"), values)
    half = instantiate(report.family("IV.bessel-half"), values)
    for z in (0.3 + 0.2j, -0.5 + 0.1j, 0.8 - 0.6j):
        assert evaluate(half, z) == pytest.approx(evaluate(general, z), rel=1e-8)


def test_inconclusive_when_always_at_a_pole():
    chain = FactorChain.of(0, (1, 0))
    with pytest.raises(InconclusiveError):
        residual(chain, 1 / (Z - Z), n=10)


def test_relative_residual_scale():
    poly = expand_chain(FactorChain.of(0, (1, 0)))
    assert relative_residual(poly, [2, 4]) == 0
    assert relative_residual(poly, [1, 3]) == pytest.approx(2 / 3)


def test_series_residual_of_pole_solution():
    poly = expand_chain(FactorChain.of(0, (1, 0)))
    assert residual_series(poly, laurent_expand(poly, LeadingBalance(-1, -1), 5)) is None
