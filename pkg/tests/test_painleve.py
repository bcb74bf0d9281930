import random
from fractions import Fraction

import pytest

from algebra import ExactComplex, UniPoly, exact_roots
from operators import FactorChain, expand_chain, expand_Dn
from painleve import (
    DegenerateChainError,
    LeadingBalance,
    NotABalanceError,
    ObstructedResonanceError,
    fuchs_pair,
    genericity_test,
    indicial_data,
    indicial_direct,
    indicial_recursive,
    laurent_expand,
    leading_balances,
    residue_poly,
)
from verify import residual_series

from .conftest import gaussian

j = UniPoly.x("j")


def test_riccati_indicial():
    assert indicial_recursive([1], -1) == j + 1


def test_order_two_indicial():
    assert indicial_recursive([1, 1], -1) == j * j - 1
    assert indicial_recursive([1, 1], -2) == (j + 1) * (j + 2)


def test_residue_poly_roots_are_balances():
    r = residue_poly([1, 3])
    assert r(ExactComplex(-1)) == 0
    assert r(ExactComplex(Fraction(-2, 3))) == 0
    assert r.degree == 3


def test_degenerate_chain():
    with pytest.raises(DegenerateChainError):
        indicial_recursive([1, 0], -1)
    with pytest.raises(DegenerateChainError):
        fuchs_pair(0, 1)


@pytest.mark.parametrize("a1, a2", [(1, 1), (1, 3), (2, -5), (Fraction(1, 2), Fraction(7, 3)), (ExactComplex(1, 1), 2)])
def test_fuchs_pair_are_roots(a1, a2):
    a1, a2 = ExactComplex.of(a1), ExactComplex.of(a2)
    j1, j2 = fuchs_pair(a1, a2)
    first = indicial_recursive([a1, a2], -1 / a1)
    second = indicial_recursive([a1, a2], ExactComplex(-2) / a2)
    assert first(ExactComplex(-1)) == 0 and first(j1) == 0
    assert second(ExactComplex(-1)) == 0 and second(j2) == 0


def test_fuchs_pair_relation():
    rng = random.Random(7)
    for _ in range(200):
        a1, a2 = gaussian(rng), gaussian(rng)
        j1, j2 = fuchs_pair(a1, a2)
        if j1 and j2:
            assert 2 / j1 + 2 / j2 == 1


def test_fuchs_pair_special_sets_on_grid():
    values = sorted({Fraction(p, q) for p in range(-6, 7) if p for q in range(1, 5)})
    three_six = {ExactComplex(3), ExactComplex(6)}
    one_minus_two = {ExactComplex(1), ExactComplex(-2)}
    for x in values:
        a1 = ExactComplex(x)
        for y in values:
            a2 = ExactComplex(y)
            pair = set(fuchs_pair(a1, a2))
            assert (pair == three_six) == (a2 in (-a1, a1 * -4))
            assert (pair == one_minus_two) == (a2 in (a1, a1 * 4))


@pytest.mark.parametrize("order", range(1, 5))
def test_indicial_of_derivative(order):
    # differentiating D_n multiplies its indicial polynomial by (j - n - 1)
    rng = random.Random(20 + order)
    for _ in range(20):
        a = [gaussian(rng) for _ in range(order)]
        derived = expand_Dn(a).derivative()
        for k, ak in enumerate(a, start=1):
            u0 = ExactComplex(-k) / ak
            expected = indicial_recursive(a, u0) * (j - (order + 1))
            assert indicial_direct(derived, LeadingBalance(-1, u0)) == expected


@pytest.mark.parametrize("n", range(1, 5))
def test_next_factor_adds_one_index(n):
    rng = random.Random(30 + n)
    for _ in range(20):
        a = [gaussian(rng) for _ in range(n + 1)]
        for k in range(1, n + 1):
            u0 = ExactComplex(-k) / a[k - 1]
            before = indicial_recursive(a[:n], u0)
            after = indicial_recursive(a, u0)
            added = ExactComplex(n + 1) - k * a[n] / a[k - 1]
            assert after == before * (j - added)
            found, rest = exact_roots(before)
            if not rest:
                assert set(exact_roots(after)[0]) == set(found) | {added}


def test_next_factor_index_set():
    # P_2(-1; j) = j^2 - 1 and a_3 = 1 adds 3 - 1 = 2
    found, rest = exact_roots(indicial_recursive([1, 1, 1], -1))
    assert not rest
    assert set(found) == {ExactComplex(-1), ExactComplex(1), ExactComplex(2)}


@pytest.mark.parametrize("order", range(1, 6))
def test_recursive_matches_direct(order):
    rng = random.Random(10 + order)
    for _ in range(100):
        a = [gaussian(rng) for _ in range(order)]
        chain = FactorChain(gaussian(rng, nonzero=False), tuple((ak, gaussian(rng, nonzero=False)) for ak in a))
        poly = expand_chain(chain)
        # the simple-pole balances are exactly u0 = -k / a_k
        for k, ak in enumerate(a, start=1):
            u0 = ExactComplex(-k) / ak
            assert indicial_direct(poly, LeadingBalance(-1, u0)) == indicial_recursive(a, u0)


def test_leading_balances_of_order_two():
    poly = expand_chain(FactorChain.of(0, (1, 0), (3, 0)))
    found = {(b.p, b.u0) for b in leading_balances(poly)}
    assert found == {(-1, ExactComplex(-1)), (-1, ExactComplex(Fraction(-2, 3)))}


def test_not_a_balance():
    poly = expand_chain(FactorChain.of(0, (1, 0)))
    with pytest.raises(NotABalanceError):
        indicial_direct(poly, LeadingBalance(-1, 5))


def test_indicial_data_integer_indices():
    poly = expand_chain(FactorChain.of(0, (1, 0), (1, 0)))
    data = indicial_data(poly, LeadingBalance(-1, -1))
    assert data.integer_indices == frozenset({-1, 1})


def test_genericity_resonant():
    verdict = genericity_test([1, 1], 10)
    assert verdict.verdict == "InS"
    assert verdict.witness == (1, 1)


def test_genericity_generic():
    verdict = genericity_test([1, 3], 50)
    assert verdict.verdict == "GenericW"
    assert verdict.witness is None
    assert verdict.jmax == 50


def test_genericity_on_axis():
    assert genericity_test([1, 0, 2], 10).witness == (2,)
    assert genericity_test([1, 0, 2], 10).verdict == "OnAxis"


def test_genericity_respects_jmax():
    # a = (1, -1/4) has j1 = 2 + 1/4 and j2 = 2 + 16 = 18
    assert genericity_test([1, Fraction(-1, 4)], 17).verdict == "GenericW"
    assert genericity_test([1, Fraction(-1, 4)], 18).witness == (2, 18)


@pytest.mark.parametrize(
    "chain",
    [
        FactorChain.of(0, (1, 0), (3, 0)),
        FactorChain.of(Fraction(1, 2), (1, 1), (3, Fraction(-1, 3))),
        FactorChain.of(0, (1, 0)),
    ],
)
def test_laurent_series_solves_the_equation(chain):
    poly = expand_chain(chain)
    for bal in leading_balances(poly):
        solution = laurent_expand(poly, bal, 8)
        assert not solution.obstructed
        assert residual_series(poly, solution) is None


def test_riccati_pole_series_is_exact():
    poly = expand_chain(FactorChain.of(0, (1, 0)))
    solution = laurent_expand(poly, LeadingBalance(-1, -1), 6)
    assert solution.coefficients == (ExactComplex(-1),) + (ExactComplex(0),) * 6
    assert solution.resonances == ()


@pytest.mark.parametrize("b2, obstructed", [(0, False), (1, True), (Fraction(-3, 2), True)])
def test_resonance_compatibility(b2, obstructed):
    # the j = 1 resonance of u0 = -1/2 is compatible iff 2 alpha a1 - 2 b1 + b2 = 0
    poly = expand_chain(FactorChain.of(0, (1, 0), (4, b2)))
    solution = laurent_expand(poly, LeadingBalance(-1, Fraction(-1, 2)), 8)
    assert solution.obstructed is obstructed
    if obstructed:
        assert solution.resonances == ((1, "Obstructed"),)
        with pytest.raises(ObstructedResonanceError):
            residual_series(poly, solution)
    else:
        assert solution.resonances[0] == (1, "Free")


def test_free_resonance_injection():
    poly = expand_chain(FactorChain.of(0, (1, 0), (4, 0)))
    bal = LeadingBalance(-1, Fraction(-1, 2))
    injected = laurent_expand(poly, bal, 6, {1: 3})
    assert injected.coefficients[1] == 3
    assert residual_series(poly, injected) is None
