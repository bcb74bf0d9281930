import cmath
import random
from fractions import Fraction

import pytest

from algebra import ExactComplex, UniPoly
from operators import (
    ChainError,
    FactorChain,
    FactorizationError,
    LinearODE,
    SmoothFunction,
    apply_chain_numeric,
    expand_chain,
    factor_linear,
    linear_from_chain,
)
from operators.chain import SmoothTerm

from .conftest import gaussian


def _sample_function() -> SmoothFunction:
    return SmoothFunction(
        SmoothFunction.polynomial([0.3, -1.2, 0.5, 0.25]).terms
        + SmoothFunction.exponential(0.7 - 0.2j, 0.8).terms
        + (SmoothTerm(0.4, 2.0 + 1.0j, -1, 0),)
    )


def test_empty_chain_rejected():
    with pytest.raises(ChainError):
        FactorChain.of(0)


def test_riccati_expansion():
    # [D - (u + 1)](u - 2) = u' - u^2 + u + 2
    poly = expand_chain(FactorChain.of(2, (1, 1)))
    assert poly.evaluate([3, 5]) == 5 - 9 + 3 + 2


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_expand_chain_matches_direct_application(order):
    rng = random.Random(100 + order)
    f = _sample_function()
    for _ in range(15):
        chain = FactorChain(gaussian(rng, nonzero=False), tuple((gaussian(rng), gaussian(rng, nonzero=False)) for _ in range(order)))
        poly = expand_chain(chain)
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        jet = f.jet(z, order)
        expected = apply_chain_numeric(chain, f, z)
        got = complex(poly.evaluate(jet))
        scale = max(1.0, max(abs(complex(t)) for t in poly.term_values(jet)))
        assert abs(got - expected) <= 1e-9 * scale


def test_jet_of_exponential():
    jet = SmoothFunction.exponential(2).jet(0.5, 3)
    assert list(jet.values) == pytest.approx([cmath.exp(1) * 2**k for k in range(4)])


def test_factor_linear_example():
    # u'' - 3u' + 2u - 4 = 0 has roots 1, 2 and alpha = 2
    ode = LinearODE((-4, 2, -3))
    chain = factor_linear(ode)
    assert sorted(b.re for b in chain.b) == [1, 2]
    assert all(a == 0 for a in chain.a)
    assert chain.alpha == 2
    assert linear_from_chain(chain) == list(ode.coefficients)


def test_factor_linear_round_trip():
    rng = random.Random(6)
    for _ in range(500):
        order = rng.randint(1, 6)
        roots = []
        while len(roots) < order:
            candidate = gaussian(rng)
            if candidate not in roots:
                roots.append(candidate)
        char = UniPoly.from_roots(roots)
        forcing = gaussian(rng, nonzero=False)
        ode = LinearODE((forcing,) + char.coefficients[:-1])
        chain = factor_linear(ode)
        assert sorted(chain.b, key=lambda r: (r.re, r.im)) == sorted(roots, key=lambda r: (r.re, r.im))
        assert linear_from_chain(chain) == list(ode.coefficients)


def test_irrational_roots_round_trip_numerically():
    ode = LinearODE((1, -2, 0))
    chain = factor_linear(ode)
    recovered = linear_from_chain(chain)
    for got, want in zip(recovered, ode.coefficients):
        assert complex(got) == pytest.approx(complex(want), abs=1e-10)


def test_zero_root_with_forcing():
    # u'' + u' + 1 = 0: roots 0 and -1, alpha is 0 and the forcing is not carried
    chain = factor_linear(LinearODE((1, 0, 1)))
    assert chain.alpha == 0
    assert sorted(b.re for b in chain.b) == [-1, 0]
    assert linear_from_chain(chain) == [0, 0, 1]


def test_zero_root_without_forcing():
    chain = factor_linear(LinearODE((0, 0, Fraction(-1))))
    assert chain.alpha == 0
    assert sorted(b.re for b in chain.b) == [0, 1]


def test_repeated_roots():
    # (z - 1/2)^2
    chain = factor_linear(LinearODE((0, Fraction(1, 4), -1)))
    assert list(chain.b) == [ExactComplex(Fraction(1, 2))] * 2


def test_linear_from_nonlinear_chain_rejected():
    with pytest.raises(FactorizationError):
        linear_from_chain(FactorChain.of(0, (1, 0)))
