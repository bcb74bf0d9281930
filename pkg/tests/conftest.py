import random
from fractions import Fraction

import pytest

from algebra import ExactComplex
from verify import derivatives, evaluate


def rational(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 4))


def gaussian(rng: random.Random, nonzero: bool = True) -> ExactComplex:
    while True:
        value = ExactComplex(rational(rng), rational(rng, 2))
        if value or not nonzero:
            return value


def ode_residual(expr, rhs, z: complex, order: int = 2) -> float:
    """|F(u, u', u'')| / max(1, |term|) for a hand-written right-hand side F."""
    jet = [evaluate(d, z) for d in derivatives(expr, order)]
    terms = rhs(*jet)
    return abs(sum(terms)) / max(1.0, max(abs(t) for t in terms))


@pytest.fixture
def rng():
    return random.Random(0)
