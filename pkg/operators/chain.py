# Factor chains, their expansion into differential polynomials and a numeric oracle
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from loguru import logger

from algebra import DiffPolynomial, ExactComplex
from algebra.numbers import Scalar, to_complex
from utils.errors import InputError


class ChainError(InputError):
    """Custom exception for malformed factor chains."""

    pass


def _scalar(value) -> Scalar:
    if isinstance(value, (ExactComplex, complex, float)):
        return complex(value) if isinstance(value, float) else value
    return ExactComplex.of(value)


@dataclass(frozen=True)
class FactorChain:
    """alpha and the factors (a_k, b_k); factors[0] is applied first (rightmost)."""

    alpha: Scalar
    factors: tuple[tuple[Scalar, Scalar], ...]

    def __post_init__(self):
        factors = tuple((_scalar(a), _scalar(b)) for a, b in self.factors)
        if not factors:
            raise ChainError("factor chain needs at least one factor")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "alpha", _scalar(self.alpha))

    @classmethod
    def of(cls, alpha, *factors) -> FactorChain:
        return cls(alpha, tuple(factors))

    @property
    def order(self) -> int:
        return len(self.factors)

    @property
    def a(self) -> tuple[Scalar, ...]:
        return tuple(a for a, _ in self.factors)

    @property
    def b(self) -> tuple[Scalar, ...]:
        return tuple(b for _, b in self.factors)

    def is_exact(self) -> bool:
        values = (self.alpha,) + self.a + self.b
        return all(isinstance(v, ExactComplex) for v in values)


@dataclass(frozen=True)
class Jet:
    """Values (u, u', ..., u^(m))."""

    values: tuple[complex, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("a jet needs at least one value")
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> complex:
        return self.values[k]


def expand_chain(chain: FactorChain) -> DiffPolynomial:
    """Left side of the factorized ODE as a differential polynomial."""
    u = DiffPolynomial.variable(0)
    current = u - chain.alpha
    for a, b in chain.factors:
        current = current.derivative() - (u * a + b) * current
    logger.debug(f"Expanded chain of order {chain.order} into {len(current)} terms")
    return current.with_order(chain.order)


def expand_Dn(a: Sequence) -> DiffPolynomial:
    """[D - a_n u]...[D - a_1 u] u."""
    u = DiffPolynomial.variable(0)
    current = u
    for coeff in a:
        current = current.derivative() - u * _scalar(coeff) * current
    return current.with_order(len(a))


@dataclass(frozen=True)
class SmoothTerm:
    """coefficient * (z - pole)^power * exp(rate * z)."""

    coefficient: complex = 1
    pole: complex = 0
    power: int = 0
    rate: complex = 0

    def taylor(self, z: complex, length: int) -> np.ndarray:
        d = complex(z) - complex(self.pole)
        if self.power < 0 and d == 0:
            raise ValueError(f"smooth function singular at {z}")
        binom = np.ones(length, dtype=complex)
        for k in range(1, length):
            binom[k] = binom[k - 1] * (self.power - k + 1) / k
        powers = np.array(
            [d ** (self.power - k) if binom[k] != 0 else 0 for k in range(length)],
            dtype=complex,
        )
        algebraic = binom * powers
        rate = complex(self.rate)
        exponential = np.array(
            [rate**k / math.factorial(k) for k in range(length)], dtype=complex
        ) * np.exp(rate * z)
        return complex(self.coefficient) * np.convolve(algebraic, exponential)[:length]


@dataclass(frozen=True)
class SmoothFunction:
    """Sum of SmoothTerms; derivatives of every order are available in closed form."""

    terms: tuple[SmoothTerm, ...] = field(default_factory=tuple)

    @classmethod
    def polynomial(cls, coefficients: Sequence[complex]) -> SmoothFunction:
        return cls(tuple(SmoothTerm(c, 0, k, 0) for k, c in enumerate(coefficients)))

    @classmethod
    def exponential(cls, rate: complex, coefficient: complex = 1) -> SmoothFunction:
        return cls((SmoothTerm(coefficient, 0, 0, rate),))

    @classmethod
    def pole(cls, location: complex, power: int = -1, coefficient: complex = 1) -> SmoothFunction:
        return cls((SmoothTerm(coefficient, location, power, 0),))

    def taylor(self, z: complex, length: int) -> np.ndarray:
        """Taylor coefficients f^(k)(z)/k! for k < length."""
        total = np.zeros(length, dtype=complex)
        for term in self.terms:
            total = total + term.taylor(z, length)
        return total

    def jet(self, z: complex, order: int) -> Jet:
        coeffs = self.taylor(z, order + 1)
        return Jet(tuple(coeffs[k] * math.factorial(k) for k in range(order + 1)))


def _taylor_derivative(series: np.ndarray) -> np.ndarray:
    return series[1:] * np.arange(1, len(series))


def apply_chain_numeric(chain: FactorChain, f: SmoothFunction, z: complex) -> complex:
    """Runs the chain on truncated Taylor series of f at z, independently of expand_chain."""
    length = chain.order + 1
    f_series = f.taylor(z, length)
    current = f_series.copy()
    current[0] -= to_complex(chain.alpha)
    for a, b in chain.factors:
        size = len(current) - 1
        multiplier = to_complex(a) * f_series[:size]
        multiplier[0] += to_complex(b)
        current = _taylor_derivative(current) - np.convolve(multiplier, current[:size])[:size]
    return complex(current[0])
