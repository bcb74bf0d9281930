# Factors constant-coefficient linear ODEs into first-order chains
from __future__ import annotations

from dataclasses import dataclass

from loguru import logger

from algebra import ExactComplex, UniPoly, exact_roots
from algebra.numbers import ONE, ZERO
from utils.errors import DomainError, InputError

from .chain import FactorChain


class FactorizationError(DomainError):
    """Custom exception for linear ODEs the chain form cannot represent."""

    pass


@dataclass(frozen=True)
class LinearODE:
    """u^(n) + k_{n-1} u^(n-1) + ... + k_0 u + c_0 = 0.

    `coefficients` holds (c_0, k_0, ..., k_{n-1}): the constant forcing term first,
    then the coefficient of each derivative below the leading one.
    """

    coefficients: tuple[ExactComplex, ...]

    def __post_init__(self):
        coeffs = tuple(ExactComplex.of(c) for c in self.coefficients)
        if len(coeffs) < 2:
            raise InputError("a linear ODE needs the forcing term and at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def forcing(self) -> ExactComplex:
        return self.coefficients[0]

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coefficients)


def characteristic_poly(ode: LinearODE) -> UniPoly:
    """z^n + k_{n-1} z^(n-1) + ... + k_0; the forcing term does not enter."""
    return UniPoly(ode.coefficients[1:] + (ONE,), "z")


def _root_key(root) -> tuple:
    value = complex(root)
    return (round(value.real, 9), round(abs(value.imag), 9), -value.imag)


def factor_linear(ode: LinearODE) -> FactorChain:
    """Chain with a_k = 0, b_k the characteristic roots and alpha absorbing the forcing.

    With a zero root alpha is 0 and a nonzero forcing term is not represented by the chain.
    """
    char = characteristic_poly(ode)
    exact, approximate = exact_roots(char)
    roots: list = list(exact) + list(approximate)
    if approximate:
        logger.info(f"{len(approximate)} characteristic roots are irrational; using floating values")
    if ode.is_real():
        roots.sort(key=_root_key)
    product = ONE
    for r in roots:
        product = product * r
    n = ode.order
    if product == 0:
        # alpha * prod b_k vanishes for every alpha
        if ode.forcing:
            logger.warning(f"zero characteristic root: forcing {ode.forcing} dropped, alpha set to 0")
        alpha = ZERO
    else:
        alpha = ode.forcing * (-1) ** (n + 1) / product
    return FactorChain(alpha, tuple((ZERO, r) for r in roots))


def linear_from_chain(chain: FactorChain) -> list:
    """Inverse map for a_k = 0 chains: the (c_0, k_0, ..., k_{n-1}) coefficients."""
    if any(a != 0 for a in chain.a):
        raise FactorizationError("only chains with every a_k = 0 are linear")
    poly_coeffs = [ONE]
    for b in chain.b:
        shifted = [ZERO] + poly_coeffs
        for k, c in enumerate(poly_coeffs):
            shifted[k] = shifted[k] - b * c
        poly_coeffs = shifted
    product = ONE
    for b in chain.b:
        product = product * b
    forcing = (-1) ** (chain.order + 1) * chain.alpha * product
    return [forcing] + poly_coeffs[:-1]

