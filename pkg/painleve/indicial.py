# Indicial polynomials P(u0; j), residue polynomials R_n(u0) and Fuchs indices
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from algebra import DiffPolynomial, ExactComplex, UniPoly, exact_roots, rational_integer_roots
from algebra.numbers import ONE, Scalar
from utils.errors import DomainError

from .balances import (
    LeadingBalance,
    NotABalanceError,
    dominant_terms,
    falling,
    leading_polynomial,
    require_exact,
)


class DegenerateChainError(DomainError):
    """Custom exception for chains with a vanishing a_i where all must be nonzero."""

    pass


@dataclass(frozen=True)
class IndicialData:
    balance: LeadingBalance
    indicial: UniPoly
    fuchs_indices: tuple[Scalar, ...]
    integer_indices: frozenset[int]


def _exact_list(a: Sequence) -> list[ExactComplex]:
    values = [ExactComplex.of(x) if not isinstance(x, ExactComplex) else x for x in a]
    return values


def residue_poly(a: Sequence) -> UniPoly:
    """R_n(u0) = u0 * prod_k -(k + a_k u0), the residue polynomial of D_n."""
    a = _exact_list(a)
    if any(not x for x in a):
        raise DegenerateChainError("degenerate chain: every a_i must be nonzero")
    u0 = UniPoly.x("u0")
    result = u0
    for k, ak in enumerate(a, start=1):
        result = result * (-(u0 * ak + k))
    return result


def _residue_value(a: Sequence[ExactComplex], u0: ExactComplex) -> ExactComplex:
    value = u0
    for k, ak in enumerate(a, start=1):
        value = value * (-(ak * u0 + k))
    return value


def indicial_direct(poly: DiffPolynomial, bal: LeadingBalance) -> UniPoly:
    """Coefficient of z^(j+q) in the Gateaux derivative of the dominant terms at u0 z^p."""
    require_exact(poly)
    dominant = dominant_terms(poly, bal.p)
    if leading_polynomial(dominant, bal.p)(bal.u0):
        raise NotABalanceError(f"(p={bal.p}, u0={bal.u0}) does not balance the dominant terms")
    j = UniPoly.x("j")
    leading = [bal.u0 * falling(bal.p, k) for k in range(dominant.order + 1)]
    total = UniPoly((), "j")
    for idx, coeff in dominant.terms.items():
        for k, power in enumerate(idx):
            if not power:
                continue
            scale = coeff * power
            for m, i_m in enumerate(idx):
                exponent = i_m - 1 if m == k else i_m
                if exponent:
                    scale = scale * leading[m] ** exponent
            total = total + falling(j + bal.p, k) * scale
    return total


def indicial_recursive(a: Sequence, u0) -> UniPoly:
    """P_n(u0; j) from P_{n+1} = P_n (j - n - 1 - a_{n+1} u0) - a_{n+1} R_n(u0)."""
    a = _exact_list(a)
    if any(not x for x in a):
        raise DegenerateChainError("degenerate chain: every a_i must be nonzero")
    u0 = ExactComplex.of(u0)
    j = UniPoly.x("j")
    indicial = UniPoly.constant(ONE, "j")
    for n, a_next in enumerate(a):
        residue = _residue_value(a[:n], u0)
        indicial = indicial * (j - (a_next * u0 + (n + 1))) - a_next * residue
    return indicial


def indicial_data(poly: DiffPolynomial, bal: LeadingBalance) -> IndicialData:
    indicial = indicial_direct(poly, bal)
    if indicial.degree < 1:
        return IndicialData(bal, indicial, (), frozenset())
    exact, approximate = exact_roots(indicial)
    ordered = sorted(exact, key=lambda r: (r.re, r.im))
    return IndicialData(
        bal,
        indicial,
        tuple(ordered) + tuple(approximate),
        frozenset(rational_integer_roots(indicial)),
    )


def fuchs_pair(a1, a2) -> tuple[ExactComplex, ExactComplex]:
    """The non-trivial Fuchs indices j1 = 2 - a2/a1 and j2 = 2 - 4 a1/a2 of the order-2 chain."""
    a1, a2 = ExactComplex.of(a1), ExactComplex.of(a2)
    if not a1 or not a2:
        raise DegenerateChainError("degenerate chain: a1 and a2 must be nonzero")
    two = ExactComplex.of(2)
    return two - a2 / a1, two - a1 * 4 / a2

