# Dominant terms and leading balances u ~ u0 * z^p
from __future__ import annotations

from dataclasses import dataclass

from loguru import logger

from algebra import DiffPolynomial, ExactComplex, UniPoly, exact_roots
from algebra.diffpoly import MultiIndex
from utils.errors import DomainError


class NotABalanceError(DomainError):
    """Custom exception for a (p, u0) pair that does not balance the dominant terms."""

    pass


@dataclass(frozen=True)
class LeadingBalance:
    p: int
    u0: ExactComplex

    def __post_init__(self):
        if self.p >= 0:
            raise ValueError("pole order exponent p must be negative")
        object.__setattr__(self, "u0", ExactComplex.of(self.u0))
        if not self.u0:
            raise ValueError("leading coefficient u0 must be nonzero")


def falling(x, k: int):
    """x (x-1) ... (x-k+1); works for ints, ExactComplex and UniPoly."""
    result = 1
    for m in range(k):
        result = (x - m) * result
    return result


def require_exact(poly: DiffPolynomial) -> None:
    for coeff in poly.terms.values():
        if not isinstance(coeff, ExactComplex):
            raise DomainError("Painleve analysis requires Gaussian-rational coefficients")


def term_exponent(index: MultiIndex, p: int) -> int:
    return sum(i * (p - k) for k, i in enumerate(index))


def dominant_exponent(poly: DiffPolynomial, p: int) -> int:
    """The minimal z-exponent q over all terms under u = u0 z^p."""
    if poly.is_zero():
        raise DomainError("dominant terms of the zero polynomial are undefined")
    return min(term_exponent(idx, p) for idx in poly.terms)


def dominant_terms(poly: DiffPolynomial, p: int) -> DiffPolynomial:
    q = dominant_exponent(poly, p)
    return DiffPolynomial(
        {idx: c for idx, c in poly.terms.items() if term_exponent(idx, p) == q}, poly.order
    )


def leading_polynomial(dominant: DiffPolynomial, p: int) -> UniPoly:
    """E0(u0; p): the dominant terms evaluated on u0 z^p with the power of z removed."""
    total = UniPoly((), "u0")
    for idx, coeff in dominant.terms.items():
        scale = coeff
        for k, i in enumerate(idx):
            if i:
                scale = scale * ExactComplex.of(falling(p, k)) ** i
        degree = sum(idx)
        total = total + UniPoly((ExactComplex(),) * degree + (scale,), "u0")
    return total


def leading_balances(poly: DiffPolynomial, p_bound: int | None = None) -> list[LeadingBalance]:
    """Balances with p in {-1, ..., -bound}; an empty list means no solution with a pole."""
    require_exact(poly)
    bound = p_bound if p_bound is not None else max(poly.effective_order, 1)
    found: list[LeadingBalance] = []
    for p in range(-1, -bound - 1, -1):
        dominant = dominant_terms(poly, p)
        if len(dominant) < 2:
            continue
        e0 = leading_polynomial(dominant, p)
        if e0.is_zero():
            logger.warning(f"Leading equation vanishes identically at p={p}; skipped")
            continue
        lowest = next(k for k, c in enumerate(e0.coefficients) if c)
        reduced = UniPoly(e0.coefficients[lowest:], "u0")
        if reduced.degree < 1:
            continue
        exact, irrational = exact_roots(reduced)
        if irrational:
            logger.warning(f"{len(irrational)} irrational leading coefficients at p={p} skipped")
        for u0 in sorted(set(exact), key=lambda r: (-r.re, -r.im)):
            found.append(LeadingBalance(p, u0))
    logger.debug(f"Found {len(found)} leading balances")
    return found
