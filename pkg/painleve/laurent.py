# Laurent-series recursion E_j = P(u0; j) u_j + Q_j around a movable pole
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping

from loguru import logger

from algebra import DiffPolynomial, ExactComplex, LaurentSeries
from algebra.numbers import ZERO
from utils.errors import DomainError

from .balances import LeadingBalance, dominant_exponent, require_exact
from .indicial import indicial_direct

ResonanceStatus = Literal["Free", "Obstructed"]


class ObstructedResonanceError(DomainError):
    """Custom exception for series whose compatibility condition fails."""

    pass


@dataclass(frozen=True)
class LaurentSolution:
    balance: LeadingBalance
    coefficients: tuple[ExactComplex, ...]
    resonances: tuple[tuple[int, ResonanceStatus], ...]
    depth: int
    q: int

    @property
    def obstructed(self) -> bool:
        return any(status == "Obstructed" for _, status in self.resonances)


def laurent_series(balance: LeadingBalance, coefficients, precision: int | None = None) -> LaurentSeries:
    """sum_r u_r z^(r+p), known below z^precision."""
    if precision is None:
        precision = balance.p + len(coefficients)
    return LaurentSeries.from_coefficients(balance.p, coefficients, precision)


def series_jet(series: LaurentSeries, order: int) -> list[LaurentSeries]:
    jet = [series]
    for _ in range(order):
        jet.append(jet[-1].derivative())
    return jet


def laurent_expand(
    poly: DiffPolynomial,
    bal: LeadingBalance,
    depth: int,
    injected: Mapping[int, ExactComplex] | None = None,
) -> LaurentSolution:
    """Solves u_j = -Q_j / P(u0; j) up to depth, stopping at the first obstructed resonance."""
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    require_exact(poly)
    injected = {j: ExactComplex.of(v) for j, v in (injected or {}).items()}
    indicial = indicial_direct(poly, bal)
    q = dominant_exponent(poly, bal.p)
    coefficients = [bal.u0]
    resonances: list[tuple[int, ResonanceStatus]] = []
    reached = 0
    for j in range(1, depth + 1):
        trial = laurent_series(bal, coefficients + [ZERO], bal.p + j + 1)
        residual = poly.evaluate(series_jet(trial, poly.order))
        q_j = residual.coefficient(q + j) if isinstance(residual, LaurentSeries) else ZERO
        p_j = indicial(ExactComplex.of(j))
        if p_j:
            coefficients.append(-q_j / p_j)
        elif not q_j:
            resonances.append((j, "Free"))
            coefficients.append(injected.get(j, ZERO))
            logger.debug(f"Free resonance at j={j}")
        else:
            resonances.append((j, "Obstructed"))
            logger.info(f"Resonance j={j} obstructed: Q_j = {q_j}")
            break
        reached = j
    return LaurentSolution(bal, tuple(coefficients), tuple(resonances), reached, q)
