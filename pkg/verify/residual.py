# Numeric residual of an expression against an expanded chain, and exact series substitution
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from loguru import logger

import config
from algebra import DiffPolynomial, LaurentSeries
from classify.expr import Expr
from operators import FactorChain, expand_chain
from painleve import LaurentSolution, ObstructedResonanceError, laurent_series
from painleve.laurent import series_jet
from specfun import SpecialFunctionError
from utils.errors import DomainError, PoleNear

from .differentiate import derivatives
from .evaluate import evaluate

ANNULUS = (0.3, 3.0)


class InconclusiveError(DomainError):
    """Raised when too many sample points sit near poles to decide."""

    pass


@dataclass(frozen=True)
class ResidualReport:
    sample_points: tuple[complex, ...]
    max_relative_residual: float
    pole_skips: int
    verdict: Literal["Pass", "Fail"]

    @property
    def passed(self) -> bool:
        return self.verdict == "Pass"


def relative_residual(poly: DiffPolynomial, jet) -> float:
    """|P(jet)| / max(1, largest |term|)."""
    terms = [complex(v) for v in poly.term_values(jet)]
    if not terms:
        return 0.0
    scale = max(1.0, max(abs(t) for t in terms))
    return abs(sum(terms)) / scale


def _sample(rng: np.random.Generator, center: complex) -> complex:
    radius = rng.uniform(*ANNULUS)
    angle = rng.uniform(0.0, 2 * math.pi)
    return center + radius * cmath.exp(1j * angle)


def residual(
    chain: FactorChain,
    e: Expr,
    n: int | None = None,
    seed: int | None = None,
    tol: float | None = None,
    center: complex = 0,
) -> ResidualReport:
    """Samples the expanded chain on (e, e', ..., e^(order)) at n points of the annulus 0.3 <= |z - center| <= 3."""
    n = config.SAMPLES if n is None else n
    seed = config.SEED if seed is None else seed
    tol = config.TOL if tol is None else tol
    if n < 1:
        raise DomainError("sample count must be positive")
    poly = expand_chain(chain)
    jet_exprs = derivatives(e, poly.order)
    rng = np.random.default_rng(seed)
    points: list[complex] = []
    worst = 0.0
    skips = 0
    for _ in range(4 * n):
        if len(points) == n:
            break
        z = _sample(rng, complex(center))
        try:
            jet = [evaluate(d, z) for d in jet_exprs]
            value = relative_residual(poly, jet)
        except (PoleNear, SpecialFunctionError, OverflowError, ZeroDivisionError) as exc:
            skips += 1
            logger.debug(f"Skipped sample {z}: {exc}")
            continue
        if not math.isfinite(value):
            skips += 1
            continue
        points.append(z)
        worst = max(worst, value)
    if 2 * len(points) < n:
        raise InconclusiveError(f"only {len(points)} of {n} sample points usable ({skips} skipped near poles)")
    verdict = "Pass" if worst <= tol else "Fail"
    logger.info(f"Residual over {len(points)} points: {worst:.3e} ({verdict}, {skips} pole skips)")
    return ResidualReport(tuple(points), worst, skips, verdict)


def residual_series(poly: DiffPolynomial, solution: LaurentSolution) -> int | None:
    """Lowest exponent at which the substituted truncated series fails to vanish; None if none within precision."""
    if solution.obstructed:
        raise ObstructedResonanceError(
            f"series stops at an obstructed resonance after depth {solution.depth}; nothing to substitute"
        )
    series = laurent_series(solution.balance, solution.coefficients)
    value = poly.evaluate(series_jet(series, poly.order))
    if not isinstance(value, LaurentSeries):
        return None if not value else 0
    logger.debug(f"Residual series known below z^{value.precision}, valuation {value.valuation}")
    return value.valuation
