# Growth curves T(r, f) on a radius grid, Hayman-type fits and iterated orders
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
import scipy.optimize
from loguru import logger

import config
from classify.expr import Expr

from .nevanlinna import GrowthError, characteristic

MIN_RADII = 6
MONOTONE_SLACK = 0.02
# log T must vary by more than this across the grid for a fit to mean anything
FLAT_SPREAD = 0.05


@dataclass(frozen=True)
class GrowthCurve:
    radii: tuple[float, ...]
    m_values: tuple[float, ...]
    n_values: tuple[float, ...]
    t_values: tuple[float, ...]
    level: int = 2
    fitted_order: tuple[float | None, float | None] = (None, None)
    # (b, c) of log T(r) ~ log a + b r^c at level 2, (1, c) of T ~ a r^c at level 1
    hayman_fit: tuple[float, float] | None = None
    hayman_scale: float | None = None
    consistent: bool | None = None
    flags: tuple[str, ...] = field(default=())

    @property
    def monotone(self) -> bool:
        t = self.t_values
        return all(t[k + 1] >= t[k] - MONOTONE_SLACK * max(1.0, t[k]) for k in range(len(t) - 1))


def radius_grid(rmin: float | None = None, rmax: float | None = None, steps: int | None = None) -> list[float]:
    rmin = config.RMIN if rmin is None else rmin
    rmax = config.RMAX if rmax is None else rmax
    steps = config.STEPS if steps is None else steps
    if not 0 < rmin < rmax:
        raise GrowthError(f"need 0 < rmin < rmax, got {rmin}, {rmax}")
    return [float(r) for r in np.geomspace(rmin, rmax, steps)]


def _level_two(r, log_a, b, c):
    return log_a + b * np.power(r, c)


def _fit(radii: np.ndarray, log_t: np.ndarray, level: int):
    """(model values, (b, c), a) for the requested level."""
    if level == 1:
        c, log_a = np.polyfit(np.log(radii), log_t, 1)
        return log_a + c * np.log(radii), (1.0, float(c)), math.exp(log_a)
    popt, _ = scipy.optimize.curve_fit(
        _level_two,
        radii,
        log_t,
        p0=(log_t[0] - 1.0, 1.0, 1.0),
        bounds=([-np.inf, 1e-9, 1e-3], [np.inf, np.inf, 10.0]),
        maxfev=10000,
    )
    log_a, b, c = popt
    return _level_two(radii, *popt), (float(b), float(c)), math.exp(log_a)


def hayman_check(e: Expr, level: int, radii: Sequence[float], quad_points: int | None = None) -> GrowthCurve:
    """Samples T(r, f) and fits the bound a exp_{level-1}(b r^c)."""
    radii = [float(r) for r in radii]
    if len(radii) < MIN_RADII:
        raise GrowthError(f"need at least {MIN_RADII} radii, got {len(radii)}")
    if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0:
        raise GrowthError("radii must be positive and increasing")
    if level < 1:
        raise GrowthError("level must be at least 1")
    m_values, n_values, t_values = [], [], []
    for r in radii:
        m, n, t = characteristic(e, r, quad_points)
        logger.debug(f"r={r:.4g}: m={m:.6g}, N={n:.6g}, T={t:.6g}")
        m_values.append(m)
        n_values.append(n)
        t_values.append(t)
    curve = GrowthCurve(tuple(radii), tuple(m_values), tuple(n_values), tuple(t_values), level)
    flags: list[str] = []
    if not curve.monotone:
        flags.append("non-monotone")
    fit_level = level
    if level >= 3:
        flags.append("fitted at level 2")
        fit_level = 2
    t = np.array(t_values)
    updates: dict = {}
    if np.any(t <= 0) or np.ptp(np.log(np.maximum(t, 1e-300))) < FLAT_SPREAD:
        flags.append("subexponential")
    else:
        log_t = np.log(t)
        try:
            model, params, scale = _fit(np.array(radii), log_t, fit_level)
        except (RuntimeError, ValueError) as exc:
            logger.warning(f"Hayman fit failed: {exc}")
            flags.append("fit-failed")
        else:
            excess = float(np.max(log_t - model))
            updates.update(
                hayman_fit=params,
                hayman_scale=scale,
                consistent=excess <= 0.1 * float(np.ptp(log_t)) + FLAT_SPREAD,
            )
    curve = replace(curve, flags=tuple(flags), **updates)
    try:
        curve = replace(curve, fitted_order=order_estimate(curve))
    except GrowthError as exc:
        logger.debug(f"No order estimate: {exc}")
    logger.info(f"Growth curve over {len(radii)} radii: fit {curve.hayman_fit}, flags {list(curve.flags)}")
    return curve


def order_estimate(curve: GrowthCurve) -> tuple[float, float | None]:
    """Slopes of log T and log log T against log r over the top half of the grid."""
    if len(curve.radii) < MIN_RADII:
        raise GrowthError(f"need at least {MIN_RADII} samples")
    top = len(curve.radii) // 2
    radii = np.array(curve.radii[top:])
    t = np.array(curve.t_values[top:])
    if np.any(t <= 0):
        raise GrowthError("T(r) must be positive on the top half of the grid")
    log_r = np.log(radii)
    rho1 = float(np.polyfit(log_r, np.log(t), 1)[0])
    rho2 = None
    if np.all(t > 1):
        rho2 = float(np.polyfit(log_r, np.log(np.log(t)), 1)[0])
    return rho1, rho2


def doubling_ratio(e: Expr, r: float, quad_points: int | None = None) -> float:
    """T(2r) / T(r)."""
    base = characteristic(e, r, quad_points)[2]
    if base <= 0:
        raise GrowthError(f"T({r}) vanishes; ratio undefined")
    return characteristic(e, 2 * r, quad_points)[2] / base
