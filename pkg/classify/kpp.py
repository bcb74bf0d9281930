# Meromorphic solutions of u'' + c u' - (2/lambda^2)(u - q1)(u - q2)(u - q3) = 0
from __future__ import annotations

import cmath
import itertools
from functools import partial

import scipy.optimize
from loguru import logger

import config
from algebra import ExactComplex
from algebra.numbers import exact_sqrt, require_exact
from utils.errors import DomainError

from .expr import Param, Z, cot, exp, wp, wp_prime
from .families import Constraint, SolutionFamily

PROVENANCE = "KPP-type equation with cubic nonlinearity"


def kpp_compatibility(lam, c, q1, q2, q3) -> tuple[ExactComplex, ExactComplex]:
    """The two resonance conditions, for leading coefficients lambda and -lambda."""
    lam, c, q1, q2, q3 = (require_exact(v) for v in (lam, c, q1, q2, q3))
    plus = c * (c * lam + q1 + q2 - q3 * 2) * (c * lam + q1 - q2 * 2 + q3) * (c * lam - q1 * 2 + q2 + q3)
    minus = c * (c * lam + q1 * 2 - q2 - q3) * (c * lam - q1 + q2 * 2 - q3) * (c * lam - q1 - q2 + q3 * 2)
    return plus, minus


def _sqrt(value: ExactComplex):
    root = exact_sqrt(value)
    return root if root is not None else cmath.sqrt(complex(value))


def _two_cot_shifts(m: complex, ratio: complex, starts: int | None = None) -> list[complex]:
    """Solutions a of m cot(m a) = ratio, one per class modulo pi/m."""
    starts = config.NEWTON_STARTS if starts is None else starts
    seed = cmath.atan(m / ratio) / m if ratio != 0 else cmath.pi / (2 * m)
    period = cmath.pi / m

    def f(a):
        return m / cmath.tan(m * a) - ratio

    def fprime(a):
        return -(m * m) / cmath.sin(m * a) ** 2

    found: list[complex] = []
    for k in range(starts):
        guess = seed + (0.05 * k + 0.03j * k) * period
        try:
            root = complex(scipy.optimize.newton(f, guess, fprime=fprime, tol=1e-14, maxiter=100))
        except (RuntimeError, ZeroDivisionError, OverflowError):
            continue
        if not cmath.isfinite(root) or abs(f(root)) > 1e-10:
            continue
        # canonical representative modulo the period
        shift = root - round((root / period).real) * period
        if all(abs(shift - other) > 1e-8 * max(1.0, abs(period)) for other in found):
            found.append(shift)
    if not found:
        raise DomainError(f"no solution of m cot(m a) = {ratio} found for m = {m}")
    return found


def _solve_shift(m, ratio, values: dict) -> dict:
    return {"a": _two_cot_shifts(complex(m), complex(ratio))[0]}


def _c_zero_families(lam: ExactComplex, q: tuple[ExactComplex, ...]) -> list[SolutionFamily]:
    families: list[SolutionFamily] = []
    t = Z - Param("z0")
    indices = (0, 1, 2)

    seen_double = set()
    for i, j in itertools.combinations(indices, 2):
        if q[i] != q[j] or q[i] in seen_double:
            continue
        seen_double.add(q[i])
        k = next(x for x in indices if x not in (i, j))
        d = q[j] - q[k]
        for sign, label in ((1, "+"), (-1, "-")):
            expr = 3 * lam * lam / (t * (d * t + 3 * lam * sign)) + q[j]
            families.append(
                SolutionFamily(
                    f"II.c=0.double{label}",
                    expr,
                    ("z0",),
                    (Constraint(f"q_i = q_j = {q[j]}"),),
                    PROVENANCE + ", repeated root",
                )
            )

    for i, j in itertools.combinations(indices, 2):
        k = next(x for x in indices if x not in (i, j))
        if q[i] == q[j] or q[k] * 2 != q[i] + q[j]:
            continue
        m1 = ExactComplex(0, 1) * (q[i] - q[j]) / (lam * 2)
        for sign, label in ((1, "+"), (-1, "-")):
            expr = sign * lam * m1 * cot(m1 * t) + q[k]
            families.append(
                SolutionFamily(
                    f"II.c=0.midpoint{label}",
                    expr,
                    ("z0",),
                    (Constraint(f"q_k = (q_i + q_j)/2 = {q[k]}"), Constraint(f"m1 = {m1}")),
                    PROVENANCE + ", arithmetic progression of roots",
                )
            )

    seen_base = set()
    for i in indices:
        j, k = (x for x in indices if x != i)
        if q[i] in seen_base:
            continue
        m_squared = -(q[j] - q[i]) * (q[k] - q[i]) / (lam * lam * 2)
        ratio = (q[j] + q[k] - q[i] * 2) / (lam * 3)
        if not m_squared or not (ratio * ratio + m_squared):
            continue
        seen_base.add(q[i])
        m = _sqrt(m_squared)
        a = Param("a")
        expr = lam * m * (cot(m * t) - cot(m * (t - a))) + q[i]
        families.append(
            SolutionFamily(
                f"II.c=0.two-cot[{q[i]}]",
                expr,
                ("z0",),
                (
                    Constraint(f"h = q_i = {q[i]}, m2^2 = {m_squared}"),
                    Constraint(f"m2 cot(m2 a) = {ratio}", m * cot(m * a) - ratio),
                ),
                PROVENANCE + ", two cotangents",
                derived=("a",),
                solver=partial(_solve_shift, m, ratio),
            )
        )

    s1 = q[0] + q[1] + q[2]
    s2 = q[0] * q[1] + q[1] * q[2] + q[0] * q[2]
    s3 = q[0] * q[1] * q[2]
    h = Param("h")
    wp_a = (3 * h**2 - 2 * s1 * h + s2) / (6 * lam**2)
    wp_prime_a = (h - q[0]) * (h - q[1]) * (h - q[2]) / lam**3
    g2 = (-3 * h**4 + 4 * s1 * h**3 - 6 * s2 * h**2 + 12 * s3 * h + s2 * s2 - 4 * s1 * s3) / (3 * lam**4)
    g3 = 4 * wp_a**3 - g2 * wp_a - wp_prime_a**2
    families.append(
        SolutionFamily(
            "II.c=0.wp",
            lam * wp_prime_a / (wp(t, g2, g3) - wp_a) + h,
            ("z0", "h"),
            (
                Constraint("p(a) = (3h^2 - 2 s1 h + s2) / (6 lambda^2)"),
                Constraint("p'(a) = (h - q1)(h - q2)(h - q3) / lambda^3"),
                Constraint("g2 = (-3h^4 + 4 s1 h^3 - 6 s2 h^2 + 12 s3 h + s2^2 - 4 s1 s3) / (3 lambda^4)"),
                Constraint("g3 = 4 p(a)^3 - g2 p(a) - p'(a)^2"),
            ),
            PROVENANCE + ", general elliptic solution",
        )
    )
    return families


def _c_nonzero_families(mu: ExactComplex, label: str, c: ExactComplex, q: tuple[ExactComplex, ...]) -> list[SolutionFamily]:
    families: list[SolutionFamily] = []
    t = Z - Param("z0")
    seen = set()
    for i in range(3):
        j, k = (x for x in range(3) if x != i)
        if q[j] == q[k] or c * mu != q[i] * 2 - q[j] - q[k]:
            continue
        key = (mu, frozenset((q[j], q[k])))
        if key in seen:
            continue
        seen.add(key)
        ej = exp(q[j] * t / mu)
        ek = exp(q[k] * t / mu)
        families.append(
            SolutionFamily(
                f"II.c!=0.exp-ratio{label}[{q[i]}]",
                (q[j] * ej - q[k] * ek) / (ej - ek),
                ("z0",),
                (Constraint(f"c = (2 q_i - q_j - q_k) / ({mu}) != 0"),),
                PROVENANCE + ", exponential ratio",
            )
        )
    for i, j, k in itertools.permutations(range(3)):
        if c * mu != q[i] * 2 - q[j] - q[k] or q[k] * 2 != q[i] + q[j] or q[i] == q[k]:
            continue
        key = (mu, q[i], q[k], "u1")
        if key in seen:
            continue
        seen.add(key)
        delta = q[i] - q[k]
        s = exp(-delta * Z / mu)
        x = s - Param("zeta0")
        g2 = Param("g2")
        expr = -(delta / 2) * s * wp_prime(x, g2, 0) / wp(x, g2, 0) + q[k]
        families.append(
            SolutionFamily(
                f"II.c!=0.wp-exp{label}[{q[i]}]",
                expr,
                ("zeta0", "g2"),
                (
                    Constraint(f"c = (2 q_i - q_j - q_k) / ({mu}) != 0"),
                    Constraint(f"q_k = (q_i + q_j)/2 = {q[k]}"),
                    Constraint("g3 = 0"),
                ),
                PROVENANCE + ", Weierstrass function of an exponential",
            )
        )
    return families


def kpp_classify(lam, c, q1, q2, q3) -> list[SolutionFamily]:
    """Families of u'' + c u' = (2 / lambda^2)(u - q1)(u - q2)(u - q3).

    Only lambda^2 is fixed by the equation. For c != 0 each sign of lambda whose compatibility
    product vanishes contributes its own families, labelled + or -.
    """
    lam, c = require_exact(lam, "lambda"), require_exact(c, "c")
    q = tuple(require_exact(v, "q") for v in (q1, q2, q3))
    if not lam:
        raise DomainError("lambda must be nonzero")
    if not c:
        return _c_zero_families(lam, q)
    plus, minus = kpp_compatibility(lam, c, *q)
    if plus and minus:
        logger.debug(f"KPP c={c}, lambda={lam}, q={q}: both compatibility products nonzero")
        return []
    families: list[SolutionFamily] = []
    for mu, label, product in ((lam, "+", plus), (-lam, "-", minus)):
        if not product:
            families.extend(_c_nonzero_families(mu, label, c, q))
    return families
