# Meromorphic solutions of w'' + c w' - (6/lambda)(w - e1)(w - e2) = 0
from __future__ import annotations

from dataclasses import dataclass

from loguru import logger

from algebra import ExactComplex
from algebra.numbers import require_exact
from utils.errors import DomainError

from .expr import Expr, Param, Z, exp, wp, wp_prime
from .families import Constraint, SolutionFamily


@dataclass(frozen=True)
class FisherBranch:
    """One solution family w together with its derivative w'."""

    tag: str
    w: Expr
    w_prime: Expr
    free_params: tuple[str, ...]
    constraints: tuple[Constraint, ...]


def fisher_condition(c, lam, e1, e2) -> ExactComplex:
    """c (c^2 lambda + 25 e1 - 25 e2)(c^2 lambda - 25 e1 + 25 e2); zero iff nonconstant solutions exist."""
    c, lam, e1, e2 = (require_exact(v) for v in (c, lam, e1, e2))
    return c * (c * c * lam + e1 * 25 - e2 * 25) * (c * c * lam - e1 * 25 + e2 * 25)


def fisher_branches(c, lam, e1, e2) -> list[FisherBranch]:
    c, lam, e1, e2 = (require_exact(v, name) for v, name in ((c, "c"), (lam, "lambda"), (e1, "e1"), (e2, "e2")))
    if not lam:
        raise DomainError("lambda must be nonzero")
    if fisher_condition(c, lam, e1, e2):
        logger.debug(f"Fisher equation c={c}, lambda={lam}, e1={e1}, e2={e2} has no meromorphic solutions")
        return []
    branches = []
    if not c:
        g2 = (e1 - e2) ** 2 * 3 / (lam * lam)
        t = Z - Param("z0")
        g3 = Param("g3")
        branches.append(
            FisherBranch(
                "w1",
                lam * wp(t, g2, g3) + (e1 + e2) / 2,
                lam * wp_prime(t, g2, g3),
                ("z0", "g3"),
                (Constraint("c = 0"), Constraint(f"g2 = 3 (e1 - e2)^2 / lambda^2 = {g2}")),
            )
        )
        return branches
    e = {1: e1, 2: e2}
    for i, j in ((1, 2), (2, 1)):
        d = e[i] - e[j]
        if c * c * lam != d * 25:
            continue
        kappa = -c / 5
        s = exp(kappa * Z)
        x = s - Param("zeta0")
        p = wp(x, 0, Param("g3"))
        dp = wp_prime(x, 0, Param("g3"))
        w = d * s**2 * p + e[j]
        # d/dz [d s^2 p(s - zeta0)] with s' = kappa s
        w_prime = d * kappa * (2 * s**2 * p + s**3 * dp)
        branches.append(
            FisherBranch(
                f"w2({i},{j})",
                w,
                w_prime,
                ("zeta0", "g3"),
                (Constraint(f"c^2 lambda = 25 (e{i} - e{j}) != 0"), Constraint("g2 = 0")),
            )
        )
    return branches


def fisher_meromorphic(c, lam, e1, e2) -> list[SolutionFamily]:
    """Every nonconstant meromorphic solution family of the Fisher-type equation."""
    return [
        SolutionFamily(
            case_tag=f"fisher.{branch.tag}",
            expr=branch.w,
            free_params=branch.free_params,
            constraints=branch.constraints,
            provenance="Fisher-type equation, Weierstrass solutions",
        )
        for branch in fisher_branches(c, lam, e1, e2)
    ]
