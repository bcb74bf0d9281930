# Case analysis for the order-two chain [D - (a2 u + b2)][D - (a1 u + b1)](u - alpha) = 0
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from loguru import logger

from algebra import ExactComplex
from algebra.numbers import ZERO, require_exact
from operators import FactorChain

from .expr import (
    BesselJ,
    BesselJPrime,
    BesselY,
    BesselYPrime,
    Expr,
    Param,
    Z,
    cot,
    exp,
    sqrt,
    tanh,
    wrap,
)
from .families import Constraint, SolutionFamily, find_family
from .fisher import fisher_branches
from .kpp import kpp_classify

Completeness = Literal["All", "ParticularOnly", "Unknown"]


@dataclass(frozen=True)
class ClassificationReport:
    alpha: ExactComplex
    a1: ExactComplex
    b1: ExactComplex
    a2: ExactComplex
    b2: ExactComplex
    case_path: str
    families: tuple[SolutionFamily, ...]
    completeness: Completeness
    notes: tuple[str, ...] = field(default=())

    @property
    def chain(self) -> FactorChain:
        return FactorChain.of(self.alpha, (self.a1, self.b1), (self.a2, self.b2))

    def family(self, case_tag: str) -> SolutionFamily:
        return find_family(self.families, case_tag)


def _t() -> Expr:
    return Z - Param("z0")


def _holds(text: str) -> Constraint:
    return Constraint(text)


def particular_family(alpha, a1, b1) -> SolutionFamily:
    """Solutions of the inner Riccati factor (D - a1 u - b1)(u - alpha) = 0."""
    k = alpha * a1 + b1
    c = Param("c")
    if k:
        e = exp(k * Z)
        expr = -(alpha + b1 * c * e) / (a1 * c * e - 1)
        note = f"alpha a1 + b1 = {k} != 0"
    else:
        expr = alpha - 1 / (a1 * Z - c)
        note = "alpha a1 + b1 = 0"
    return SolutionFamily(
        "particular-riccati",
        expr,
        ("c",),
        (_holds(note),),
        "first-order factor annihilates u - alpha",
    )


def _riccati_log_derivative(alpha, a1, phi: Expr, phi_prime: Expr) -> Expr:
    """u = alpha - phi'/(a1 phi)."""
    return alpha - phi_prime / (a1 * phi)


def _a1_families(alpha, a1, b1, b2) -> list[SolutionFamily]:
    # a2 = a1: u = alpha - phi'/(a1 phi) with phi'' - k phi' proportional to exp(m z)
    k = alpha * a1 + b1
    m = alpha * a1 + b2
    c1, c2, beta = Param("c1"), Param("c2"), Param("beta")
    if k and m and b1 != b2:
        row, condition = "i", "(b1 + alpha a1)(b1 - b2)(alpha a1 + b2) != 0"
        phi = c1 * exp(k * Z) + c2 + beta * exp(m * Z)
        phi_prime = c1 * k * exp(k * Z) + beta * m * exp(m * Z)
    elif not k and m and b1 != b2:
        row, condition = "ii", "b1 + alpha a1 = 0, (b1 - b2)(alpha a1 + b2) != 0"
        phi = c1 * Z + c2 + beta * exp(m * Z)
        phi_prime = c1 + beta * m * exp(m * Z)
    elif b1 == b2 and m:
        row, condition = "iii", "b1 = b2, alpha a1 + b2 != 0"
        phi = c1 + (c2 + beta * Z) * exp(k * Z)
        phi_prime = (beta + k * (c2 + beta * Z)) * exp(k * Z)
    elif not m and b1 != b2:
        row, condition = "iv", "b1 != b2, alpha a1 + b2 = 0"
        phi = c1 * exp(k * Z) + c2 + beta * Z
        phi_prime = c1 * k * exp(k * Z) + beta
    else:
        row, condition = "v", "b1 = b2 = -alpha a1"
        phi = c1 + c2 * Z + beta * Z**2
        phi_prime = c2 + 2 * beta * Z
    return [
        SolutionFamily(
            f"I.A1.{row}",
            _riccati_log_derivative(alpha, a1, phi, phi_prime),
            ("c1", "c2", "beta"),
            (_holds("a2 = a1"), _holds(condition)),
            "Subcase A1: linearised by u = alpha - phi'/(a1 phi)",
        )
    ]


def _a2_families(alpha, a1, b1, b2, prefix: str = "I.A2") -> list[SolutionFamily]:
    # a2 = -a1: h'' + c h' + a1 beta h^2 + (b1 + b2)(b2 - alpha a1) h = 0, beta = -6/a1 gives lambda = 1
    c = alpha * a1 - b1 - b2 * 2
    e2 = -(b1 + b2) * (alpha * a1 - b2) / 6
    families = []
    for branch in fisher_branches(c, 1, 0, e2):
        label = "i" if branch.tag == "w1" else "ii" + branch.tag[2:]
        families.append(
            SolutionFamily(
                f"{prefix}.{label}",
                b2 / a1 - branch.w_prime / (a1 * branch.w),
                branch.free_params,
                (_holds("a2 = -a1"), _holds(f"c = alpha a1 - b1 - 2 b2 = {c}"), _holds(f"e1 = 0, e2 = {e2}"))
                + branch.constraints,
                "Subcase A2: u = b2/a1 - h'/(a1 h) with h solving a Fisher-type equation",
            )
        )
    return families


def refactorizations(alpha, a1, b1, b2) -> list[tuple[ExactComplex, ExactComplex, ExactComplex, ExactComplex, ExactComplex]]:
    """Alternative chains (alpha', A1, B1, -A1, B2) with the same expansion as the a2 = -4 a1 chain."""
    roots = (alpha, -b1 / a1, b2 / (a1 * 4))
    target = roots[0] * 3 + roots[1] * 3 - roots[2] * 2
    chains = []
    for idx, y in enumerate(roots):
        if y * 4 != target:
            continue
        others = [roots[p] for p in range(3) if p != idx]
        for new_alpha, x in ((others[0], others[1]), (others[1], others[0])):
            candidate = (new_alpha, -a1 * 2, a1 * x * 2, a1 * 2, -a1 * y * 2)
            if candidate not in chains:
                chains.append(candidate)
    return chains


def _a3_families(alpha, a1, b1, b2) -> list[SolutionFamily]:
    families = []
    for n, (new_alpha, big_a1, big_b1, _, big_b2) in enumerate(refactorizations(alpha, a1, b1, b2), start=1):
        for family in _a2_families(new_alpha, big_a1, big_b1, big_b2, prefix=f"I.A3.{n}"):
            families.append(
                SolutionFamily(
                    family.case_tag,
                    family.expr,
                    family.free_params,
                    (_holds("a2 = -4 a1"), _holds(f"re-factored as alpha={new_alpha}, a1={big_a1}, b1={big_b1}, b2={big_b2}"))
                    + family.constraints[1:],
                    "Subcase A3: second factorization reduces to Subcase A2",
                )
            )
    return families


def a4_obstruction(alpha, a1, b1, b2) -> ExactComplex:
    """2 alpha a1 - 2 b1 + b2; nonzero means the resonance at j = 1 is obstructed."""
    return alpha * a1 * 2 - b1 * 2 + b2


def _a4_families(alpha, a1, b1, b2) -> list[SolutionFamily]:
    # a2 = 4 a1: u = alpha - phi'/(2 a1 phi) with phi quadratic in exp(k z) (in z when k = 0)
    k = alpha * a1 + b1
    base = (_holds("a2 = 4 a1"), _holds("2 alpha a1 - 2 b1 + b2 = 0"))
    source = "Subcase A4: u = alpha - phi'/(2 a1 phi) with phi quadratic in exp(k z)"
    c0, c1, beta = Param("c0"), Param("c1"), Param("beta")
    if not k:
        expr = alpha - 1 / (2 * a1 * (Z - c0)) - 1 / (2 * a1 * (Z - c1))
        return [SolutionFamily("I.A4.i", expr, ("c0", "c1"), base + (_holds("alpha a1 + b1 = 0"),), source)]
    e = exp(k * Z)
    second = alpha - k * e / (2 * a1 * (e + c1))
    third = alpha - c0 * k**3 * e * (e - c1) / (a1 * (256 * a1 * beta + c0 * k**2 * (e - c1) ** 2))
    return [
        SolutionFamily("I.A4.ii", second, ("c1",), base + (_holds("c0 = 0, alpha a1 + b1 != 0"),), source),
        SolutionFamily(
            "I.A4.iii",
            third,
            ("c0", "c1", "beta"),
            base + (_holds("alpha a1 + b1 != 0"), Constraint("c0 != 0", c0, "nonzero")),
            source,
        ),
    ]


def _table_one_families(prefix, alpha, a1, b1, a2, b2) -> list[SolutionFamily]:
    k = alpha * a1 + b1
    t = _t()
    source = "class W solutions of the generic two-factor chain"
    families = []
    if k and b2 == alpha * a1 * 2 - alpha * a2 + b1 * 2:
        expr = (-alpha * a1 * 2 + alpha * a2 - b1 * 2) / a2 - 2 * k / (a2 * (exp(k * t) - 1))
        families.append(
            SolutionFamily(f"{prefix}.row1", expr, ("z0",), (_holds("b2 = 2 alpha a1 - alpha a2 + 2 b1, alpha a1 + b1 != 0"),), source)
        )
    if k and b2 == (-alpha * a1 * a1 * 2 - a1 * b1 * 2 + a2 * b1) / a1:
        expr = -2 * k / (a2 * (exp(k * t) - 1)) - b1 / a1
        families.append(
            SolutionFamily(
                f"{prefix}.row2",
                expr,
                ("z0",),
                (_holds("b2 = (-2 alpha a1^2 - 2 a1 b1 + a2 b1)/a1, alpha a1 + b1 != 0"),),
                source,
            )
        )
    if k and b2 == (a2 * b1 - alpha * a1 * a2) / (a1 * 2):
        e = exp(a2 * k * t / (a1 * 2))
        expr = -(alpha * a1 + b1 * e) / (a1 * e - a1)
        families.append(
            SolutionFamily(
                f"{prefix}.row3",
                expr,
                ("z0",),
                (_holds("b2 = (a2 b1 - alpha a1 a2)/(2 a1), alpha a1 + b1 != 0"),),
                source,
            )
        )
    if b1 == -alpha * a1 and b2 == -alpha * a2:
        expr = -2 / (a2 * t) - b2 / a2
        families.append(SolutionFamily(f"{prefix}.row4", expr, ("z0",), (_holds("b1 = -alpha a1, b2 = -alpha a2"),), source))
    return families


def _is_natural(value: ExactComplex) -> bool:
    """value in N union {0}."""
    return value.is_integer() and value.re >= 0


def _case_one(alpha, a1, b1, a2, b2, particular):
    ratio = a2 / a1
    j1 = 2 - ratio
    j2 = 2 - a1 * 4 / a2
    if ratio == 2:
        return "I.A0", [particular], "ParticularOnly", ("no Laurent series for h exists; only the Riccati family",)
    if ratio == 1:
        return "I.A1", [particular] + _a1_families(alpha, a1, b1, b2), "All", ()
    if ratio == -1:
        extra = _a2_families(alpha, a1, b1, b2)
        return "I.A2", [particular] + extra, "All" if extra else "ParticularOnly", ()
    if ratio == -4:
        extra = _a3_families(alpha, a1, b1, b2)
        notes = () if extra else ("no second factorization exists; the resonance conditions fail",)
        return "I.A3", [particular] + extra, "All" if extra else "ParticularOnly", notes
    if ratio == 4:
        obstruction = a4_obstruction(alpha, a1, b1, b2)
        if obstruction:
            return (
                "I.A4",
                [particular],
                "ParticularOnly",
                (f"resonance at j = 1 obstructed: 2 alpha a1 - 2 b1 + b2 = {obstruction}",),
            )
        return "I.A4", [particular] + _a4_families(alpha, a1, b1, b2), "All", ()
    if _is_natural(j2) and not j1.is_integer():
        return "I.B1", [particular], "Unknown", (f"j2 = {j2} is a nonnegative integer and j1 = {j1} is not an integer",)
    path = "I.B2" if (j1.is_integer() or j2.is_integer()) else "I.C"
    extra = _table_one_families(path, alpha, a1, b1, a2, b2)
    return path, [particular] + extra, "All" if extra else "ParticularOnly", ()


def _case_two(alpha, a1, b1, a2, b2, particular):
    # lambda^2 = 1/a1^2; kpp_classify picks the sign
    lam = 1 / a1
    c = alpha * a1 - b1 - b2
    q = (alpha, -b1 / a1, b2 / (a1 * 2))
    extra = kpp_classify(lam, c, *q)
    path = "II.c=0" if not c else "II.c!=0"
    return path, [particular] + extra, "All" if extra else "ParticularOnly", ()


def _case_three(alpha, a1, b1, a2, b2, particular):
    compatibility = alpha * a2 - b1 * 2 + b2
    if compatibility:
        return "III", [particular], "ParticularOnly", (f"alpha a2 - 2 b1 + b2 = {compatibility} != 0",)
    e = exp(b1 * Z)
    c0, c1 = Param("c0"), Param("c1")
    base = (_holds("a1 = 0, a2 b1 != 0"), _holds("b2 = -alpha a2 + 2 b1"))
    source = "Case III: the inner factor is linear in u"
    rational = alpha - 2 * b1 * e / (a2 * (e - c1))
    root_two = sqrt(2)
    hyperbolic = alpha - root_two * b1 * c0 * e * tanh((root_two * c0 * e + c1) / 2) / a2
    families = [
        particular,
        SolutionFamily("III.c0=0", rational, ("c1",), base + (_holds("c0 = 0"),), source),
        SolutionFamily("III.tanh", hyperbolic, ("c0", "c1"), base + (Constraint("c0 != 0", c0, "nonzero"),), source),
    ]
    return "III", families, "All", ()


def _case_four(alpha, a1, b1, a2, b2, particular):
    k = alpha * a1 + b1
    nu = k / b2
    beta, c1, c2 = Param("beta"), Param("c1"), Param("c2")
    root = sqrt(a1 * beta)
    growth = exp(b2 / 2 * Z)
    zeta = 2 * root / b2 * growth
    shift = (alpha * a1 - b1) / (a1 * 2)
    base = (
        _holds("a1 != 0, a2 = 0, b2 != 0"),
        _holds(f"nu = (alpha a1 + b1)/b2 = {nu}"),
        _holds("zeta = 2 sqrt(a1 beta)/b2 exp(b2 z/2)"),
        Constraint("beta != 0", beta, "nonzero"),
    )
    source = "Case IV: Riccati equation transformed to the Bessel equation"
    numerator = c1 * BesselJPrime(wrap(nu), zeta) + c2 * BesselYPrime(wrap(nu), zeta)
    denominator = c1 * BesselJ(wrap(nu), zeta) + c2 * BesselY(wrap(nu), zeta)
    bessel = shift - root / a1 * growth * numerator / denominator
    families = [particular, SolutionFamily("IV.bessel", bessel, ("beta", "c1", "c2"), base, source)]
    if nu * nu == ExactComplex(Fraction(1, 4)):
        ratio = (c1 * cot(zeta) + c2) / (c2 * cot(zeta) - c1)
        elementary = shift + b2 / (a1 * 4) * (1 + 2 * zeta * ratio)
        families.append(
            SolutionFamily(
                "IV.bessel-half",
                elementary,
                ("beta", "c1", "c2"),
                base + (_holds("nu = +-1/2: Bessel functions reduce to sin and cos"),),
                source,
            )
        )
    return "IV", families, "All", ()


def _case_five(alpha, a1, b1, a2, b2, particular):
    c1, c2 = Param("c1"), Param("c2")
    if not a1 and not a2:
        if b1 != b2:
            expr = c1 * exp(b1 * Z) + c2 * exp(b2 * Z) + alpha
            tag, note = "V.linear", "b1 != b2"
        else:
            expr = (c1 + c2 * Z) * exp(b1 * Z) + alpha
            tag, note = "V.linear-double", "b1 = b2"
        family = SolutionFamily(tag, expr, ("c1", "c2"), (_holds("a1 = a2 = 0"), _holds(note)), "Case V: linear chain")
        return "V.linear", [particular, family], "All", ()
    angle = c2 - c1 * Z / 2
    if not a1:
        expr = (c1 * cot(angle) - b2) / a2
        family = SolutionFamily(
            "V.cot-outer", expr, ("c1", "c2"), (_holds("a1 = b1 = 0, a2 != 0"),), "Case V: u'' = (a2 u + b2) u'"
        )
        return "V.a1=b1=0", [particular, family], "All", ()
    expr = (c1 * cot(angle) + alpha * a1 - b1) / (a1 * 2)
    family = SolutionFamily(
        "V.cot-inner", expr, ("c1", "c2"), (_holds("a1 != 0, a2 = b2 = 0"),), "Case V: first integral of the inner factor"
    )
    return "V.a2=b2=0", [particular, family], "All", ()


def classify(alpha, a1, b1, a2, b2) -> ClassificationReport:
    """Case path, solution families and completeness for the order-two chain."""
    alpha, a1, b1, a2, b2 = (
        require_exact(v, name) for v, name in zip((alpha, a1, b1, a2, b2), ("alpha", "a1", "b1", "a2", "b2"))
    )
    particular = particular_family(alpha, a1, b1)
    if a1 and a2:
        handler = _case_two if a1 * 2 + a2 == ZERO else _case_one
    elif not a1 and a2 and b1:
        handler = _case_three
    elif a1 and not a2 and b2:
        handler = _case_four
    else:
        handler = _case_five
    path, families, completeness, notes = handler(alpha, a1, b1, a2, b2, particular)
    logger.info(f"Chain (alpha={alpha}, a1={a1}, b1={b1}, a2={a2}, b2={b2}) is case {path} with {len(families)} families")
    return ClassificationReport(alpha, a1, b1, a2, b2, path, tuple(families), completeness, tuple(notes))
