from fractions import Fraction

import pytest

from algebra import ExactComplex
from classify import (
    ConstraintViolation,
    InstantiationError,
    a4_obstruction,
    classify,
    fisher_condition,
    fisher_meromorphic,
    find_family,
    free_params,
    instantiate,
    kpp_classify,
    particular_family,
    refactorizations,
    render,
    substitute,
)
from operators import FactorChain, expand_chain
from utils.errors import DomainError, InputError
from verify import evaluate

from .conftest import ode_residual

POINTS = (0.7 + 0.4j, -1.1 + 0.9j, 1.6 - 0.5j)


def _same_function(first, second, points=POINTS):
    for z in points:
        assert evaluate(first, z) == pytest.approx(evaluate(second, z), rel=1e-9)


@pytest.mark.parametrize(
    "chain, path, completeness",
    [
        ((0, 1, 0, 2, 0), "I.A0", "ParticularOnly"),
        ((0, 1, 1, 1, 2), "I.A1", "All"),
        ((0, 1, 0, -1, 0), "I.A2", "All"),
        ((0, 1, 0, -4, 0), "I.A3", "All"),
        ((0, 1, 0, 4, 0), "I.A4", "All"),
        ((0, 1, 0, 4, 1), "I.A4", "ParticularOnly"),
        ((0, 1, 0, Fraction(-4, 3), 0), "I.B1", "Unknown"),
        ((0, 1, 0, 3, 0), "I.B2", "All"),
        ((0, 2, 0, 5, 0), "I.C", "All"),
        ((0, 1, 0, -2, 0), "II.c=0", "All"),
        ((0, 1, -1, -2, 6), "II.c!=0", "All"),
        ((0, 0, 1, 1, 2), "III", "All"),
        ((0, 0, 1, 1, 1), "III", "ParticularOnly"),
        ((0, 1, 1, 0, 2), "IV", "All"),
        ((0, 0, 1, 0, 2), "V.linear", "All"),
        ((0, 0, 0, 1, 1), "V.a1=b1=0", "All"),
        ((1, 1, 0, 0, 0), "V.a2=b2=0", "All"),
    ],
)
def test_case_paths(chain, path, completeness):
    report = classify(*chain)
    assert report.case_path == path
    assert report.completeness == completeness
    assert report.families[0].case_tag == "particular-riccati"


def test_generic_example():
    report = classify(0, 1, 0, 3, 0)
    assert [f.case_tag for f in report.families] == ["particular-riccati", "I.B2.row4"]
    u = instantiate(report.family("I.B2.row4"), {"z0": 0})
    assert evaluate(u, 1) == pytest.approx(-2 / 3)
    assert evaluate(u, 2j) == pytest.approx(-2 / (3 * 2j))


def test_unknown_example_keeps_particular_family():
    report = classify(0, 1, 0, Fraction(-4, 3), 0)
    assert len(report.families) == 1
    assert report.notes


def test_particular_family_rational_branch():
    u = instantiate(particular_family(ExactComplex(0), ExactComplex(1), ExactComplex(0)), {"c": 0})
    assert evaluate(u, 2) == pytest.approx(-0.5)


def test_particular_family_exponential_branch():
    # k = alpha a1 + b1 = 2, u(0) = -(alpha + b1 c)/(a1 c - 1) = -3
    u = instantiate(particular_family(ExactComplex(1), ExactComplex(1), ExactComplex(1)), {"c": 2})
    assert evaluate(u, 0) == pytest.approx(-3)


def test_floats_rejected():
    with pytest.raises(DomainError):
        classify(0, 1.0, 0, 3, 0)


def test_instantiation_errors():
    family = classify(0, 1, 0, 3, 0).family("I.B2.row4")
    with pytest.raises(InstantiationError):
        instantiate(family, {})
    with pytest.raises(InstantiationError):
        instantiate(family, {"z0": 0, "w": 1})
    with pytest.raises(InputError):
        classify(0, 1, 0, 3, 0).family("I.B2.row9")


def test_nonzero_constraint():
    family = classify(0, 0, 1, 1, 2).family("III.tanh")
    with pytest.raises(ConstraintViolation):
        instantiate(family, {"c0": 0, "c1": 1})


def test_every_family_has_declared_slots():
    for chain in [(0, 1, 1, 1, 2), (0, 1, Fraction(1, 2), -1, 1), (0, 1, 1, 4, 2), (0, 1, -2, -2, 2), (0, 1, 1, 0, 2)]:
        for family in classify(*chain).families:
            assert free_params(family.expr) <= set(family.free_params) | set(family.derived)
            assert render(family.expr)


def test_a1_beta_absorption():
    family = classify(0, 1, 1, 1, 2).family("I.A1.i")
    first = instantiate(family, {"c1": 1, "c2": 2, "beta": 3})
    scaled = instantiate(family, {"c1": 2, "c2": 4, "beta": 6})
    _same_function(first, scaled)


def test_a4_beta_absorption():
    # beta enters only through 256 a1 beta / c0
    family = classify(0, 1, 1, 4, 2).family("I.A4.iii")
    first = instantiate(family, {"c0": 1, "c1": 2, "beta": 3})
    second = instantiate(family, {"c0": 2, "c1": 2, "beta": 6})
    _same_function(first, second)


def test_a4_obstruction_value():
    assert a4_obstruction(ExactComplex(0), ExactComplex(1), ExactComplex(0), ExactComplex(1)) == 1
    assert not a4_obstruction(ExactComplex(0), ExactComplex(1), ExactComplex(1), ExactComplex(2))


def test_a3_refactorizations_preserve_the_equation():
    alpha, a1, b1, b2 = (ExactComplex(v) for v in (0, 1, -2, 4))
    original = expand_chain(FactorChain.of(alpha, (a1, b1), (-4 * a1, b2)))
    alternatives = refactorizations(alpha, a1, b1, b2)
    assert len(alternatives) == 2
    for new_alpha, big_a1, big_b1, big_a2, big_b2 in alternatives:
        assert big_a2 == -big_a1
        assert expand_chain(FactorChain.of(new_alpha, (big_a1, big_b1), (big_a2, big_b2))) == original


def test_a3_families_come_from_the_second_factorization():
    report = classify(0, 1, -2, -4, 4)
    assert report.case_path == "I.A3"
    assert any(f.case_tag.startswith("I.A3.1.") for f in report.families)


def test_a2_exponential_branch_present():
    report = classify(0, 1, Fraction(1, 2), -1, 1)
    assert "I.A2.ii(2,1)" in [f.case_tag for f in report.families]


def test_fisher_stationary():
    families = fisher_meromorphic(0, 1, 0, 1)
    assert [f.case_tag for f in families] == ["fisher.w1"]
    assert any("= 3" in c.description for c in families[0].constraints)


def test_fisher_travelling():
    families = fisher_meromorphic(5, 1, 1, 0)
    assert [f.case_tag for f in families] == ["fisher.w2(1,2)"]


def test_fisher_no_solutions():
    assert fisher_condition(1, 1, 0, 1) != 0
    assert fisher_meromorphic(1, 1, 0, 1) == []
    with pytest.raises(DomainError):
        fisher_meromorphic(0, 0, 0, 1)


def _fisher_rhs(c, lam, e1, e2):
    def rhs(w, dw, ddw):
        return [ddw, c * dw, -(6 / lam) * w * w, (6 / lam) * (e1 + e2) * w, -(6 / lam) * e1 * e2]

    return rhs


@pytest.mark.parametrize(
    "c, lam, e1, e2, tag, assignment",
    [
        (0, 1, 0, 1, "fisher.w1", {"z0": 0.2, "g3": 0.5}),
        (5, 1, 1, 0, "fisher.w2(1,2)", {"zeta0": 0.3, "g3": 1}),
        (-5, 1, 0, 1, "fisher.w2(2,1)", {"zeta0": 0.3, "g3": 1}),
    ],
)
def test_fisher_solutions_satisfy_the_equation(c, lam, e1, e2, tag, assignment):
    w = instantiate(find_family(fisher_meromorphic(c, lam, e1, e2), tag), assignment)
    rhs = _fisher_rhs(c, lam, e1, e2)
    for z in POINTS:
        assert ode_residual(w, rhs, z) < 1e-8


def test_kpp_incompatible():
    assert kpp_classify(1, 1, 0, 1, 5) == []


def test_kpp_lambda_zero():
    with pytest.raises(DomainError):
        kpp_classify(0, 0, 0, 1, 2)


def _flipped(tag):
    head, rest = tag.split("[")
    return head[:-1] + {"+": "-", "-": "+"}[head[-1]] + "[" + rest


def test_kpp_sign_of_lambda_only_relabels():
    # c lambda = 2 q_3 - q_1 - q_2 holds for lambda = 1 only
    positive = [f.case_tag for f in kpp_classify(1, 5, 0, 1, 3)]
    negative = [f.case_tag for f in kpp_classify(-1, 5, 0, 1, 3)]
    assert positive
    assert all(tag.split("[")[0].endswith("+") for tag in positive)
    assert sorted(_flipped(tag) for tag in negative) == sorted(positive)


def _kpp_rhs(lam, c, q):
    def rhs(u, du, ddu):
        product = (u - q[0]) * (u - q[1]) * (u - q[2])
        return [ddu, c * du, -(2 / lam**2) * product]

    return rhs


@pytest.mark.parametrize(
    "lam, c, q, tag, assignment",
    [
        (1, 0, (0, 2, 1), "II.c=0.midpoint+", {"z0": 0.1}),
        (1, 0, (0, 2, 1), "II.c=0.two-cot[1]", {"z0": 0.1}),
        (1, 0, (0, 2, 1), "II.c=0.wp", {"z0": 0.1, "h": 0.5}),
        (1, 0, (0, 0, 1), "II.c=0.double+", {"z0": 0.1}),
        (1, 0, (0, 0, 0), "II.c=0.wp", {"z0": 0.1, "h": 0.8}),
        (1, 5, (0, 1, 3), "II.c!=0.exp-ratio+[3]", {"z0": 0.1}),
        (-1, 5, (0, 1, 3), "II.c!=0.exp-ratio-[3]", {"z0": 0.1}),
        (1, 3, (1, 0, 2), "II.c!=0.wp-exp+[2]", {"zeta0": 0.2, "g2": 1}),
    ],
)
def test_kpp_solutions_satisfy_the_equation(lam, c, q, tag, assignment):
    u = instantiate(find_family(kpp_classify(lam, c, *q), tag), assignment)
    rhs = _kpp_rhs(lam, c, q)
    for z in POINTS:
        assert ode_residual(u, rhs, z) < 1e-8


def test_two_cot_shift_is_solved():
    family = find_family(kpp_classify(1, 0, 0, 2, 1), "II.c=0.two-cot[1]")
    assert family.derived == ("a",)
    u = instantiate(family, {"z0": 0})
    assert "a" not in free_params(u)


def test_two_cot_wrong_shift_rejected():
    family = find_family(kpp_classify(1, 0, 0, 2, 1), "II.c=0.two-cot[1]")
    with pytest.raises(ConstraintViolation):
        instantiate(family, {"z0": 0, "a": 0.3})


def test_substitute_leaves_unbound_slots():
    family = classify(0, 1, 1, 1, 2).family("I.A1.i")
    partial = substitute(family.expr, {"c1": 1})
    assert free_params(partial) == {"c2", "beta"}
