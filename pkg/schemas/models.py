# JSON codecs for chains, ODEs, polynomials and every report the CLI emits
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from algebra import DiffPolynomial, ExactComplex, UniPoly
from algebra.numbers import Scalar
from classify import ClassificationReport, Constraint, SolutionFamily
from growth import GrowthCurve
from operators import FactorChain, LinearODE
from painleve import GenericityVerdict, IndicialData, LaurentSolution, LeadingBalance
from utils.errors import InputError
from verify import ResidualReport


def _rational(value, field: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{field}: booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{field}: {value!r} is not a rational numeral")
    if isinstance(value, float):
        raise InputError(f"{field}: exact input needs a rational string such as \"1/3\", got float {value!r}")
    raise InputError(f"{field}: expected a number, got {type(value).__name__}")


def parse_exact(value, field: str = "value") -> ExactComplex:
    """Integers, rational strings ("-3/4", "0.25") or {"re": ..., "im": ...}."""
    if isinstance(value, Mapping):
        unknown = set(value) - {"re", "im"}
        if unknown:
            raise InputError(f"{field}: unknown keys {sorted(unknown)}")
        return ExactComplex(_rational(value.get("re", 0), field), _rational(value.get("im", 0), field))
    return ExactComplex(_rational(value, field))


def parse_approx(value, field: str = "value") -> complex:
    """Like parse_exact, but floats are accepted."""
    if isinstance(value, bool):
        raise InputError(f"{field}: booleans are not numbers")
    if isinstance(value, float):
        return complex(value)
    if isinstance(value, Mapping) and any(isinstance(v, float) for v in value.values()):
        unknown = set(value) - {"re", "im"}
        if unknown:
            raise InputError(f"{field}: unknown keys {sorted(unknown)}")
        return complex(parse_approx(value.get("re", 0), field).real, parse_approx(value.get("im", 0), field).real)
    return complex(parse_exact(value, field))


def parse_scalar(value, field: str, exact: bool) -> Scalar:
    if exact:
        return parse_exact(value, field)
    try:
        return parse_exact(value, field)
    except InputError:
        return parse_approx(value, field)


def dump_scalar(value) -> Any:
    if isinstance(value, ExactComplex):
        if value.is_real():
            return str(value.re)
        return {"re": str(value.re), "im": str(value.im)}
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    value = complex(value)
    if value.imag == 0:
        return value.real
    return {"re": value.real, "im": value.imag}


def _require(obj: Mapping, key: str, where: str):
    if not isinstance(obj, Mapping):
        raise InputError(f"{where} must be a JSON object")
    if key not in obj:
        raise InputError(f"{where}: missing key {key!r}")
    return obj[key]


def parse_chain(obj: Mapping, exact: bool = True) -> FactorChain:
    """{"alpha": s, "factors": [{"a": s, "b": s}, ...]}; factors[0] is applied first."""
    alpha = parse_scalar(_require(obj, "alpha", "chain"), "alpha", exact)
    factors = _require(obj, "factors", "chain")
    if not isinstance(factors, list) or not factors:
        raise InputError("chain: factors must be a nonempty list")
    parsed = []
    for k, factor in enumerate(factors, start=1):
        a = parse_scalar(_require(factor, "a", f"factor {k}"), f"a{k}", exact)
        b = parse_scalar(_require(factor, "b", f"factor {k}"), f"b{k}", exact)
        parsed.append((a, b))
    return FactorChain(alpha, tuple(parsed))


def dump_chain(chain: FactorChain) -> dict:
    return {
        "alpha": dump_scalar(chain.alpha),
        "factors": [{"a": dump_scalar(a), "b": dump_scalar(b)} for a, b in chain.factors],
    }


def parse_linear_ode(obj: Mapping) -> LinearODE:
    """{"coefficients": [c0, k0, ..., k_{n-1}]}."""
    coefficients = _require(obj, "coefficients", "linear ODE")
    if not isinstance(coefficients, list):
        raise InputError("linear ODE: coefficients must be a list")
    return LinearODE(tuple(parse_exact(c, f"coefficients[{k}]") for k, c in enumerate(coefficients)))


def dump_linear_ode(ode: LinearODE) -> dict:
    return {"coefficients": [dump_scalar(c) for c in ode.coefficients]}


def dump_diffpoly(poly: DiffPolynomial) -> dict:
    terms = sorted(poly.terms.items(), key=lambda item: item[0])
    return {
        "order": poly.order,
        "terms": [{"index": list(idx), "coeff": dump_scalar(c)} for idx, c in terms],
        "text": str(poly),
    }


def dump_unipoly(poly: UniPoly) -> dict:
    return {"coefficients": [dump_scalar(c) for c in poly.coefficients], "text": str(poly)}


def dump_balance(balance: LeadingBalance) -> dict:
    return {"p": balance.p, "u0": dump_scalar(balance.u0)}


def dump_indicial(data: IndicialData) -> dict:
    return {
        "balance": dump_balance(data.balance),
        "indicial": dump_unipoly(data.indicial),
        "fuchs_indices": [dump_scalar(j) for j in data.fuchs_indices],
        "integer_indices": sorted(data.integer_indices),
    }


def dump_laurent(solution: LaurentSolution) -> dict:
    return {
        "balance": dump_balance(solution.balance),
        "coefficients": [dump_scalar(c) for c in solution.coefficients],
        "resonances": [{"j": j, "status": status} for j, status in solution.resonances],
        "depth": solution.depth,
        "q": solution.q,
    }


def dump_genericity(verdict: GenericityVerdict) -> dict:
    return {
        "verdict": verdict.verdict,
        "witness": list(verdict.witness) if verdict.witness is not None else None,
        "jmax": verdict.jmax,
    }


def dump_constraint(constraint: Constraint) -> dict:
    out = {"description": constraint.description, "relation": constraint.relation}
    if constraint.residual is not None:
        out["residual"] = str(constraint.residual)
    return out


def dump_family(family: SolutionFamily) -> dict:
    return {
        "case_tag": family.case_tag,
        "expr": family.rendered,
        "free_params": list(family.free_params),
        "derived": list(family.derived),
        "constraints": [dump_constraint(c) for c in family.constraints],
        "provenance": family.provenance,
    }


def dump_classification(report: ClassificationReport) -> dict:
    return {
        "chain": dump_chain(report.chain),
        "case_path": report.case_path,
        "completeness": report.completeness,
        "families": [dump_family(f) for f in report.families],
        "notes": list(report.notes),
    }


def parse_assignment(obj: Mapping) -> dict[str, Scalar]:
    """Slot values; exact numerals stay exact, floats become complex."""
    if not isinstance(obj, Mapping):
        raise InputError("assignment must be a JSON object")
    return {str(name): parse_scalar(value, name, exact=False) for name, value in obj.items()}


def dump_residual(report: ResidualReport) -> dict:
    return {
        "sample_points": [dump_scalar(z) for z in report.sample_points],
        "max_relative_residual": report.max_relative_residual,
        "pole_skips": report.pole_skips,
        "verdict": report.verdict,
    }


def dump_curve(curve: GrowthCurve) -> dict:
    rho1, rho2 = curve.fitted_order
    return {
        "radii": list(curve.radii),
        "m_values": list(curve.m_values),
        "n_values": list(curve.n_values),
        "t_values": list(curve.t_values),
        "level": curve.level,
        "fitted_order": {"rho1": rho1, "rho2": rho2},
        "hayman_fit": None if curve.hayman_fit is None else {"b": curve.hayman_fit[0], "c": curve.hayman_fit[1]},
        "hayman_scale": curve.hayman_scale,
        "consistent": curve.consistent,
        "flags": list(curve.flags),
    }


def curve_table(curve: GrowthCurve) -> str:
    """Whitespace-separated columns r, m, N, T for external plotting."""
    lines = ["# r m N T"]
    for row in zip(curve.radii, curve.m_values, curve.n_values, curve.t_values):
        lines.append(" ".join(repr(float(v)) for v in row))
    return "\n".join(lines)


def dumps(obj, pretty: bool = False) -> str:
    """Deterministic JSON: sorted keys, repr floats."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2 if pretty else None)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}")


def error_object(kind: str, message: str) -> dict:
    return {"error": kind, "message": message}
