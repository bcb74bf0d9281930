# Shared helpers for the subcommand modules; each module exposes NAME and register(subparsers)
from __future__ import annotations

from typing import Mapping

from classify import ClassificationReport, SolutionFamily, instantiate
from classify import classify as classify_chain
from classify.expr import Expr
from schemas import parse_assignment, parse_chain
from utils.errors import InputError


def add_source_argument(parser) -> None:
    parser.add_argument(
        "source",
        nargs="?",
        default="-",
        help="input JSON: a file path, inline JSON text, or - for stdin",
    )


def order_two_report(obj: Mapping) -> ClassificationReport:
    chain = parse_chain(obj)
    if chain.order != 2:
        raise InputError(f"classification needs a chain with exactly two factors, got {chain.order}")
    (a1, b1), (a2, b2) = chain.factors
    return classify_chain(chain.alpha, a1, b1, a2, b2)


def instantiated_family(payload: Mapping) -> tuple[ClassificationReport, SolutionFamily, Expr]:
    """Classifies payload["chain"] and binds payload["assignment"] into payload["family"]."""
    if not isinstance(payload, Mapping):
        raise InputError("input must be a JSON object")
    for key in ("chain", "family"):
        if key not in payload:
            raise InputError(f"missing key {key!r}")
    report = order_two_report(payload["chain"])
    family = report.family(str(payload["family"]))
    expr = instantiate(family, parse_assignment(payload.get("assignment", {})))
    return report, family, expr
