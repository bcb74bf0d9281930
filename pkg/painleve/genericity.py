# Decides whether every meromorphic solution of a chain lies in class W
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from loguru import logger

from algebra import ExactComplex, rational_integer_roots
from utils.errors import DomainError

from .indicial import indicial_recursive

Verdict = Literal["GenericW", "InS", "OnAxis"]


@dataclass(frozen=True)
class GenericityVerdict:
    verdict: Verdict
    witness: tuple[int, ...] | None
    jmax: int


def genericity_test(a: Sequence, jmax: int) -> GenericityVerdict:
    """OnAxis(i) for a zero a_i, InS(k, j) for a nonnegative integer Fuchs index j <= jmax
    of the balance u0 = -k/a_k, GenericW otherwise (certificate bounded by jmax)."""
    if jmax < 0:
        raise DomainError("jmax must be nonnegative")
    a = [ExactComplex.of(x) for x in a]
    for i, ai in enumerate(a, start=1):
        if not ai:
            logger.debug(f"a_{i} = 0, chain lies on an axis")
            return GenericityVerdict("OnAxis", (i,), jmax)
    for k, ak in enumerate(a, start=1):
        u0 = -ExactComplex.of(k) / ak
        indicial = indicial_recursive(a, u0)
        hits = sorted(j for j in rational_integer_roots(indicial) if 0 <= j <= jmax)
        if hits:
            logger.debug(f"Balance u0={u0} has nonnegative integer Fuchs indices {hits}")
            return GenericityVerdict("InS", (k, hits[0]), jmax)
    return GenericityVerdict("GenericW", None, jmax)
