# Univariate polynomials over the Gaussian rationals and their roots
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from loguru import logger

from utils.errors import DomainError

from .numbers import ExactComplex, ONE, ZERO

VARIABLES = ("j", "u0", "z")
ABERTH_MAX_ITER = 200
DIVISOR_SEARCH_LIMIT = 10**8


class UndefinedRootsError(DomainError):
    """Custom exception for root requests on the zero or constant polynomial."""

    pass


def _trim(coefficients: Iterable) -> tuple[ExactComplex, ...]:
    coeffs = [ExactComplex.of(c) for c in coefficients]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class UniPoly:
    """Polynomial c0 + c1*x + ... with exact coefficients, lowest degree first."""

    coefficients: tuple[ExactComplex, ...]
    var: str = "z"

    def __post_init__(self):
        if self.var not in VARIABLES:
            raise ValueError(f"unknown polynomial variable {self.var!r}")
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    @classmethod
    def constant(cls, value, var: str = "z") -> UniPoly:
        return cls((ExactComplex.of(value),), var)

    @classmethod
    def x(cls, var: str = "z") -> UniPoly:
        return cls((ZERO, ONE), var)

    @classmethod
    def from_roots(cls, roots: Sequence, var: str = "z") -> UniPoly:
        result = cls.constant(1, var)
        for r in roots:
            result = result * cls((-ExactComplex.of(r), ONE), var)
        return result

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> ExactComplex:
        return self.coefficients[-1] if self.coefficients else ZERO

    def coefficient(self, k: int) -> ExactComplex:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else ZERO

    def __call__(self, x):
        """Horner evaluation; exact for exact arguments."""
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return UniPoly.constant(other, self.var)

    def __add__(self, other) -> UniPoly:
        other = self._coerce(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return UniPoly(
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(n)), self.var
        )

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly(tuple(-c for c in self.coefficients), self.var)

    def __sub__(self, other) -> UniPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> UniPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> UniPoly:
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly((), self.var)
        out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for k, b in enumerate(other.coefficients):
                out[i + k] = out[i + k] + a * b
        return UniPoly(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> UniPoly:
        result = UniPoly.constant(1, self.var)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def shift(self, s) -> UniPoly:
        """Returns p(x + s)."""
        s = ExactComplex.of(s)
        result = UniPoly((), self.var)
        linear = UniPoly((s, ONE), self.var)
        for c in reversed(self.coefficients):
            result = result * linear + c
        return result

    def derivative(self) -> UniPoly:
        return UniPoly(
            tuple(c * k for k, c in enumerate(self.coefficients) if k > 0), self.var
        )

    def monic(self) -> UniPoly:
        if self.is_zero():
            raise UndefinedRootsError("zero polynomial has no monic form")
        lead = self.leading
        return UniPoly(tuple(c / lead for c in self.coefficients), self.var)

    def divmod_linear(self, root: ExactComplex) -> tuple[UniPoly, ExactComplex]:
        """Synthetic division by (x - root); returns quotient and remainder."""
        quotient = []
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * root + c
            quotient.append(acc)
        remainder = quotient.pop() if quotient else ZERO
        return UniPoly(tuple(reversed(quotient)), self.var), remainder

    def approx(self) -> np.ndarray:
        """Complex coefficients, highest degree first (numpy.polyval order)."""
        return np.array([complex(c) for c in reversed(self.coefficients)], dtype=complex)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            coeff = f"({c})" if c.re and c.im else str(c)
            if k == 0:
                parts.append(coeff)
            else:
                power = self.var if k == 1 else f"{self.var}^{k}"
                parts.append(power if c == 1 else f"{coeff}*{power}")
        return " + ".join(parts)


def _closed_form(p: UniPoly) -> list[complex]:
    c = [complex(x) for x in p.coefficients]
    if p.degree == 1:
        return [-c[0] / c[1]]
    a, b, c0 = c[2], c[1], c[0]
    disc = cmath.sqrt(b * b - 4 * a * c0)
    q = -0.5 * (b + disc) if (b.conjugate() * disc).real >= 0 else -0.5 * (b - disc)
    if q == 0:
        return [0j, 0j]
    return [q / a, c0 / q]


def _aberth(coeffs: np.ndarray) -> np.ndarray:
    """Simultaneous Aberth iteration on coefficients given highest degree first."""
    n = len(coeffs) - 1
    monic = coeffs / coeffs[0]
    radius = max(abs(monic[-1]) ** (1.0 / n), 1e-3)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    roots = radius * np.exp(1j * angles) * (1 + 0.01 * np.arange(n) / n)
    deriv = np.polyder(monic)
    for iteration in range(ABERTH_MAX_ITER):
        values = np.polyval(monic, roots)
        slopes = np.polyval(deriv, roots)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = values / slopes
            diffs = roots[:, None] - roots[None, :]
            np.fill_diagonal(diffs, 1.0)
            inv = 1.0 / diffs
            np.fill_diagonal(inv, 0.0)
            correction = ratio / (1.0 - ratio * inv.sum(axis=1))
        correction = np.where(np.isfinite(correction), correction, 0.0)
        roots = roots - correction
        if np.all(np.abs(correction) <= 1e-15 * (1.0 + np.abs(roots))):
            logger.debug(f"Aberth converged after {iteration + 1} iterations")
            break
    else:
        logger.debug("Aberth reached the iteration cap")
    return roots


def _polish(coeffs: np.ndarray, root: complex) -> complex:
    slope = np.polyval(np.polyder(coeffs), root)
    if slope == 0:
        return root
    candidate = root - np.polyval(coeffs, root) / slope
    if abs(np.polyval(coeffs, candidate)) <= abs(np.polyval(coeffs, root)):
        return complex(candidate)
    return root


def poly_roots(p: UniPoly) -> list[complex]:
    """All deg(p) complex roots with multiplicity."""
    if p.is_zero() or p.degree < 1:
        raise UndefinedRootsError("undefined roots")
    lowest = next(k for k, c in enumerate(p.coefficients) if c)
    roots: list[complex] = [0j] * lowest
    reduced = UniPoly(p.coefficients[lowest:], p.var)
    if reduced.degree == 0:
        return roots
    if reduced.degree <= 2:
        return roots + _closed_form(reduced)
    coeffs = reduced.approx()
    found = _aberth(coeffs)
    return roots + [_polish(coeffs, complex(r)) for r in found]


def exact_roots(p: UniPoly, max_denominator: int = 10**6) -> tuple[list[ExactComplex], list[complex]]:
    """Splits the roots into exactly confirmed Gaussian-rational ones and the rest."""
    exact: list[ExactComplex] = []
    remaining = p
    for approx in poly_roots(p):
        if remaining.degree < 1:
            break
        candidate = ExactComplex.rationalize(approx, max_denominator)
        quotient, remainder = remaining.divmod_linear(candidate)
        if not remainder:
            exact.append(candidate)
            remaining = quotient
    leftover = poly_roots(remaining) if remaining.degree >= 1 else []
    return exact, leftover


def _integer_divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_integer_roots(p: UniPoly) -> set[int]:
    """Exact set of integer roots."""
    if p.is_zero():
        raise UndefinedRootsError("undefined roots")
    roots: set[int] = set()
    lowest = next(k for k, c in enumerate(p.coefficients) if c)
    if lowest > 0:
        roots.add(0)
    c_low = p.coefficients[lowest]
    # Clearing denominators turns the lowest coefficient into a Gaussian integer g;
    # a nonzero integer root must divide both parts of g.
    scale = math.lcm(*(x.denominator for c in p.coefficients for x in (c.re, c.im)))
    g = math.gcd(int(c_low.re * scale), int(c_low.im * scale))
    if g <= DIVISOR_SEARCH_LIMIT:
        candidates = set()
        for d in _integer_divisors(g):
            candidates.update((d, -d))
    else:
        logger.warning("Integer-root divisor search too large, using numeric candidates")
        candidates = set()
        for r in poly_roots(p):
            base = round(r.real)
            candidates.update((base - 1, base, base + 1))
    for r in candidates:
        if r != 0 and not p(ExactComplex(Fraction(r))):
            roots.add(r)
    return roots
