# Exact truncated Laurent series in z
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .numbers import ExactComplex, ZERO


class LaurentSeries:
    """Sum of c_e z^e for exponents below `precision`; precision None means exact."""

    __slots__ = ("terms", "precision")

    def __init__(self, terms: Mapping[int, ExactComplex], precision: int | None = None):
        self.precision = precision
        self.terms = {
            e: ExactComplex.of(c)
            for e, c in terms.items()
            if c and (precision is None or e < precision)
        }

    @classmethod
    def constant(cls, value) -> LaurentSeries:
        return cls({0: ExactComplex.of(value)})

    @classmethod
    def from_coefficients(cls, valuation: int, coefficients, precision: int | None = None) -> LaurentSeries:
        return cls({valuation + r: c for r, c in enumerate(coefficients)}, precision)

    def coefficient(self, exponent: int) -> ExactComplex:
        if self.precision is not None and exponent >= self.precision:
            raise ValueError(f"coefficient z^{exponent} beyond precision {self.precision}")
        return self.terms.get(exponent, ZERO)

    @property
    def valuation(self) -> int | None:
        return min(self.terms) if self.terms else None

    def _min_precision(self, other: LaurentSeries) -> int | None:
        if self.precision is None:
            return other.precision
        if other.precision is None:
            return self.precision
        return min(self.precision, other.precision)

    def _coerce(self, other) -> LaurentSeries:
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (ExactComplex, int, Fraction)):
            return LaurentSeries.constant(other)
        raise TypeError(f"cannot combine a Laurent series with {type(other).__name__}")

    def __add__(self, other) -> LaurentSeries:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentSeries(out, self._min_precision(other))

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries({e: -c for e, c in self.terms.items()}, self.precision)

    def __sub__(self, other) -> LaurentSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LaurentSeries:
        return self._coerce(other) - self

    def __mul__(self, other) -> LaurentSeries:
        if isinstance(other, (ExactComplex, int, Fraction)):
            scale = ExactComplex.of(other)
            return LaurentSeries({e: c * scale for e, c in self.terms.items()}, self.precision)
        other = self._coerce(other)
        # the product is known up to the first unknown term of either factor
        bounds = []
        if self.precision is not None and other.terms:
            bounds.append(self.precision + other.valuation)
        if other.precision is not None and self.terms:
            bounds.append(other.precision + self.valuation)
        if not self.terms and self.precision is not None:
            bounds.append(self.precision + (other.valuation or 0))
        if not other.terms and other.precision is not None:
            bounds.append(other.precision + (self.valuation or 0))
        precision = min(bounds) if bounds else None
        out: dict[int, ExactComplex] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                if precision is not None and e >= precision:
                    continue
                out[e] = out[e] + ca * cb if e in out else ca * cb
        return LaurentSeries(out, precision)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> LaurentSeries:
        if exponent < 0:
            raise ValueError("negative powers of truncated series are not supported")
        result = LaurentSeries.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def derivative(self) -> LaurentSeries:
        return LaurentSeries(
            {e - 1: c * e for e, c in self.terms.items() if e != 0},
            None if self.precision is None else self.precision - 1,
        )

    def is_zero(self) -> bool:
        """No nonzero term below the precision."""
        return not self.terms

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*z^{e}" for e, c in sorted(self.terms.items())) or "0"
        tail = "" if self.precision is None else f" + O(z^{self.precision})"
        return body + tail
