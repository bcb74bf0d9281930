# Gaussian rationals: complex numbers with Fraction real and imaginary parts
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Union

from utils.errors import DomainError


@dataclass(frozen=True, slots=True)
class ExactComplex:
    """Exact complex scalar re + i*im with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, value) -> ExactComplex:
        """Coerces ints, Fractions, rational strings and ExactComplex values."""
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, (int, Fraction, str)):
            return cls(Fraction(value))
        raise TypeError(f"cannot build an exact complex from {type(value).__name__}")

    @classmethod
    def rationalize(cls, value: complex, max_denominator: int = 10**6) -> ExactComplex:
        """Closest Gaussian rational with bounded denominators."""
        value = complex(value)
        return cls(
            Fraction(value.real).limit_denominator(max_denominator),
            Fraction(value.imag).limit_denominator(max_denominator),
        )

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def conjugate(self) -> ExactComplex:
        return ExactComplex(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __neg__(self) -> ExactComplex:
        return ExactComplex(-self.re, -self.im)

    def __pos__(self) -> ExactComplex:
        return self

    def __add__(self, other):
        if isinstance(other, ExactComplex):
            return ExactComplex(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return ExactComplex(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ExactComplex):
            return ExactComplex(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return ExactComplex(self.re - other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, ExactComplex):
            return ExactComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return ExactComplex(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> ExactComplex:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        return ExactComplex(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, ExactComplex):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by exact zero")
            return ExactComplex(self.re / other, self.im / other)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactComplex(Fraction(other)) * self.inverse()
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, exponent: int) -> ExactComplex:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*I"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*I"

    def __repr__(self) -> str:
        return f"ExactComplex({self})"


ZERO = ExactComplex()
ONE = ExactComplex(Fraction(1))
I = ExactComplex(Fraction(0), Fraction(1))

Scalar = Union[ExactComplex, complex]


def is_exact(value) -> bool:
    return isinstance(value, (ExactComplex, int, Fraction))


def to_complex(value) -> complex:
    if isinstance(value, ExactComplex):
        return complex(value)
    if isinstance(value, Number):
        return complex(value)
    raise TypeError(f"not a scalar: {value!r}")


def exact_sqrt(value: ExactComplex) -> ExactComplex | None:
    """Exact square root when both parts come out rational, else None."""
    if not value:
        return ZERO
    if value.im == 0 and value.re > 0:
        r = _rational_sqrt(value.re)
        return None if r is None else ExactComplex(r)
    if value.im == 0:
        r = _rational_sqrt(-value.re)
        return None if r is None else ExactComplex(Fraction(0), r)
    modulus = _rational_sqrt(value.norm())
    if modulus is None:
        return None
    x = _rational_sqrt((modulus + value.re) / 2)
    if x is None or x == 0:
        return None
    root = ExactComplex(x, value.im / (2 * x))
    return root if root * root == value else None


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def require_exact(value, name: str = "value") -> ExactComplex:
    if isinstance(value, (float, complex)) and not isinstance(value, bool):
        raise DomainError(f"{name} must be a Gaussian rational, got {value!r}")
    return ExactComplex.of(value)
