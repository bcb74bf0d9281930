# Differential polynomials in u, u', ..., u^(n) with exact coefficients
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .numbers import ExactComplex, ONE, Scalar

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class DiffMonomial:
    """c_I * u^i0 * (u')^i1 * ... * (u^(n))^in."""

    index: MultiIndex
    coefficient: Scalar

    @property
    def weight(self) -> int:
        return weight(self.index)

    @property
    def degree(self) -> int:
        return sum(self.index)


def weight(index: MultiIndex) -> int:
    """Sum of (k+1)*i_k."""
    return sum((k + 1) * i for k, i in enumerate(index))


def _pad(index: Sequence[int], length: int) -> MultiIndex:
    return tuple(index) + (0,) * (length - len(index))


class DiffPolynomial:
    """Finite sum of DiffMonomials with distinct multi-indices; immutable."""

    __slots__ = ("_order", "_terms")

    def __init__(self, terms: Mapping[Sequence[int], Scalar] | Iterable[DiffMonomial] = (), order: int | None = None):
        if isinstance(terms, Mapping):
            items = list(terms.items())
        else:
            items = [(m.index, m.coefficient) for m in terms]
        needed = max((len(idx) for idx, _ in items), default=1) - 1
        for idx, _ in items:
            if any(i < 0 for i in idx):
                raise ValueError(f"negative exponent in multi-index {idx}")
        order = needed if order is None else max(order, needed)
        length = order + 1
        collected: dict[MultiIndex, Scalar] = {}
        for idx, coeff in items:
            key = _pad(idx, length)
            coeff = ExactComplex.of(coeff) if isinstance(coeff, (int, str)) else coeff
            collected[key] = collected[key] + coeff if key in collected else coeff
        self._order = order
        self._terms = {k: v for k, v in collected.items() if v != 0}

    @classmethod
    def constant(cls, value: Scalar, order: int = 0) -> DiffPolynomial:
        return cls({(0,) * (order + 1): value}, order)

    @classmethod
    def variable(cls, k: int = 0, order: int | None = None) -> DiffPolynomial:
        """The polynomial u^(k)."""
        index = [0] * (k + 1)
        index[k] = 1
        return cls({tuple(index): ONE}, order)

    @property
    def order(self) -> int:
        return self._order

    @property
    def effective_order(self) -> int:
        """Largest k with i_k > 0 in some term, -1 for constants."""
        best = -1
        for idx in self._terms:
            for k in range(len(idx) - 1, -1, -1):
                if idx[k]:
                    best = max(best, k)
                    break
        return best

    @property
    def terms(self) -> dict[MultiIndex, Scalar]:
        return dict(self._terms)

    @property
    def monomials(self) -> list[DiffMonomial]:
        return [DiffMonomial(idx, self._terms[idx]) for idx in sorted(self._terms)]

    def coefficient(self, index: Sequence[int]) -> Scalar:
        return self._terms.get(_pad(index, self._order + 1), ExactComplex())

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def with_order(self, order: int) -> DiffPolynomial:
        return DiffPolynomial(self._terms, max(order, self._order))

    def _coerce(self, other) -> DiffPolynomial:
        if isinstance(other, DiffPolynomial):
            return other
        return DiffPolynomial.constant(other, self._order)

    def __add__(self, other) -> DiffPolynomial:
        other = self._coerce(other)
        order = max(self._order, other._order)
        merged = dict(DiffPolynomial(self._terms, order)._terms)
        for idx, coeff in DiffPolynomial(other._terms, order)._terms.items():
            merged[idx] = merged[idx] + coeff if idx in merged else coeff
        return DiffPolynomial(merged, order)

    __radd__ = __add__

    def __neg__(self) -> DiffPolynomial:
        return DiffPolynomial({k: -v for k, v in self._terms.items()}, self._order)

    def __sub__(self, other) -> DiffPolynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> DiffPolynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> DiffPolynomial:
        if not isinstance(other, DiffPolynomial):
            return DiffPolynomial({k: v * other for k, v in self._terms.items()}, self._order)
        order = max(self._order, other._order)
        length = order + 1
        out: dict[MultiIndex, Scalar] = {}
        for ia, ca in self._terms.items():
            ia = _pad(ia, length)
            for ib, cb in other._terms.items():
                ib = _pad(ib, length)
                key = tuple(x + y for x, y in zip(ia, ib))
                value = ca * cb
                out[key] = out[key] + value if key in out else value
        return DiffPolynomial(out, order)

    def __rmul__(self, other) -> DiffPolynomial:
        return self * other

    def __pow__(self, exponent: int) -> DiffPolynomial:
        result = DiffPolynomial.constant(ONE, self._order)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self) -> DiffPolynomial:
        """Formal total derivative: d/dz u^(k) = u^(k+1)."""
        length = self._order + 2
        out: dict[MultiIndex, Scalar] = {}
        for idx, coeff in self._terms.items():
            idx = _pad(idx, length)
            for k, power in enumerate(idx):
                if power == 0:
                    continue
                new = list(idx)
                new[k] -= 1
                new[k + 1] += 1
                key = tuple(new)
                value = coeff * power
                out[key] = out[key] + value if key in out else value
        return DiffPolynomial(out, self._order + 1)

    def _terms_truncated(self, order: int) -> dict[MultiIndex, Scalar]:
        return {idx[: order + 1]: v for idx, v in self._terms.items()}

    def evaluate(self, jet: Sequence):
        """Term-by-term evaluation on (u, u', ..., u^(n)); works over any ring of values."""
        if len(jet) < self.effective_order + 1:
            raise ValueError(
                f"jet of length {len(jet)} too short for order {self.effective_order}"
            )
        total = 0
        for idx, coeff in self._terms.items():
            value = coeff
            for k, power in enumerate(idx):
                if power:
                    value = value * (jet[k] ** power)
            total = total + value
        return total

    def term_values(self, jet: Sequence) -> list:
        """Values of the individual monomials, used for relative residuals."""
        out = []
        for idx, coeff in self._terms.items():
            value = coeff
            for k, power in enumerate(idx):
                if power:
                    value = value * (jet[k] ** power)
            out.append(value)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffPolynomial):
            return NotImplemented
        order = max(self._order, other._order)
        return DiffPolynomial(self._terms, order)._terms == DiffPolynomial(other._terms, order)._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms_truncated(max(self.effective_order, 0)).items()))

    def __repr__(self) -> str:
        return f"DiffPolynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"

        def factor(k: int, power: int) -> str:
            name = "u" + ("'" * k if k <= 3 else f"^({k})")
            return name if power == 1 else f"{name}^{power}"

        def sort_key(idx):
            return (-weight(idx), [-i for i in reversed(idx)])

        parts = []
        for idx in sorted(self._terms, key=sort_key):
            coeff = self._terms[idx]
            body = "*".join(factor(k, p) for k, p in enumerate(idx) if p)
            if not body:
                parts.append(f"({coeff})")
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"({coeff})*{body}")
        return " + ".join(parts).replace("+ -", "- ")
