# Solution families: an expression with free slots, constraints and provenance
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Mapping

from loguru import logger

from algebra import ExactComplex
from utils.errors import DomainError, InputError

from .expr import Const, Expr, constant_value, free_params as slots_of, render, substitute, wrap

TRANSCENDENTAL_TOL = 1e-10


class InstantiationError(InputError):
    """Custom exception for assignments missing or naming unknown slots."""

    pass


class ConstraintViolation(DomainError):
    """Raised when an instantiation breaks one of the family's constraints."""

    def __init__(self, constraint: Constraint, value: complex):
        super().__init__(f"constraint violated: {constraint.description} (residual {value})")
        self.constraint = constraint
        self.value = value


@dataclass(frozen=True)
class Constraint:
    """A relation on chain parameters and slots.

    Without a residual expression the constraint was decided during classification and is kept for
    display. Otherwise `residual` must vanish (relation "zero") or stay away from zero ("nonzero")
    once the slots are bound.
    """

    description: str
    residual: Expr | None = None
    relation: Literal["zero", "nonzero"] = "zero"

    def check(self, assignment: Mapping[str, object]) -> None:
        if self.residual is None:
            return
        bound = substitute(self.residual, assignment)
        exact = _exact_value(bound)
        if exact is not None:
            holds = (exact == 0) if self.relation == "zero" else bool(exact)
            value = complex(exact)
        else:
            value = constant_value(bound)
            small = abs(value) <= TRANSCENDENTAL_TOL
            holds = small if self.relation == "zero" else not small
        if not holds:
            raise ConstraintViolation(self, value)


def _exact_value(e: Expr) -> ExactComplex | None:
    if isinstance(e, Const) and isinstance(e.value, ExactComplex):
        return e.value
    return None


Solver = Callable[[dict], dict]


@dataclass(frozen=True)
class SolutionFamily:
    case_tag: str
    expr: Expr
    free_params: tuple[str, ...]
    constraints: tuple[Constraint, ...] = ()
    provenance: str = ""
    # slots fixed by transcendental constraints, solved numerically at instantiation
    derived: tuple[str, ...] = ()
    solver: Solver | None = field(default=None, compare=False)

    def __post_init__(self):
        unknown = slots_of(self.expr) - set(self.free_params) - set(self.derived)
        if unknown:
            raise ValueError(f"family {self.case_tag} has unbound slots {sorted(unknown)}")

    @property
    def rendered(self) -> str:
        return render(self.expr)


def instantiate(family: SolutionFamily, assignment: Mapping[str, object]) -> Expr:
    """Binds every free slot, solves derived slots and checks the constraints."""
    missing = [name for name in family.free_params if name not in assignment]
    if missing:
        raise InstantiationError(f"{family.case_tag}: missing values for {', '.join(missing)}")
    extra = set(assignment) - set(family.free_params) - set(family.derived)
    if extra:
        raise InstantiationError(f"{family.case_tag}: unknown slots {', '.join(sorted(extra))}")
    values = {name: _coerce(value) for name, value in assignment.items()}
    if family.solver is not None:
        numeric = {
            name: complex(v.value) if isinstance(v, Const) else constant_value(v) for name, v in values.items()
        }
        solved = family.solver(numeric)
        for name in family.derived:
            if name not in values:
                values[name] = solved[name]
    for constraint in family.constraints:
        constraint.check(values)
    try:
        bound = substitute(family.expr, values)
    except ZeroDivisionError:
        raise DomainError(f"{family.case_tag}: the assignment puts a zero denominator in the solution")
    logger.debug(f"Instantiated {family.case_tag} with {sorted(values)}")
    return bound


def _coerce(value):
    if isinstance(value, Expr):
        return value
    return wrap(value)


def find_family(families, case_tag: str) -> SolutionFamily:
    for family in families:
        if family.case_tag == case_tag:
            return family
    available = ", ".join(f.case_tag for f in families)
    raise InputError(f"no family {case_tag!r}; available: {available}")
