# Closed-form solution families of the order-two chain and the equations it reduces to
from .expr import Expr, Param, Z, constant_value, free_params, render, substitute, to_sympy, wrap
from .families import (
    Constraint,
    ConstraintViolation,
    InstantiationError,
    SolutionFamily,
    find_family,
    instantiate,
)
from .fisher import FisherBranch, fisher_branches, fisher_condition, fisher_meromorphic
from .kpp import kpp_classify, kpp_compatibility
from .cases import ClassificationReport, a4_obstruction, classify, particular_family, refactorizations
