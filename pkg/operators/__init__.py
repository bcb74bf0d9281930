# Factor chains [D - (a_n u + b_n)]...[D - (a_1 u + b_1)](u - alpha) and linear factorization
from .chain import (
    ChainError,
    FactorChain,
    Jet,
    SmoothFunction,
    apply_chain_numeric,
    expand_chain,
    expand_Dn,
)
from .linfact import FactorizationError, LinearODE, characteristic_poly, factor_linear, linear_from_chain
