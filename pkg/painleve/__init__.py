# Leading-order analysis, Fuchs indices, Laurent recursion and the genericity test
from .balances import LeadingBalance, NotABalanceError, dominant_exponent, dominant_terms, leading_balances
from .indicial import (
    DegenerateChainError,
    IndicialData,
    fuchs_pair,
    indicial_data,
    indicial_direct,
    indicial_recursive,
    residue_poly,
)
from .genericity import GenericityVerdict, genericity_test
from .laurent import LaurentSolution, ObstructedResonanceError, laurent_expand, laurent_series
