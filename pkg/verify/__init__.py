# Symbolic derivatives, pointwise evaluation and residual checks of closed-form solutions
from .differentiate import derivatives, differentiate
from .evaluate import evaluate
from .residual import InconclusiveError, ResidualReport, relative_residual, residual, residual_series
