# Exact Gaussian-rational arithmetic, polynomials and differential polynomials
from .numbers import ExactComplex, Scalar, to_complex, is_exact
from .polynomials import UniPoly, poly_roots, rational_integer_roots, exact_roots, UndefinedRootsError
from .diffpoly import DiffMonomial, DiffPolynomial
from .series import LaurentSeries
