# Complex-plane evaluators: Weierstrass p, Bessel functions and elementary functions
from .elementary import ELEMENTARY, SpecialFunctionError, cot, csc2, elementary
from .weierstrass import EllipticInvariants, invariants, lattice_periods, wp, wp_pair, wp_prime
from .bessel import bessel_j, bessel_j_prime, bessel_y, bessel_y_prime
