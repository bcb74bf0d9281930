# Exports the JSON codecs for use by the command modules
from .models import (
    curve_table,
    dump_balance,
    dump_chain,
    dump_classification,
    dump_constraint,
    dump_curve,
    dump_diffpoly,
    dump_family,
    dump_genericity,
    dump_indicial,
    dump_laurent,
    dump_linear_ode,
    dump_residual,
    dump_scalar,
    dump_unipoly,
    dumps,
    error_object,
    loads,
    parse_approx,
    parse_assignment,
    parse_chain,
    parse_exact,
    parse_linear_ode,
    parse_scalar,
)
