# Nevanlinna characteristic estimates and growth-bound checks for closed-form solutions
from .nevanlinna import (
    GrowthError,
    PoleSources,
    ZeroSet,
    characteristic,
    counting_N,
    local_orders,
    located_poles,
    log_values,
    pole_count,
    pole_sources,
    proximity_m,
    winding_number,
)
from .hayman import GrowthCurve, doubling_ratio, hayman_check, order_estimate, radius_grid
