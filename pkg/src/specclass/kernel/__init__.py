from .ops import (
    bounded_radical_contains,
    canonical_basis,
    elimination_saturation,
    ideal_contains,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    intersect_all,
    kernel_of,
    radical_contains,
    saturation,
)
from .rings import Ideal, Ring, RingElement

__all__ = [
    "Ideal",
    "Ring",
    "RingElement",
    "bounded_radical_contains",
    "canonical_basis",
    "elimination_saturation",
    "ideal_contains",
    "ideal_intersection",
    "ideal_power",
    "ideal_product",
    "ideal_quotient",
    "ideal_sum",
    "intersect_all",
    "kernel_of",
    "radical_contains",
    "saturation",
]
