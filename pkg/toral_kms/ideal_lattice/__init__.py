"""Integral ideals, their norms, nesting and dual restriction maps."""

from .ideals import (
    UNIT_IDEAL_LABEL,
    contains,
    ideal_coordinates,
    ideal_from_basis,
    ideal_from_generators,
    ideal_norm,
    include,
    make_ideal,
    principal_ideal,
    rational_shrink,
    restriction_map,
    unit_ideal,
)
from .models import IdealInclusion, IntegralIdeal

__all__ = [
    "UNIT_IDEAL_LABEL",
    "IdealInclusion",
    "IntegralIdeal",
    "contains",
    "ideal_coordinates",
    "ideal_from_basis",
    "ideal_from_generators",
    "ideal_norm",
    "include",
    "make_ideal",
    "principal_ideal",
    "rational_shrink",
    "restriction_map",
    "unit_ideal",
]
