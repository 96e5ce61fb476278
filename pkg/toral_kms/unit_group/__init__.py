"""Unit groups: torsion, verified free generators, regulators and exponent words."""

from .models import UnitGroupData, UnitProvenance, UnitWord
from .units import (
    evaluate_word,
    find_unit_relation,
    fundamental_unit_real_quadratic,
    log_embedding_matrix,
    multiplicative_order,
    possible_root_of_unity_orders,
    standard_unit_group,
    torsion_units,
    unit_rank,
    verify_units,
)

__all__ = [
    "UnitGroupData",
    "UnitProvenance",
    "UnitWord",
    "evaluate_word",
    "find_unit_relation",
    "fundamental_unit_real_quadratic",
    "log_embedding_matrix",
    "multiplicative_order",
    "possible_root_of_unity_orders",
    "standard_unit_group",
    "torsion_units",
    "unit_rank",
    "verify_units",
]
