"""Finite orbits, isotropy subgroups, character groups and the quasi-orbit space."""

from .groups import reduce_group_mod_q, word_matrix_mod
from .isotropy import (
    character_grid,
    character_group,
    contains_word,
    denominator_statistics,
    evaluate_character,
    isotropy,
    orbit_records,
    subgroup_coordinates,
    torsion_characters,
)
from .models import (
    CharacterGroupDescriptor,
    CharacterValue,
    DenominatorStatistics,
    FiniteGroupModQ,
    FiniteOrbit,
    GroupElementModQ,
    IsotropySubgroup,
    OrbitRecord,
    PrimPoint,
    PrimStratum,
    QuasiOrbitSpace,
)
from .orbits import (
    count_exact_denominator_points,
    exact_denominator_points,
    orbit_of,
    partition_denominator,
    pushforward_orbit,
)
from .quasi_orbits import prim_closure_contains, prim_strata, quasi_orbit_space

__all__ = [
    "CharacterGroupDescriptor",
    "CharacterValue",
    "DenominatorStatistics",
    "FiniteGroupModQ",
    "FiniteOrbit",
    "GroupElementModQ",
    "IsotropySubgroup",
    "OrbitRecord",
    "PrimPoint",
    "PrimStratum",
    "QuasiOrbitSpace",
    "character_grid",
    "character_group",
    "contains_word",
    "count_exact_denominator_points",
    "denominator_statistics",
    "evaluate_character",
    "exact_denominator_points",
    "isotropy",
    "orbit_of",
    "orbit_records",
    "partition_denominator",
    "prim_closure_contains",
    "prim_strata",
    "pushforward_orbit",
    "quasi_orbit_space",
    "reduce_group_mod_q",
    "subgroup_coordinates",
    "torsion_characters",
    "word_matrix_mod",
]
