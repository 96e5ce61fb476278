"""Isotropy lattices of finite orbits and the characters of the isotropy groups."""

import cmath
from collections.abc import Sequence
from fractions import Fraction
from itertools import product
from math import lcm

from ai_pipeline_core import get_pipeline_logger

from toral_kms.exact_core import (
    IntegerMatrix,
    lattice_coordinates,
    lattice_index,
    row_lattice_basis,
    smith_normal_form,
)
from toral_kms.exceptions import InternalConsistencyError, ValidationFailure
from toral_kms.toral_action import ToralRep
from toral_kms.unit_group import UnitWord

from .groups import apply_mod, reduce_group_mod_q, word_matrix_mod
from .models import (
    CharacterGroupDescriptor,
    CharacterValue,
    DenominatorStatistics,
    ExponentVector,
    FiniteGroupModQ,
    FiniteOrbit,
    IsotropySubgroup,
    OrbitRecord,
)
from .orbits import count_exact_denominator_points, partition_denominator

logger = get_pipeline_logger(__name__)


def isotropy(orbit: FiniteOrbit, group: FiniteGroupModQ) -> IsotropySubgroup:
    """Stabilizer of the orbit's base point, pulled back to Z^n × Z_w.

    The stabilizer is found inside the finite quotient Ḡ; its labels together with the relation
    lattice span H. Orbit–stabilizer, [G : H] = |orbit| and the fixing of the base point by
    every lattice generator are checked.

    Args:
        orbit: Orbit enumerated modulo ``group.q``
        group: Reduction of the same representation modulo the orbit denominator

    Returns:
        The isotropy subgroup with its quotient invariants and character coordinates

    Raises:
        ValidationFailure: if the orbit and the group use different q or different ideals
        InternalConsistencyError: if a counting identity fails
    """
    if orbit.q != group.q:
        raise ValidationFailure(f"orbit has denominator {orbit.q} but the group is mod {group.q}")
    if orbit.ideal_label != group.ideal_label:
        raise ValidationFailure(
            f"orbit on {orbit.ideal_label} cannot use the group of {group.ideal_label}"
        )
    base = orbit.base.numerators
    stabilizer = [
        item.label for item in group.elements if apply_mod(item.matrix.rows, base, group.q) == base
    ]
    if group.order != orbit.size * len(stabilizer):
        raise InternalConsistencyError(
            f"orbit–stabilizer fails: |Ḡ| = {group.order}, |orbit| = {orbit.size}, "
            f"|stabilizer| = {len(stabilizer)}"
        )
    dimension = group.lattice_dimension
    lattice = row_lattice_basis([*group.relation_lattice, *stabilizer], dimension)
    index = lattice_index(lattice, dimension)
    if index != orbit.size:
        raise InternalConsistencyError(f"[G : H] = {index} but the orbit has {orbit.size} points")
    for row in lattice:
        if apply_mod(word_matrix_mod(group, row), base, group.q) != base:
            raise InternalConsistencyError(f"isotropy generator {list(row)} moves {orbit.base}")

    quotient = smith_normal_form(IntegerMatrix.from_rows(lattice))
    torsion_relation = (0,) * group.rank + (group.torsion_order,)
    coordinates = lattice_coordinates(lattice, torsion_relation)
    if coordinates is None:
        raise InternalConsistencyError("the torsion relation is missing from the isotropy lattice")
    # H ≅ Z^(n+1) / ⟨coordinates⟩, and the Smith form of that single row splits off Z/g.
    splitting = smith_normal_form(IntegerMatrix.from_rows([coordinates]))
    torsion_order = splitting.diagonal[0]
    logger.debug(f"Isotropy of {orbit.base}: index {index}, torsion part of order {torsion_order}")
    return IsotropySubgroup(
        q=group.q,
        ideal_label=group.ideal_label,
        base=orbit.base,
        lattice=lattice,
        index=index,
        quotient_invariants=quotient.invariant_factors,
        stabilizer_order=len(stabilizer),
        free_rank=group.rank,
        unit_torsion_order=group.torsion_order,
        torsion_order=torsion_order,
        character_coordinates=splitting.right.rows,
    )


def character_group(subgroup: IsotropySubgroup) -> CharacterGroupDescriptor:
    """Ĥ ≅ V̂ × T^n with V the torsion part of H."""
    torsion = (subgroup.torsion_order,) if subgroup.torsion_order > 1 else ()
    return CharacterGroupDescriptor(torsion_invariants=torsion, torus_rank=subgroup.free_rank)


def _as_vector(word: UnitWord | ExponentVector) -> ExponentVector:
    return word.as_vector() if isinstance(word, UnitWord) else tuple(word)


def subgroup_coordinates(
    subgroup: IsotropySubgroup, word: UnitWord | ExponentVector
) -> tuple[int, ...] | None:
    """Split coordinates (y_1 mod g, y_2, ..., y_(n+1)) of a unit in H, or None if u ∉ H."""
    vector = _as_vector(word)
    if len(vector) != subgroup.free_rank + 1:
        raise ValidationFailure(
            f"expected an exponent vector of length {subgroup.free_rank + 1}, got {len(vector)}"
        )
    coordinates = lattice_coordinates(subgroup.lattice, vector)
    if coordinates is None:
        return None
    columns = zip(*subgroup.character_coordinates)
    split = [sum(x * v for x, v in zip(coordinates, column)) for column in columns]
    split[0] %= subgroup.torsion_order
    return tuple(split)


def contains_word(subgroup: IsotropySubgroup, word: UnitWord | ExponentVector) -> bool:
    return subgroup_coordinates(subgroup, word) is not None


def evaluate_character(
    subgroup: IsotropySubgroup, character: CharacterValue, word: UnitWord | ExponentVector
) -> complex:
    """χ(u) = exp(2πi·(a·y_1/g + Σ θ_k·y_(k+1))) for u ∈ H.

    Raises:
        ValidationFailure: if the character does not fit H or u is not in H
    """
    if len(character.angles) != subgroup.free_rank:
        raise ValidationFailure(
            f"character has {len(character.angles)} angles but H has free rank "
            f"{subgroup.free_rank}"
        )
    if character.torsion_index >= subgroup.torsion_order:
        raise ValidationFailure(
            f"torsion index {character.torsion_index} is not in Z/{subgroup.torsion_order}"
        )
    split = subgroup_coordinates(subgroup, word)
    if split is None:
        raise ValidationFailure(f"unit {list(_as_vector(word))} is not in the isotropy group")
    phase = Fraction(character.torsion_index * split[0], subgroup.torsion_order)
    phase += sum((angle * y for angle, y in zip(character.angles, split[1:])), Fraction(0))
    return cmath.exp(2j * cmath.pi * float(phase % 1))


def torsion_characters(subgroup: IsotropySubgroup) -> list[CharacterValue]:
    """Every character that is trivial on the free part."""
    zero = (Fraction(0),) * subgroup.free_rank
    return [
        CharacterValue(torsion_index=index, angles=zero)
        for index in range(subgroup.torsion_order)
    ]


def character_grid(subgroup: IsotropySubgroup, grid: int) -> list[CharacterValue]:
    """Torsion characters times the rational angles k/grid on each free coordinate."""
    if grid < 1:
        raise ValidationFailure(f"character grid size must be positive, got {grid}")
    steps = [Fraction(k, grid) for k in range(grid)]
    return [
        CharacterValue(torsion_index=index, angles=tuple(angles))
        for index in range(subgroup.torsion_order)
        for angles in product(steps, repeat=subgroup.free_rank)
    ]


def orbit_records(rep: ToralRep, qmax: int) -> list[OrbitRecord]:
    """Every finite orbit with denominator ≤ qmax, with its isotropy and character group."""
    records: list[OrbitRecord] = []
    for q in range(1, qmax + 1):
        group = reduce_group_mod_q(rep, q)
        for orbit in partition_denominator(rep, q):
            subgroup = isotropy(orbit, group)
            records.append(
                OrbitRecord(orbit=orbit, isotropy=subgroup, characters=character_group(subgroup))
            )
    return records


def denominator_statistics(
    q: int, dimension: int, records: Sequence[OrbitRecord]
) -> DenominatorStatistics:
    """Orbit count, sizes, point count and the lcm of isotropy indices for one denominator."""
    selected = [record for record in records if record.orbit.q == q]
    return DenominatorStatistics(
        q=q,
        orbit_count=len(selected),
        sizes=tuple(sorted(record.orbit.size for record in selected)),
        point_count=count_exact_denominator_points(dimension, q),
        isotropy_index_lcm=lcm(*(record.isotropy.index for record in selected)),
    )
