"""Ideal construction, verification, norms and the dual restriction maps."""

from collections.abc import Sequence
from fractions import Fraction
from math import lcm

from ai_pipeline_core import get_pipeline_logger

from toral_kms.exact_core import (
    IntegerMatrix,
    lattice_coordinates,
    mat_vec,
    rational_inverse,
    row_lattice_basis,
)
from toral_kms.exceptions import ValidationFailure
from toral_kms.number_field import FieldElement, FieldSpec, element, is_integral, one

from .models import IdealInclusion, IntegralIdeal

logger = get_pipeline_logger(__name__)

UNIT_IDEAL_LABEL = "O_K"


def _product_coordinates(field: FieldSpec, vector: Sequence[int], index: int) -> tuple[int, ...]:
    """Integral-basis coordinates of b_index · (element with coordinates ``vector``)."""
    table = field.structure_constants
    degree = field.degree
    result = [0] * degree
    for i, coefficient in enumerate(vector):
        if coefficient:
            for k, constant in enumerate(table[i][index]):
                result[k] += coefficient * constant
    return tuple(result)


def _check_closure(field: FieldSpec, hermite_rows: Sequence[Sequence[int]]) -> None:
    for vector in hermite_rows:
        for index in range(field.degree):
            product = _product_coordinates(field, vector, index)
            if lattice_coordinates(hermite_rows, product) is None:
                raise ValidationFailure(
                    f"not an ideal: b{index + 1}·{list(vector)} has coordinates {list(product)} "
                    "outside the lattice"
                )


def make_ideal(
    field: FieldSpec,
    generators: Sequence[FieldElement] | IntegerMatrix,
    label: str = "J",
) -> IntegralIdeal:
    """Build and verify an integral ideal.

    Args:
        field: The number field
        generators: Either ideal generators g_i, whose products g_i·b_j span the ideal, or an
            integer matrix whose columns are a Z-basis of the ideal
        label: Report label

    Returns:
        The ideal with its HNF-canonical basis

    Raises:
        ValidationFailure: for the zero ideal, non-integral generators, a singular basis or a
            lattice that is not closed under multiplication by O_K
    """
    degree = field.degree
    if isinstance(generators, IntegerMatrix):
        if generators.shape[0] != degree:
            raise ValidationFailure(
                f"ideal basis must have {degree} rows, got {generators.shape[0]}"
            )
        spanning = [list(column) for column in generators.columns]
    else:
        for position, generator in enumerate(generators):
            if not is_integral(generator):
                raise ValidationFailure(f"ideal generator {position} = {generator} is not integral")
        spanning = [
            list(_product_coordinates(field, [int(c) for c in g.coords], j))
            for g in generators
            for j in range(degree)
        ]
    if not any(any(vector) for vector in spanning):
        raise ValidationFailure("zero ideal: every generator is zero")
    hermite_rows = row_lattice_basis(spanning, degree)
    if len(hermite_rows) < degree:
        raise ValidationFailure(
            f"ideal basis has rank {len(hermite_rows)} < {degree}; an ideal has full rank"
        )
    _check_closure(field, hermite_rows)
    ideal = IntegralIdeal(field=field, label=label, basis=IntegerMatrix.from_columns(hermite_rows))
    logger.debug(f"Verified ideal {ideal} of norm {ideal_norm(ideal)}")
    return ideal


def unit_ideal(field: FieldSpec, label: str = UNIT_IDEAL_LABEL) -> IntegralIdeal:
    return make_ideal(field, [one(field)], label)


def principal_ideal(generator: FieldElement, label: str | None = None) -> IntegralIdeal:
    return make_ideal(generator.field, [generator], label or f"({generator})")


def ideal_norm(ideal: IntegralIdeal) -> int:
    """|O_K / J| as the absolute basis determinant."""
    return abs(ideal.basis.determinant())


def ideal_coordinates(ideal: IntegralIdeal, value: FieldElement) -> tuple[Fraction, ...]:
    """Coordinates of ``value`` in the ideal basis."""
    return tuple(mat_vec(rational_inverse(ideal.basis_rational()), value.coords))


def contains(ideal: IntegralIdeal, value: FieldElement) -> bool:
    return all(c.denominator == 1 for c in ideal_coordinates(ideal, value))


def rational_shrink(ideal: IntegralIdeal) -> int:
    """Least positive integer q with q·O_K ⊆ J, i.e. the least positive integer in J."""
    coordinates = ideal_coordinates(ideal, one(ideal.field))
    return lcm(*(c.denominator for c in coordinates))


def include(inner: IntegralIdeal, outer: IntegralIdeal) -> IdealInclusion:
    """Verify J ⊆ I and record C = B_I⁻¹·B_J.

    Raises:
        ValidationFailure: if the transition matrix is not integral
    """
    if inner.field is not outer.field and inner.field.polynomial != outer.field.polynomial:
        raise ValidationFailure("ideals belong to different fields")
    transition = [
        mat_vec(rational_inverse(outer.basis_rational()), column) for column in inner.basis.columns
    ]
    if any(entry.denominator != 1 for column in transition for entry in column):
        raise ValidationFailure(f"{inner.label} is not contained in {outer.label}")
    matrix = IntegerMatrix.from_columns([[int(entry) for entry in column] for column in transition])
    return IdealInclusion(
        inner=inner, outer=outer, transition=matrix, index=abs(matrix.determinant())
    )


def restriction_map(inclusion: IdealInclusion) -> tuple[IntegerMatrix, int]:
    """Dual restriction Î → Ĵ on torus coordinates, t ↦ Cᵀ·t mod 1.

    Returns:
        (Cᵀ, |I/J|), the matrix and the number of preimages of each point
    """
    return inclusion.transition.transpose(), inclusion.index


def ideal_from_basis(
    field: FieldSpec, columns: Sequence[Sequence[int]], label: str
) -> IntegralIdeal:
    """Ideal from a list of basis vectors given in integral-basis coordinates."""
    degree = field.degree
    if len(columns) != degree or any(len(column) != degree for column in columns):
        raise ValidationFailure(f"ideal {label} needs {degree} basis vectors of length {degree}")
    return make_ideal(field, IntegerMatrix.from_columns(columns), label)


def ideal_from_generators(
    field: FieldSpec, generators: Sequence[Sequence[Fraction | int]], label: str
) -> IntegralIdeal:
    """Ideal from generators given in integral-basis coordinates."""
    return make_ideal(field, [element(field, coords) for coords in generators], label)
