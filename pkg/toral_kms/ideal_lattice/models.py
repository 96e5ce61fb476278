"""Integral ideals as canonical sublattices of the integral basis lattice."""

from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from toral_kms.exact_core import IntegerMatrix
from toral_kms.number_field import FieldSpec


class IntegralIdeal(BaseModel):
    """Full-rank O_K-submodule of O_K.

    ``basis`` holds the Z-basis of the ideal as columns, in integral-basis coordinates. The
    columns are the rows of the reduced Hermite form of the ideal lattice, so two ideals are equal
    exactly when their bases are.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    field: FieldSpec = Field(repr=False)
    label: str = Field(description="Class representative name used in reports")
    basis: IntegerMatrix = Field(description="Columns are the ideal basis vectors, HNF-canonical")

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def basis_vectors(self) -> tuple[tuple[int, ...], ...]:
        """Basis vectors in echelon order."""
        return self.basis.columns

    @property
    def is_unit_ideal(self) -> bool:
        return self.basis == IntegerMatrix.identity(self.degree)

    def basis_rational(self) -> list[list[Fraction]]:
        return [[Fraction(entry) for entry in row] for row in self.basis.rows]

    def __str__(self) -> str:
        return f"{self.label} = span{[list(v) for v in self.basis_vectors]}"


class IdealInclusion(BaseModel):
    """J ⊆ I with basis_J = basis_I · transition."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    inner: IntegralIdeal
    outer: IntegralIdeal
    transition: IntegerMatrix = Field(description="Integer matrix C with basis_J = basis_I · C")
    index: int = Field(ge=1, description="|I/J| = |det C|")
