"""Unit group data and exponent words."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from toral_kms.exact_core import RealInterval
from toral_kms.number_field import FieldElement, FieldSpec

UnitProvenance = Literal["computed", "user-supplied", "derived-subgroup"]


class UnitWord(BaseModel):
    """Exponent vector of a unit: torsion_gen^torsion_exp · ∏ free_gen_i^exponents_i."""

    model_config = ConfigDict(frozen=True)

    torsion_exp: int = Field(default=0, description="Exponent of the torsion generator")
    exponents: tuple[int, ...] = Field(description="Exponents of the free generators")

    @classmethod
    def identity(cls, rank: int) -> "UnitWord":
        return cls(torsion_exp=0, exponents=(0,) * rank)

    @classmethod
    def free(cls, exponents: tuple[int, ...]) -> "UnitWord":
        return cls(torsion_exp=0, exponents=exponents)

    @classmethod
    def torsion(cls, exponent: int, rank: int) -> "UnitWord":
        return cls(torsion_exp=exponent, exponents=(0,) * rank)

    def __add__(self, other: "UnitWord") -> "UnitWord":
        if len(self.exponents) != len(other.exponents):
            raise ValueError("words over different unit ranks")
        return UnitWord(
            torsion_exp=self.torsion_exp + other.torsion_exp,
            exponents=tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def __neg__(self) -> "UnitWord":
        return UnitWord(torsion_exp=-self.torsion_exp, exponents=tuple(-e for e in self.exponents))

    def scale(self, factor: int) -> "UnitWord":
        return UnitWord(
            torsion_exp=self.torsion_exp * factor,
            exponents=tuple(factor * e for e in self.exponents),
        )

    def reduced(self, torsion_order: int) -> "UnitWord":
        return UnitWord(torsion_exp=self.torsion_exp % torsion_order, exponents=self.exponents)

    def as_vector(self) -> tuple[int, ...]:
        """Lattice vector (free exponents..., torsion exponent)."""
        return (*self.exponents, self.torsion_exp)

    @classmethod
    def from_vector(cls, vector: tuple[int, ...]) -> "UnitWord":
        return cls(torsion_exp=vector[-1], exponents=tuple(vector[:-1]))

    def __str__(self) -> str:
        return f"(t={self.torsion_exp}; {list(self.exponents)})"


class UnitGroupData(BaseModel):
    """Verified finite-index subgroup W × ⟨free generators⟩ of the unit group."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    field: FieldSpec = Field(repr=False)
    torsion_generator: FieldElement
    torsion_order: int = Field(ge=2)
    free_generators: tuple[FieldElement, ...]
    regulator: RealInterval = Field(
        description="Certified |det| of the log-embedding matrix of the free generators"
    )
    provenance: UnitProvenance
    finite_index_caveat: bool = Field(
        description="True when the free part is only known to have finite index in the full group"
    )

    @model_validator(mode="after")
    def _regulator_positive(self) -> "UnitGroupData":
        if self.regulator.lower <= 0:
            raise ValueError("regulator interval must exclude zero")
        return self

    @property
    def rank(self) -> int:
        return len(self.free_generators)

    @property
    def lattice_dimension(self) -> int:
        """Dimension of the exponent lattice Z^n × Z (torsion last)."""
        return self.rank + 1
