"""Extremal trace parameters, the per-ideal catalog and the classification banner."""

from collections.abc import Iterator
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from toral_kms.orbit_isotropy import CharacterGroupDescriptor, CharacterValue, OrbitRecord

ClassificationKind = Literal[
    "imaginary_quadratic_complete",
    "rank_one_poulsen",
    "cm_incomplete",
    "non_cm_conjectural",
    "undetermined",
]
MeasureKind = Literal["orbit", "haar"]


class ClassificationStatus(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ClassificationKind
    notes: str


class ExtremalTraceParam(BaseModel):
    """A pair (μ, χ): an ergodic invariant measure and a character of its isotropy group.

    For ``measure == "orbit"`` the measure is uniform on ``record.orbit`` and χ is a character of
    ``record.isotropy``. Haar measure has trivial isotropy, so its character is the empty one.
    """

    model_config = ConfigDict(frozen=True)

    ideal_label: str
    measure: MeasureKind
    record: OrbitRecord | None = None
    character: CharacterValue = Field(default_factory=CharacterValue)
    unit_torsion_order: int | None = Field(
        default=None, ge=2, description="w = |W|; required for Haar, else taken from the record"
    )

    @model_validator(mode="after")
    def _check_measure(self) -> "ExtremalTraceParam":
        if self.measure == "orbit" and self.record is None:
            raise ValueError("an orbit measure needs its orbit record")
        if self.measure == "haar":
            if self.record is not None:
                raise ValueError("Haar measure carries no orbit record")
            if not self.character.is_trivial or self.character.angles:
                raise ValueError("Haar measure has trivial isotropy; only the trivial character")
            if self.unit_torsion_order is None:
                raise ValueError("Haar measure needs the order of the unit torsion group")
        elif self.record is not None and self.unit_torsion_order not in (
            None,
            self.record.isotropy.unit_torsion_order,
        ):
            raise ValueError("unit torsion order does not match the orbit record")
        return self

    @property
    def torsion_order(self) -> int:
        """w = |W|, the order of the torsion units."""
        if self.record is not None:
            return self.record.isotropy.unit_torsion_order
        assert self.unit_torsion_order is not None
        return self.unit_torsion_order

    def __str__(self) -> str:
        if self.record is None:
            return f"{self.ideal_label}: Haar"
        angles = ", ".join(str(a) for a in self.character.angles)
        return (
            f"{self.ideal_label}: {self.record.orbit}, χ = ({self.character.torsion_index}; "
            f"[{angles}])"
        )


class OrbitParameters(BaseModel):
    """Characters attached to one finite orbit: all torsion characters and an optional grid."""

    model_config = ConfigDict(frozen=True)

    record: OrbitRecord
    torsion_characters: tuple[CharacterValue, ...]
    sample_characters: tuple[CharacterValue, ...] = ()

    @property
    def descriptor(self) -> CharacterGroupDescriptor:
        return self.record.characters


class IdealStratum(BaseModel):
    """Catalog entries of one ideal class representative."""

    model_config = ConfigDict(frozen=True)

    ideal_label: str
    orbits: tuple[OrbitParameters, ...]
    haar: bool = Field(description="Haar measure is ergodic, which holds for unit rank ≥ 1")


class KmsCatalog(BaseModel):
    """Extremal trace parameters up to a denominator bound, for every labelled ideal."""

    model_config = ConfigDict(frozen=True)

    field_name: str
    beta: float = Field(description="Inverse temperature; recorded only, the catalog is β-free")
    qmax: int
    unit_rank: int
    unit_torsion_order: int = Field(ge=2, description="w = |W|")
    status: ClassificationStatus
    strata: tuple[IdealStratum, ...]

    @property
    def discrete_parameter_count(self) -> int:
        """Σ over orbits of |V̂|; for unit rank 0 this counts every finite-orbit parameter."""
        return sum(
            entry.descriptor.torsion_size for stratum in self.strata for entry in stratum.orbits
        )

    def parameters(self, include_samples: bool = False) -> Iterator[ExtremalTraceParam]:
        """Torsion-character parameters (and grid samples), then Haar, ideal by ideal."""
        for stratum in self.strata:
            for entry in stratum.orbits:
                characters = entry.torsion_characters
                if include_samples and entry.sample_characters:
                    characters = entry.sample_characters
                for character in characters:
                    yield ExtremalTraceParam(
                        ideal_label=stratum.ideal_label,
                        measure="orbit",
                        record=entry.record,
                        character=character,
                    )
            if stratum.haar:
                yield ExtremalTraceParam(
                    ideal_label=stratum.ideal_label,
                    measure="haar",
                    unit_torsion_order=self.unit_torsion_order,
                )
