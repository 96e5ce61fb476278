"""Finite orbits and their isotropy groups for every ideal class representative."""

from enum import StrEnum

from ai_pipeline_core.documents import FlowDocument
from pydantic import BaseModel, Field

from toral_kms.documents.manifest import RunManifest


class OrbitCatalogFiles(StrEnum):
    ORBIT_CATALOG = "orbit_catalog.json"


class IsotropyReport(BaseModel):
    lattice: list[list[int]] = Field(description="HNF rows spanning H with the torsion relation")
    index: int
    quotient_invariants: list[int]
    torsion_order: int
    free_rank: int
    characters: str = Field(description="Character group, e.g. Z/2 × T^1")


class OrbitReport(BaseModel):
    q: int
    base: list[str]
    size: int
    points: list[list[str]]
    isotropy: IsotropyReport


class DenominatorReport(BaseModel):
    q: int
    orbit_count: int
    sizes: list[int]
    point_count: int
    isotropy_index_lcm: int


class IdealOrbitsReport(BaseModel):
    ideal_label: str
    statistics: list[DenominatorReport]
    orbits: list[OrbitReport]


class OrbitCatalogData(BaseModel):
    manifest: RunManifest
    field_name: str
    qmax: int
    ideals: list[IdealOrbitsReport]

    def orbit_counts(self) -> dict[str, int]:
        return {entry.ideal_label: len(entry.orbits) for entry in self.ideals}


class OrbitCatalogDocument(FlowDocument):
    """Document listing finite orbits with their isotropy data."""

    FILES = OrbitCatalogFiles
