"""Field invariants and the verified unit group."""

from enum import StrEnum

from ai_pipeline_core.documents import FlowDocument
from pydantic import BaseModel, Field

from toral_kms.documents.manifest import RunManifest


class FieldReportFiles(StrEnum):
    FIELD_REPORT = "field_report.json"


class UnitGroupReport(BaseModel):
    """Verified unit group; coordinates are integral-basis "p/q" strings."""

    rank: int
    torsion_order: int
    torsion_generator: list[str]
    free_generators: list[list[str]]
    regulator: list[str] = Field(description="Certified enclosure [lower, upper] of the regulator")
    regulator_approx: float
    provenance: str
    finite_index_caveat: bool


class IdealReport(BaseModel):
    label: str
    norm: int
    basis: list[list[int]] = Field(description="Basis vectors in integral-basis coordinates")


class FieldReportData(BaseModel):
    manifest: RunManifest
    name: str
    polynomial: list[str] = Field(description="Coefficients c_0, ..., c_d")
    degree: int
    signature: tuple[int, int]
    discriminant: str
    basis_source: str
    integral_basis: list[list[str]]
    unit_rank: int
    units: UnitGroupReport
    ideals: list[IdealReport]


class FieldReportDocument(FlowDocument):
    """Document describing the number field and its unit group."""

    FILES = FieldReportFiles
