"""Extremal KMS_β parameters, sampled trace values and the Prim strata."""

from enum import StrEnum

from ai_pipeline_core.documents import FlowDocument
from pydantic import BaseModel, Field

from toral_kms.documents.manifest import RunManifest


class KmsReportFiles(StrEnum):
    KMS_REPORT = "kms_report.json"


class CharacterReport(BaseModel):
    torsion_index: int
    angles: list[str]


class TraceSample(BaseModel):
    torsion_index: int = Field(description="Character of V the value belongs to")
    j: list[int]
    word: list[int] = Field(description="(free exponents..., torsion)")
    value: tuple[float, float] = Field(description="[re, im]")


class OrbitParameterReport(BaseModel):
    q: int
    base: list[str]
    size: int
    characters: str
    torsion_characters: list[CharacterReport]
    sample_characters: list[CharacterReport] = Field(default_factory=list)
    traces: list[TraceSample] = Field(default_factory=list)


class KmsStratumReport(BaseModel):
    ideal_label: str
    haar: bool
    orbits: list[OrbitParameterReport]


class PrimStratumReport(BaseModel):
    q: int | None
    base: list[str] | None
    size: int | None
    characters: str


class PrimIdealReport(BaseModel):
    ideal_label: str
    strata: list[PrimStratumReport]


class KmsReportData(BaseModel):
    manifest: RunManifest
    field_name: str
    beta: float
    qmax: int
    unit_rank: int
    classification: str
    classification_notes: str
    discrete_parameter_count: int
    strata: list[KmsStratumReport]
    prim: list[PrimIdealReport] | None = Field(
        default=None, description="Prim strata, present when the action is ID"
    )


class KmsReportDocument(FlowDocument):
    """Document holding the extremal trace catalog."""

    FILES = KmsReportFiles
