"""ID verdict bundle: CM status, per-ideal Berend conditions and the classification banner."""

from enum import StrEnum

from ai_pipeline_core.documents import FlowDocument
from pydantic import BaseModel, Field

from toral_kms.documents.manifest import RunManifest


class BerendCertificateFiles(StrEnum):
    BEREND_CERTIFICATE = "berend_certificate.json"


class ExpandingEntry(BaseModel):
    embedding_index: int
    word: list[int] | None = Field(description="(free exponents..., torsion); None if not found")


class ConditionReport(BaseModel):
    ideal_label: str
    totally_irreducible_word: list[int] | None
    power_test_exponents: list[int]
    expanding: list[ExpandingEntry]
    not_virtually_cyclic: bool
    outcome: str


class BerendCertificateData(BaseModel):
    manifest: RunManifest
    field_name: str
    verdict: str
    rank: int
    cm_status: str
    cm_reason: str
    conjugation_image: list[str] | None = Field(
        default=None, description="Integral-basis coordinates of the image of θ under conjugation"
    )
    field_route: str
    matrix_route: str
    agreement: bool
    conditions: list[ConditionReport]
    classification: str
    classification_notes: str
    zw_condition: str


class BerendCertificateDocument(FlowDocument):
    """Document holding the ID verdict with both decision routes."""

    FILES = BerendCertificateFiles
