"""Reports emitted only by the subcommand CLI, and the schema registry of every report."""

from typing import Any, Literal

from pydantic import BaseModel, Field

from toral_kms.dynamics_sim import EquidistReport
from toral_kms.exceptions import ValidationFailure

from .flow.berend_certificate import BerendCertificateData
from .flow.field_report import FieldReportData, UnitGroupReport
from .flow.kms_report import KmsReportData, PrimIdealReport
from .flow.orbit_catalog import IsotropyReport, OrbitCatalogData
from .manifest import SCHEMA_VERSION, RunManifest

ReportKind = Literal["field", "units", "berend", "orbits", "isotropy", "kms", "prim", "equidist"]


class UnitsReportData(BaseModel):
    manifest: RunManifest
    field_name: str
    units: UnitGroupReport


class IsotropyPointReport(BaseModel):
    manifest: RunManifest
    field_name: str
    ideal_label: str
    point: list[str]
    orbit_size: int
    isotropy: IsotropyReport


class PrimReportData(BaseModel):
    manifest: RunManifest
    field_name: str
    qmax: int
    verdict: str
    ideals: list[PrimIdealReport]


class EquidistReportData(BaseModel):
    manifest: RunManifest
    field_name: str
    ideal_label: str
    start: list[str] = Field(description="Start coordinates, exact when rational")
    csv: str | None = None
    report: EquidistReport


REPORT_MODELS: dict[str, type[BaseModel]] = {
    "field": FieldReportData,
    "units": UnitsReportData,
    "berend": BerendCertificateData,
    "orbits": OrbitCatalogData,
    "isotropy": IsotropyPointReport,
    "kms": KmsReportData,
    "prim": PrimReportData,
    "equidist": EquidistReportData,
}


def report_schema(kind: str) -> dict[str, Any]:
    """JSON schema of a report kind, tagged with the schema version."""
    model = REPORT_MODELS.get(kind)
    if model is None:
        raise ValidationFailure(
            f"unknown report kind {kind!r}; choose from {sorted(REPORT_MODELS)}"
        )
    schema = model.model_json_schema()
    schema["$id"] = f"toral-kms/{kind}/{SCHEMA_VERSION}"
    return schema
