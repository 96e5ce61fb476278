"""Report models, flow documents and canonical serialization."""

from .flow.berend_certificate import BerendCertificateData, BerendCertificateDocument
from .flow.field_report import FieldReportData, FieldReportDocument
from .flow.field_spec_input import FieldSpecData, FieldSpecInputDocument
from .flow.kms_report import KmsReportData, KmsReportDocument
from .flow.orbit_catalog import OrbitCatalogData, OrbitCatalogDocument
from .manifest import SCHEMA_VERSION, RunManifest, build_manifest, canonical_json
from .reports import (
    REPORT_MODELS,
    EquidistReportData,
    IsotropyPointReport,
    PrimReportData,
    ReportKind,
    UnitsReportData,
    report_schema,
)

__all__ = [
    "REPORT_MODELS",
    "SCHEMA_VERSION",
    "BerendCertificateData",
    "BerendCertificateDocument",
    "EquidistReportData",
    "FieldReportData",
    "FieldReportDocument",
    "FieldSpecData",
    "FieldSpecInputDocument",
    "IsotropyPointReport",
    "KmsReportData",
    "KmsReportDocument",
    "OrbitCatalogData",
    "OrbitCatalogDocument",
    "PrimReportData",
    "ReportKind",
    "RunManifest",
    "UnitsReportData",
    "build_manifest",
    "canonical_json",
    "report_schema",
]
