"""Flow documents of the toral-kms pipeline."""

from .berend_certificate import BerendCertificateData, BerendCertificateDocument
from .field_report import FieldReportData, FieldReportDocument
from .field_spec_input import FieldSpecData, FieldSpecInputDocument
from .kms_report import KmsReportData, KmsReportDocument
from .orbit_catalog import OrbitCatalogData, OrbitCatalogDocument

__all__ = [
    "BerendCertificateData",
    "BerendCertificateDocument",
    "FieldReportData",
    "FieldReportDocument",
    "FieldSpecData",
    "FieldSpecInputDocument",
    "KmsReportData",
    "KmsReportDocument",
    "OrbitCatalogData",
    "OrbitCatalogDocument",
]
