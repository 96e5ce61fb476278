"""Flow modules for the toral-kms pipeline."""

from .step_01_describe_field import DescribeFieldConfig, describe_field
from .step_02_certify_berend import CertifyBerendConfig, certify_berend
from .step_03_enumerate_orbits import EnumerateOrbitsConfig, enumerate_orbits
from .step_04_assemble_kms_report import AssembleKmsReportConfig, assemble_kms_report

FLOW_CONFIGS = [
    DescribeFieldConfig,
    CertifyBerendConfig,
    EnumerateOrbitsConfig,
    AssembleKmsReportConfig,
]

FLOWS = [
    describe_field,
    certify_berend,
    enumerate_orbits,
    assemble_kms_report,
]

assert len(FLOW_CONFIGS) == len(FLOWS)

__all__ = [
    "DescribeFieldConfig",
    "describe_field",
    "CertifyBerendConfig",
    "certify_berend",
    "EnumerateOrbitsConfig",
    "enumerate_orbits",
    "AssembleKmsReportConfig",
    "assemble_kms_report",
    "FLOW_CONFIGS",
    "FLOWS",
]
