"""Task assembling the extremal KMS catalog."""

from .assemble_kms_report import (
    assemble_kms_report_task,
    build_kms_report,
    build_prim_report,
    check_orbit_counts,
)

__all__ = [
    "assemble_kms_report_task",
    "build_kms_report",
    "build_prim_report",
    "check_orbit_counts",
]
