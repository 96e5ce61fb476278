"""Tasks for the toral-kms pipeline."""

from .assemble_kms_report.assemble_kms_report import assemble_kms_report_task
from .certify_berend.certify_berend import certify_berend_task
from .describe_field.describe_field import describe_field_task
from .enumerate_orbits.enumerate_orbits import enumerate_orbits_task

__all__ = [
    # Field
    "describe_field_task",
    # ID verdict
    "certify_berend_task",
    # Orbits
    "enumerate_orbits_task",
    # KMS catalog
    "assemble_kms_report_task",
]
