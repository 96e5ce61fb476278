"""Task describing the field and its unit group."""

from .describe_field import build_field_report, describe_field_task, unit_group_report

__all__ = ["build_field_report", "describe_field_task", "unit_group_report"]
