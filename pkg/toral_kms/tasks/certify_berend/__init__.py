"""Task certifying the ID verdict."""

from .certify_berend import build_berend_certificate, certify_berend_task

__all__ = ["build_berend_certificate", "certify_berend_task"]
