"""Pydantic models for scan configuration and reports."""

from restricted_sumsets.models.report import BoundReport, ScanSummary
from restricted_sumsets.models.scan import ScanConfig, ScanInstance, TermList

__all__ = ["BoundReport", "ScanConfig", "ScanInstance", "ScanSummary", "TermList"]
