"""Mappers from reports to output formats."""

from restricted_sumsets.mappers.report_mapper import ReportMapper

__all__ = ["ReportMapper"]
