"""Mapper for turning bound reports into CSV rows and JSON lines."""

import csv
from collections.abc import Iterable
from typing import TextIO

from restricted_sumsets.constants import CSV_COLUMNS, ReportFormat
from restricted_sumsets.mappers.common import join_ints, optional_int
from restricted_sumsets.models.report import BoundReport


class ReportMapper:
    """Maps BoundReports to the report stream formats."""

    @staticmethod
    def to_row(report: BoundReport) -> list[str]:
        """Map a report to CSV cells in column order.

        Args:
            report: The report to map

        Returns:
            One cell per entry of CSV_COLUMNS
        """
        return [
            str(report.theorem),
            str(report.p),
            str(report.n),
            join_ints(report.sizes),
            join_ints(report.coeffs),
            str(report.restriction),
            str(report.card),
            optional_int(report.bound),
            optional_int(report.slack),
            str(report.status),
        ]

    @staticmethod
    def to_jsonl(report: BoundReport) -> str:
        return report.model_dump_json()

    @classmethod
    def write(cls, reports: Iterable[BoundReport], sink: TextIO, fmt: ReportFormat) -> int:
        """Write reports to sink, header first for CSV.

        Returns:
            Number of reports written
        """
        count = 0
        if fmt is ReportFormat.CSV:
            writer = csv.writer(sink, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for report in reports:
                writer.writerow(cls.to_row(report))
                count += 1
        else:
            for report in reports:
                sink.write(cls.to_jsonl(report) + "\n")
                count += 1
        return count
