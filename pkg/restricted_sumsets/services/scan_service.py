"""Parallel soundness scans over a parameter box."""

import multiprocessing
import sys
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor, as_completed
from typing import Optional, TextIO

import structlog
from tqdm import tqdm

from restricted_sumsets.config import Settings, get_settings
from restricted_sumsets.mappers.report_mapper import ReportMapper
from restricted_sumsets.models.report import BoundReport, ScanSummary
from restricted_sumsets.models.scan import ScanConfig, ScanInstance
from restricted_sumsets.services.enumeration import generate_instances
from restricted_sumsets.services.evaluation import evaluate_chunk

logger = structlog.get_logger(__name__)


def _make_executor(max_workers: int) -> Executor:
    """Process pool on the fork context, threads where fork is unavailable."""
    try:
        ctx = multiprocessing.get_context("fork")
        return ProcessPoolExecutor(max_workers=max_workers, mp_context=ctx)
    except (ValueError, OSError) as exc:
        logger.info("process_pool_unavailable", error=str(exc))
        return ThreadPoolExecutor(max_workers=max_workers)


class ScanService:
    """Runs scans and writes their reports in canonical order."""

    def __init__(self, settings: Optional[Settings] = None) -> None:
        """Initialize the scan service.

        Args:
            settings: Toolkit settings
        """
        self._settings = settings or get_settings()

    def _chunks(self, instances: list[ScanInstance], size: int) -> list[list[ScanInstance]]:
        return [instances[i : i + size] for i in range(0, len(instances), size)]

    def evaluate(self, config: ScanConfig) -> list[BoundReport]:
        """Evaluate every instance of the box.

        Instances are sorted before they are split into chunks and the chunk
        results are reassembled by position, so the output does not depend on
        the job count or on scheduling.

        Args:
            config: The scan box

        Returns:
            One report per instance, in canonical order
        """
        instances = sorted(generate_instances(config), key=ScanInstance.sort_key)
        chunks = self._chunks(instances, config.chunk_size)
        show = config.progress or self._settings.show_progress
        results: list[Optional[list[BoundReport]]] = [None] * len(chunks)

        if config.jobs == 1 or len(chunks) <= 1:
            for index, chunk in enumerate(tqdm(chunks, desc="Scanning", disable=not show, file=sys.stderr)):
                results[index] = evaluate_chunk(chunk)
        else:
            with _make_executor(config.jobs) as executor:
                futures = {executor.submit(evaluate_chunk, chunk): index for index, chunk in enumerate(chunks)}
                with tqdm(total=len(futures), desc="Scanning", disable=not show, file=sys.stderr) as pbar:
                    for future in as_completed(futures):
                        results[futures[future]] = future.result()
                        pbar.update(1)

        return [report for chunk_reports in results if chunk_reports for report in chunk_reports]

    def run(self, config: ScanConfig, sink: TextIO) -> ScanSummary:
        """Run the scan, stream reports to sink and summarise them."""
        logger.info(
            "scan_started",
            theorem=str(config.theorem),
            primes=config.primes,
            jobs=config.jobs,
        )
        reports = self.evaluate(config)
        ReportMapper.write(reports, sink, config.format)
        summary = ScanSummary(theorem=config.theorem)
        for report in reports:
            summary.add(report)
        logger.info(
            "scan_finished",
            theorem=str(config.theorem),
            instances=summary.instances,
            violated=summary.violated,
            vacuous=summary.vacuous,
        )
        return summary


# Singleton instance
_scan_service: Optional[ScanService] = None


def get_scan_service() -> ScanService:
    """Get the scan service singleton."""
    global _scan_service
    if _scan_service is None:
        _scan_service = ScanService()
    return _scan_service
