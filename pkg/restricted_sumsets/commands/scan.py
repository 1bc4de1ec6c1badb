"""The scan subcommand: soundness scans over a parameter box."""

import argparse
import json
import sys
from contextlib import ExitStack
from typing import Optional

import structlog
from pydantic import ValidationError

from restricted_sumsets.config import get_settings
from restricted_sumsets.constants import SetSource
from restricted_sumsets.errors import UsageError
from restricted_sumsets.models.report import ScanSummary
from restricted_sumsets.models.scan import ScanConfig
from restricted_sumsets.parsers.family_parser import FamilyParser
from restricted_sumsets.services.scan_service import ScanService, get_scan_service

logger = structlog.get_logger(__name__)


def _optional_range(text: Optional[str], flag: str) -> Optional[list[int]]:
    return FamilyParser.parse_range(text, flag) if text is not None else None


def config_from_args(args: argparse.Namespace) -> ScanConfig:
    """Build and validate the scan box described by the flags.

    Raises:
        UsageError: If the flags describe an invalid box
    """
    settings = get_settings()
    if args.all_subsets and args.samples is not None:
        raise UsageError("--all-subsets and --samples are mutually exclusive")
    source = SetSource.INTERVALS
    if args.all_subsets:
        source = SetSource.ALL_SUBSETS
    elif args.samples is not None:
        source = SetSource.RANDOM
    sets = None
    if args.sets is not None:
        sets = [
            FamilyParser.parse_int_list(part, "--sets") for part in args.sets.split(";") if part.strip()
        ]
    values = {
        "theorem": args.theorem,
        "primes": FamilyParser.parse_int_list(args.p, "--p"),
        "ns": _optional_range(args.n, "--n") or [2],
        "sizes": _optional_range(args.sizes, "--sizes"),
        "sets": sets,
        "source": source,
        "samples": args.samples or settings.default_samples,
        "seed": args.seed if args.seed is not None else settings.default_seed,
        "coeffs": args.coeffs,
        "canonical_sets": not args.no_canonical_sets,
        "ks": _optional_range(args.k, "--k") or [1],
        "ms": _optional_range(args.m, "--m") or [1],
        "degree": args.deg,
        "g_mode": args.g,
        "jobs": args.jobs or settings.default_jobs,
        "chunk_size": args.chunk_size or settings.scan_chunk_size,
        "out": args.out,
        "format": args.format,
        "progress": args.progress,
    }
    try:
        return ScanConfig(**values)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise UsageError(f"invalid scan option {field}: {first['msg']}") from exc


def run_scan(config: ScanConfig, service: Optional[ScanService] = None) -> ScanSummary:
    """Run a scan, writing reports to config.out or stdout.

    Raises:
        UsageError: If the output path cannot be opened
    """
    service = service or get_scan_service()
    with ExitStack() as stack:
        if config.out is None:
            sink = sys.stdout
        else:
            try:
                sink = stack.enter_context(config.out.open("w", encoding="utf-8", newline=""))
            except OSError as exc:
                raise UsageError(f"--out: cannot write {config.out}: {exc.strerror}") from exc
        summary = service.run(config, sink)
    for report in summary.violations:
        logger.warning(
            "violation",
            theorem=str(report.theorem),
            p=report.p,
            sets=report.sets,
            coeffs=report.coeffs,
            card=report.card,
            bound=report.bound,
        )
    return summary


def scan_command(args: argparse.Namespace) -> ScanSummary:
    summary = run_scan(config_from_args(args))
    # The summary goes to stderr so the report stream stays clean
    print(json.dumps(summary.model_dump(mode="json")), file=sys.stderr)
    return summary
