"""Enumeration, evaluation and scanning services."""

from restricted_sumsets.services.evaluation import InstanceEvaluator, evaluate_instance
from restricted_sumsets.services.registry import THEOREMS, TheoremSpec, get_theorem_spec
from restricted_sumsets.services.scan_service import ScanService, get_scan_service

__all__ = [
    "THEOREMS",
    "InstanceEvaluator",
    "ScanService",
    "TheoremSpec",
    "evaluate_instance",
    "get_scan_service",
    "get_theorem_spec",
]
