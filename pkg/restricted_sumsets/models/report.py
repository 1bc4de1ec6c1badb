"""Pydantic models for bound reports and scan summaries."""

from typing import Any, Optional

from pydantic import BaseModel, Field, computed_field

from restricted_sumsets.constants import Restriction, Status, TheoremId


class BoundReport(BaseModel):
    """Outcome of checking one instance against one bound."""

    theorem: TheoremId
    p: int
    n: int
    sizes: list[int]
    coeffs: list[int]
    restriction: Restriction
    card: int
    # None when the statement's hypotheses fail on the instance
    bound: Optional[int] = None
    status: Status
    k: Optional[int] = None
    alt_bound: Optional[int] = None
    sets: list[list[int]] = Field(default_factory=list)
    # Restriction data needed to re-check the instance (f, S_ij, P, g, m)
    details: dict[str, Any] = Field(default_factory=dict)
    reason: Optional[str] = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def slack(self) -> Optional[int]:
        if self.bound is None:
            return None
        return self.card - self.bound

    @computed_field  # type: ignore[prop-decorator]
    @property
    def alt_violated(self) -> bool:
        return self.alt_bound is not None and self.card < self.alt_bound


class ScanSummary(BaseModel):
    """Aggregate counts of a scan run."""

    theorem: TheoremId
    instances: int = 0
    holds: int = 0
    violated: int = 0
    vacuous: int = 0
    min_slack: Optional[int] = None
    alt_violated: int = 0
    violations: list[BoundReport] = Field(default_factory=list)

    def add(self, report: BoundReport) -> None:
        """Fold one report into the counts."""
        self.instances += 1
        if report.status is Status.HOLDS:
            self.holds += 1
        elif report.status is Status.VIOLATED:
            self.violated += 1
            self.violations.append(report)
        else:
            self.vacuous += 1
        slack = report.slack
        if slack is not None and (self.min_slack is None or slack < self.min_slack):
            self.min_slack = slack
        if report.alt_violated:
            self.alt_violated += 1
