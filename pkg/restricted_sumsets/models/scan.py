"""Pydantic models describing a scan box and its instances."""

from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from restricted_sumsets.constants import (
    MAX_MODULUS,
    CoeffMode,
    GMode,
    ReportFormat,
    SetSource,
    TheoremId,
)
from restricted_sumsets.core.bounds import resolve_kind
from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.errors import SumsetError

# (exponent vector, coefficient) pairs of a sparse polynomial
TermList = tuple[tuple[tuple[int, ...], int], ...]


class ScanConfig(BaseModel):
    """Parameter box of a soundness scan."""

    theorem: TheoremId
    primes: list[int]
    ns: list[int] = Field(default_factory=lambda: [2])
    # Set sizes to enumerate; None picks every size the theorem can use
    sizes: Optional[list[int]] = None
    # Explicit sets; a single set is used as the common set
    sets: Optional[list[list[int]]] = None
    source: SetSource = SetSource.INTERVALS
    samples: int = 200
    seed: int = 0
    coeffs: CoeffMode = CoeffMode.ALL
    # Affine canonicalization of subsets, off for audit runs
    canonical_sets: bool = True
    ks: list[int] = Field(default_factory=lambda: [1])
    ms: list[int] = Field(default_factory=lambda: [1])
    degree: int = 2
    g_mode: GMode = GMode.ZERO
    jobs: int = 1
    chunk_size: int = 256
    out: Optional[Path] = None
    format: ReportFormat = ReportFormat.CSV
    progress: bool = False

    @field_validator("theorem", mode="before")
    @classmethod
    def validate_theorem(cls, v: Any) -> TheoremId:
        """Accept short ids and long-form aliases.

        Raises:
            ValueError: If the id is not in the stable list
        """
        try:
            return resolve_kind(v)
        except SumsetError as exc:
            raise ValueError(exc.message) from None

    @field_validator("primes")
    @classmethod
    def validate_primes(cls, v: list[int]) -> list[int]:
        """Every modulus must be a prime below the supported maximum.

        Raises:
            ValueError: On an empty list or a composite value
        """
        if not v:
            raise ValueError("at least one prime is needed")
        for p in v:
            try:
                PrimeModulus(p)
            except SumsetError as exc:
                raise ValueError(f"{exc.message} (max {MAX_MODULUS - 1})") from None
        return sorted(set(v))

    @field_validator("ns", "ks")
    @classmethod
    def validate_positive_list(cls, v: list[int]) -> list[int]:
        if not v or any(x < 1 for x in v):
            raise ValueError("values must be positive")
        return sorted(set(v))

    @field_validator("ms")
    @classmethod
    def validate_ms(cls, v: list[int]) -> list[int]:
        if not v or any(x < 0 for x in v):
            raise ValueError("values must be nonnegative")
        return sorted(set(v))

    @field_validator("sizes")
    @classmethod
    def validate_sizes(cls, v: Optional[list[int]]) -> Optional[list[int]]:
        if v is not None and (not v or any(x < 1 for x in v)):
            raise ValueError("set sizes must be positive")
        return sorted(set(v)) if v is not None else None

    @field_validator("jobs", "chunk_size", "samples")
    @classmethod
    def validate_count(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("degree")
    @classmethod
    def validate_degree(cls, v: int) -> int:
        if v < 0:
            raise ValueError("degree must be nonnegative")
        return v


class ScanInstance(BaseModel):
    """One fully determined instance of a scan box."""

    model_config = ConfigDict(frozen=True)

    theorem: TheoremId
    p: int
    sets: tuple[tuple[int, ...], ...]
    coeffs: tuple[int, ...]
    k: Optional[int] = None
    m: Optional[int] = None
    # Restricting polynomial P for thm1.3 and thm5.2
    poly: Optional[TermList] = None
    # Lower-order part g of the value polynomial
    g: Optional[TermList] = None
    # Coefficients of the univariate f, constant term first
    f: Optional[tuple[int, ...]] = None
    # Zero-based (i, j, S_ij) triples
    forbidden: Optional[tuple[tuple[int, int, tuple[int, ...]], ...]] = None
    index: int = 0

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    def sort_key(self) -> tuple[Any, ...]:
        """Canonical report order: p, n, sizes, coefficient class."""
        return (self.p, self.n, self.sizes, self.coeffs, self.k or 0, self.m or 0, self.index)
