"""Common formatting utilities for report output."""

from collections.abc import Iterable
from typing import Optional


def join_ints(values: Iterable[int]) -> str:
    """Comma-join integers without spaces.

    Args:
        values: Integers to join

    Returns:
        The joined string, empty for no values
    """
    return ",".join(str(v) for v in values)


def optional_int(value: Optional[int]) -> str:
    """Render an optional integer as a CSV cell; None becomes the empty string."""
    return "" if value is None else str(value)
