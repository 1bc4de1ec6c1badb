"""Exception hierarchy for the restricted sumset toolkit."""

from typing import Any, Optional


class SumsetError(Exception):
    """Base exception for every toolkit error."""

    def __init__(self, message: str, context: Optional[dict[str, Any]] = None):
        self.message = message
        self.context = context or {}
        super().__init__(message)


class ModulusError(SumsetError):
    """Composite, oversized or mismatched modulus."""

    pass


class ArityError(SumsetError):
    """Arity or ring mismatch between operands."""

    pass


class PreconditionError(SumsetError):
    """Hypotheses of a cited statement do not hold for the instance."""

    pass


class ExpansionLimitError(SumsetError):
    """Polynomial expansion or evaluation grid exceeds the configured cap."""

    pass


class WitnessNotFoundError(SumsetError):
    """No witness vector exists under the supplied parameters."""

    pass


class WitnessDisagreementError(SumsetError):
    """Recursive and brute-force witness searches disagree on existence."""

    pass


class ParseError(SumsetError):
    """Malformed text input (set family, coefficient list, polynomial file)."""

    def __init__(
        self,
        message: str,
        flag: Optional[str] = None,
        line: Optional[int] = None,
    ):
        self.flag = flag
        self.line = line
        context: dict[str, Any] = {}
        if flag is not None:
            context["flag"] = flag
        if line is not None:
            context["line"] = line
        super().__init__(message, context)


class UsageError(SumsetError):
    """Invalid combination of command line options."""

    pass
