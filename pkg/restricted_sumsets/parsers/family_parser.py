"""Parsers for set families, coefficient lists, ranges and restrictions."""

from typing import Optional

from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.core.sumset import CoefficientVector, Difference, SetFamily
from restricted_sumsets.errors import ParseError, SumsetError
from restricted_sumsets.parsers.patterns import (
    EMPTY_SET,
    FORBIDDEN_DIFFERENCES,
    FULL_SET,
    INTEGER_LIST,
    INTEGER_RANGE,
    INTERVAL_SET,
    SET_SEPARATOR,
)


class FamilyParser:
    """Parser for the set and coefficient syntax used on the command line."""

    @classmethod
    def parse_int_list(cls, text: str, flag: str) -> list[int]:
        """Parse "1,2,3" into integers.

        Args:
            text: The raw flag value
            flag: Flag name, used in error messages

        Returns:
            The integers in input order

        Raises:
            ParseError: If the text is not a comma separated integer list
        """
        if not INTEGER_LIST.match(text):
            raise ParseError(f"{flag}: expected comma separated integers, got {text!r}", flag=flag)
        return [int(part) for part in text.split(",")]

    @classmethod
    def parse_range(cls, text: str, flag: str) -> list[int]:
        """Parse "lo..hi" (inclusive) or an explicit integer list."""
        match = INTEGER_RANGE.match(text)
        if match:
            low, high = int(match.group(1)), int(match.group(2))
            if low > high:
                raise ParseError(f"{flag}: empty range {text!r}", flag=flag)
            return list(range(low, high + 1))
        return cls.parse_int_list(text, flag)

    @classmethod
    def parse_set(cls, text: str, modulus: PrimeModulus, flag: str) -> list[int]:
        """Parse one set: residues, interval:m or full."""
        if FULL_SET.match(text):
            return list(range(modulus.p))
        match = INTERVAL_SET.match(text)
        if match:
            size = int(match.group(1))
            if not 1 <= size <= modulus.p:
                raise ParseError(
                    f"{flag}: interval size must lie in [1, {modulus.p}], got {size}", flag=flag
                )
            return list(range(size))
        if EMPTY_SET.match(text):
            raise ParseError(f"{flag}: sets must be nonempty", flag=flag)
        return sorted({v % modulus.p for v in cls.parse_int_list(text, flag)})

    @classmethod
    def parse_family(
        cls, text: str, modulus: PrimeModulus, n: Optional[int] = None, flag: str = "--sets"
    ) -> SetFamily:
        """Parse "0,1,2;0,1,3" into a SetFamily.

        A single set is repeated n times when n is given.

        Raises:
            ParseError: On malformed text or a set count different from n
        """
        parts = [part for part in SET_SEPARATOR.split(text.strip()) if part]
        if not parts:
            raise ParseError(f"{flag}: no sets given", flag=flag)
        sets = [cls.parse_set(part, modulus, flag) for part in parts]
        if n is not None:
            if len(sets) == 1:
                sets = sets * n
            elif len(sets) != n:
                raise ParseError(f"{flag}: expected {n} sets, got {len(sets)}", flag=flag)
        return SetFamily(modulus, tuple(tuple(s) for s in sets))

    @classmethod
    def parse_coefficients(
        cls, text: str, modulus: PrimeModulus, n: Optional[int] = None, flag: str = "--coeffs"
    ) -> CoefficientVector:
        coeffs = cls.parse_int_list(text, flag)
        if n is not None and len(coeffs) != n:
            if len(coeffs) != 1:
                raise ParseError(f"{flag}: expected {n} coefficients, got {len(coeffs)}", flag=flag)
            coeffs = coeffs * n
        try:
            return CoefficientVector(modulus, tuple(coeffs))
        except SumsetError as exc:
            raise ParseError(f"{flag}: {exc.message}", flag=flag) from exc

    @classmethod
    def parse_forbidden(
        cls, text: str, modulus: PrimeModulus, n: int, flag: str = "--forbid"
    ) -> Difference:
        """Parse "1,2=0,3;2,1=1" into a difference restriction.

        Pairs are one based; "i,j=d1,d2" forbids x_i - x_j in {d1, d2}.
        """
        forbidden: dict[tuple[int, int], list[int]] = {}
        for part in SET_SEPARATOR.split(text.strip()):
            if not part:
                continue
            match = FORBIDDEN_DIFFERENCES.match(part)
            if not match:
                raise ParseError(f"{flag}: expected 'i,j=d1,d2', got {part!r}", flag=flag)
            i, j = int(match.group(1)) - 1, int(match.group(2)) - 1
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ParseError(f"{flag}: invalid index pair in {part!r}", flag=flag)
            values = [int(v) for v in match.group(3).split(",")]
            forbidden.setdefault((i, j), []).extend(values)
        return Difference(forbidden, modulus)
