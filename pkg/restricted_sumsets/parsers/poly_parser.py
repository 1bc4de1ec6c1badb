"""Reader and writer for the polynomial text format.

A file starts with a header line "arity n mod p" ("mod 0" for exact
integers) followed by one term per line, "c j1 j2 ... jn". Blank lines and
"#" comments are ignored and repeated exponent vectors are summed.
"""

from pathlib import Path
from typing import Optional

import structlog

from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.core.poly import ExponentVector, SparsePolynomial
from restricted_sumsets.errors import ParseError, SumsetError
from restricted_sumsets.parsers.patterns import COMMENT, POLY_HEADER, POLY_TERM

logger = structlog.get_logger(__name__)


class PolynomialParser:
    """Parser for sparse polynomials in the line-per-term text format."""

    @classmethod
    def parse(cls, text: str, flag: str = "--poly") -> SparsePolynomial:
        """Parse polynomial text.

        Args:
            text: File contents
            flag: Flag name, used in error messages

        Returns:
            The polynomial in canonical form

        Raises:
            ParseError: On a missing header, a malformed term or a bad modulus
        """
        arity: Optional[int] = None
        modulus: Optional[PrimeModulus] = None
        terms: dict[ExponentVector, int] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = COMMENT.sub("", raw).strip()
            if not line:
                continue
            if arity is None:
                header = POLY_HEADER.match(line)
                if not header:
                    raise ParseError(
                        f"{flag}: line {number}: expected 'arity n mod p'", flag=flag, line=number
                    )
                arity = int(header.group(1))
                p = int(header.group(2))
                if arity < 1:
                    raise ParseError(f"{flag}: arity must be positive", flag=flag, line=number)
                if p:
                    try:
                        modulus = PrimeModulus(p)
                    except SumsetError as exc:
                        raise ParseError(f"{flag}: {exc.message}", flag=flag, line=number) from exc
                continue
            term = POLY_TERM.match(line)
            if not term:
                raise ParseError(
                    f"{flag}: line {number}: expected 'c j1 ... jn'", flag=flag, line=number
                )
            exponents = tuple(int(j) for j in term.group(2).split())
            if len(exponents) != arity:
                raise ParseError(
                    f"{flag}: line {number}: {len(exponents)} exponents for arity {arity}",
                    flag=flag,
                    line=number,
                )
            terms[exponents] = terms.get(exponents, 0) + int(term.group(1))
        if arity is None:
            raise ParseError(f"{flag}: empty polynomial file", flag=flag)
        poly = SparsePolynomial(arity, terms, modulus)
        logger.debug("polynomial_parsed", arity=arity, p=poly.p, terms=len(poly))
        return poly

    @classmethod
    def parse_file(cls, path: Path, flag: str = "--poly") -> SparsePolynomial:
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"{flag}: cannot read {path}: {exc.strerror}", flag=flag) from exc
        return cls.parse(text, flag)

    @classmethod
    def format(cls, poly: SparsePolynomial) -> str:
        """Render a polynomial in the text format (signed residues)."""
        lines = [f"arity {poly.arity} mod {poly.p}"]
        for exponents, coeff in poly.signed_terms().items():
            lines.append(" ".join(str(v) for v in (coeff, *exponents)))
        return "\n".join(lines) + "\n"
