"""Argument parsing and dispatch for the rsumset command line."""

import argparse
import json
import sys
from pathlib import Path
from typing import NoReturn, Optional

import structlog

from restricted_sumsets import __version__
from restricted_sumsets.commands.scan import scan_command
from restricted_sumsets.commands.single import COMMANDS, run_single
from restricted_sumsets.constants import (
    TOOL_NAME,
    CertificateKind,
    CoeffMode,
    ExitCode,
    GMode,
    ReportFormat,
    TheoremId,
)
from restricted_sumsets.errors import SumsetError, UsageError

logger = structlog.get_logger(__name__)

THEOREM_HELP = "theorem id: " + ", ".join(t.value for t in TheoremId)


def signed_hint(flag: str) -> str:
    # argparse reads "-1,2" as a flag unless it is attached with "="
    return f"; write negative values as {flag}=-1,2"


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting with status 2."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _add_family_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--p", type=int, required=True, help="prime modulus")
    parser.add_argument(
        "--sets",
        required=required,
        help='sets separated by ";": "0,1,2;0,3", "interval:4" or "full"; one set is repeated n times',
    )
    parser.add_argument("--n", type=int, help="number of summands when one set is given")
    parser.add_argument("--coeffs", help="comma separated coefficients (default all ones)" + signed_hint("--coeffs"))


def _add_restriction_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--distinct", action="store_true", help="require pairwise distinct x_i")
    group.add_argument("--collision", help="coefficients of f (constant first): f(x_i) != f(x_j)")
    group.add_argument("--forbid", help='forbidden differences "i,j=d1,d2;..." (one based)')
    group.add_argument("--poly", type=Path, help="polynomial file P: sums with P(x) != 0")


def build_parser() -> argparse.ArgumentParser:
    """Create the top-level parser with one subparser per command."""
    parser = CliArgumentParser(prog=TOOL_NAME, description="Restricted sumsets over Z/pZ")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    # ===== SUMSETS =====
    sumset = sub.add_parser("sumset", help="restricted linear sumset of explicit sets")
    _add_family_flags(sumset)
    _add_restriction_flags(sumset)

    valueset = sub.add_parser("valueset", help="value set of a_1 x_1^k + ... + a_n x_n^k + g")
    _add_family_flags(valueset)
    valueset.add_argument("--k", type=int, required=True)
    valueset.add_argument("--g", type=Path, help="polynomial file for g, deg g < k")
    valueset.add_argument("--poly", type=Path, help="polynomial file P: points with P(x) != 0")
    valueset.add_argument("--distinct", action="store_true")

    # ===== BOUNDS =====
    bound = sub.add_parser("bound", help="evaluate a bound, or check an instance given --sets")
    bound.add_argument("--theorem", required=True, help=THEOREM_HELP)
    _add_family_flags(bound, required=False)
    bound.add_argument("--sizes", help="comma separated set sizes")
    bound.add_argument("--size", type=int, help="common set size, used with --n")
    bound.add_argument("--degP", type=int, help="total degree of P")
    bound.add_argument("--exponents", help="exponents k_1..k_n of a top monomial of P")
    bound.add_argument("--m", help="deg f, m, or m_1..m_n depending on the theorem" + signed_hint("--m"))
    bound.add_argument("--k", type=int, help="power k of value-set theorems")
    bound.add_argument("--collision", help="coefficients of f for cor1.2f")
    bound.add_argument("--forbid", help="forbidden differences for cor1.2d and cor1.3")
    bound.add_argument("--poly", type=Path, help="polynomial file P for thm1.3 and thm5.2")
    bound.add_argument("--g", type=Path, help="polynomial file g for value-set theorems")

    # ===== WITNESSES =====
    witness = sub.add_parser("witness", help="witness vector m for the alternating sum")
    witness.add_argument("--p", type=int, required=True)
    witness.add_argument("--k", required=True, help="comma separated k_1..k_n")
    witness.add_argument("--coeffs", required=True, help="comma separated a_1..a_n" + signed_hint("--coeffs"))
    witness.add_argument("--strict", action="store_true", help="only the pair (1, 2) may cancel")
    witness.add_argument("--method", choices=["both", "recursive", "bruteforce"], default="both")

    cn = sub.add_parser("cn-witness", help="grid point where P does not vanish")
    cn.add_argument("--poly", type=Path, required=True)
    cn.add_argument("--sets", required=True)

    # ===== IDENTITIES =====
    dyson = sub.add_parser("dyson", help="constant-term coefficient against its closed form")
    dyson.add_argument("--m", required=True, help="comma separated m_1..m_n, or m with --sy" + signed_hint("--m"))
    dyson.add_argument("--sy", action="store_true", help="the product over (x_j - x_i)^(2m-1)")
    dyson.add_argument("--n", type=int, help="number of variables with --sy")
    dyson.add_argument("--p", type=int, help="also expand over Z/pZ")

    lemma = sub.add_parser("lemma51", help="both sides of the floor-sum identity")
    lemma.add_argument("--m", type=int, required=True, help="any integer" + signed_hint("--m"))
    lemma.add_argument("--n", type=int, required=True)
    lemma.add_argument("--k", type=int, required=True)

    certificate = sub.add_parser("certificate", help="both sides of a coefficient identity")
    certificate.add_argument("--kind", choices=[k.value for k in CertificateKind], required=True)
    certificate.add_argument("--p", type=int)
    certificate.add_argument("--sizes")
    certificate.add_argument("--coeffs")
    certificate.add_argument("--poly", type=Path)
    certificate.add_argument("--m", help="witness m (thm_1_2, optional) or exponents m (thm_1_3)")

    # ===== SCANS =====
    scan = sub.add_parser("scan", help="soundness scan over a parameter box")
    scan.add_argument("--theorem", required=True, help=THEOREM_HELP)
    scan.add_argument("--p", required=True, help="comma separated primes")
    scan.add_argument("--n", help='number of summands, "2" or "2..3"')
    scan.add_argument("--sizes", help='set sizes, "1..5" or "3,4"')
    scan.add_argument("--sets", help="explicit sets instead of an enumerated box")
    scan.add_argument("--all-subsets", action="store_true", help="every subset of Z/pZ")
    scan.add_argument("--samples", type=int, help="seeded random instances per (p, n)")
    scan.add_argument("--seed", type=int)
    scan.add_argument("--no-canonical-sets", action="store_true", help="disable affine canonicalization")
    scan.add_argument("--coeffs", choices=[c.value for c in CoeffMode], default=CoeffMode.ALL.value)
    scan.add_argument("--k", help='powers k, "1..3"')
    scan.add_argument("--m", help='values of m, "1..2"')
    scan.add_argument("--deg", type=int, default=2, help="maximal degree of random P")
    scan.add_argument("--g", choices=[g.value for g in GMode], default=GMode.ZERO.value)
    scan.add_argument("--jobs", type=int)
    scan.add_argument("--chunk-size", type=int)
    scan.add_argument("--out", type=Path)
    scan.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.CSV.value)
    scan.add_argument("--progress", action="store_true")
    return parser


def _fail(message: str) -> int:
    print(f"{TOOL_NAME}: error: {message}", file=sys.stderr)
    return ExitCode.ERROR


def dispatch(argv: Optional[list[str]] = None) -> int:
    """Parse argv, run the command and return the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "scan":
            summary = scan_command(args)
            return ExitCode.VIOLATIONS if summary.violated else ExitCode.OK
        if args.command not in COMMANDS:
            raise UsageError(f"unknown command {args.command}")
        record = run_single(args)
    except SumsetError as exc:
        logger.debug("command_failed", error=exc.message, context=exc.context)
        return _fail(exc.message)
    except ZeroDivisionError as exc:
        return _fail(str(exc))
    print(json.dumps(record))
    return ExitCode.OK
