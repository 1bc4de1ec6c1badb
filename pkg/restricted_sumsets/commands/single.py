"""One-shot subcommands: each prints a single JSON record.

Handles:
- sumset      - restricted linear sumsets and P-restricted sums
- valueset    - value sets of a_1 x_1^k + ... + a_n x_n^k + g
- bound       - bound formulas, or a full check when sets are given
- witness     - witness vectors for the alternating sum
- cn-witness  - a non-vanishing grid point of P
- dyson       - constant-term coefficients against their closed forms
- lemma51     - both sides of the floor-sum identity
- certificate - both sides of the coefficient identities
"""

import argparse
from collections.abc import Callable
from math import comb
from pathlib import Path
from typing import Any, Optional

import structlog

from restricted_sumsets.constants import CertificateKind, TheoremId
from restricted_sumsets.core import bounds, dyson
from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.core.poly import SparsePolynomial
from restricted_sumsets.core.sumset import (
    DISTINCT,
    PairRestriction,
    SetFamily,
    ValueCollision,
    ValuePolynomial,
    linear_sumset,
    polynomial_restricted_sumset,
    restricted_linear_sumset,
    restricted_value_set,
)
from restricted_sumsets.core.witness import (
    DistinctSumCertificate,
    PolynomialCertificate,
    certificate_check,
    cn_witness_search,
    delta_indicator,
    f_eval,
    find_witness,
    find_witness_bruteforce,
    find_witness_recursive,
    nullstellensatz_exponents,
    pairing_permutation,
    witness_conditions,
)
from restricted_sumsets.errors import (
    ParseError,
    PreconditionError,
    SumsetError,
    UsageError,
    WitnessNotFoundError,
)
from restricted_sumsets.models.scan import ScanInstance
from restricted_sumsets.parsers.family_parser import FamilyParser
from restricted_sumsets.parsers.poly_parser import PolynomialParser
from restricted_sumsets.services.evaluation import evaluate_instance
from restricted_sumsets.services.registry import get_theorem_spec

logger = structlog.get_logger(__name__)

Record = dict[str, Any]

CLASSICAL = frozenset(
    {TheoremId.CAUCHY_DAVENPORT, TheoremId.DIAS_DA_SILVA_HAMIDOUNE, TheoremId.ALON_NATHANSON_RUZSA}
)
DISTINCT_LINEAR = frozenset(
    {TheoremId.CONJ_1_1, TheoremId.THM_1_1, TheoremId.THM_1_2, TheoremId.EQ_1_8, TheoremId.COR_1_1}
)


# ===== FLAG HELPERS =====
def _modulus(p: int, flag: str = "--p") -> PrimeModulus:
    try:
        return PrimeModulus(p)
    except SumsetError as exc:
        raise UsageError(f"{flag}: {exc.message}") from exc


def _polynomial(path: Path, modulus: Optional[PrimeModulus], n: Optional[int], flag: str) -> SparsePolynomial:
    """Read a polynomial file and check it against the field and arity in use."""
    poly = PolynomialParser.parse_file(path, flag)
    if modulus is not None and poly.p != modulus.p:
        raise ParseError(f"{flag}: polynomial is over mod {poly.p}, expected mod {modulus.p}", flag=flag)
    if n is not None and poly.arity != n:
        raise ParseError(f"{flag}: polynomial arity {poly.arity} does not match n = {n}", flag=flag)
    return poly


def _pair_restriction(args: argparse.Namespace, modulus: PrimeModulus, n: int) -> Optional[PairRestriction]:
    if args.distinct:
        return DISTINCT
    if args.collision:
        return ValueCollision(FamilyParser.parse_int_list(args.collision, "--collision"), modulus)
    if args.forbid:
        return FamilyParser.parse_forbidden(args.forbid, modulus, n)
    return None


def _family_record(family: SetFamily) -> Record:
    return {"p": family.modulus.p, "n": family.n, "sets": [list(s) for s in family.sets]}


# ===== SUMSETS =====
def sumset_command(args: argparse.Namespace) -> Record:
    """Restricted linear sumset of an explicit family."""
    modulus = _modulus(args.p)
    family = FamilyParser.parse_family(args.sets, modulus, args.n)
    record = _family_record(family)
    if args.poly is not None:
        if args.coeffs is not None:
            raise UsageError("--poly restricts plain sums x_1 + ... + x_n; drop --coeffs")
        poly = _polynomial(args.poly, modulus, family.n, "--poly")
        result = polynomial_restricted_sumset(family, poly)
        record["restriction"] = "poly"
    else:
        a = FamilyParser.parse_coefficients(args.coeffs or "1", modulus, family.n)
        restriction = _pair_restriction(args, modulus, family.n)
        if restriction is None:
            result = linear_sumset(a, family)
            record["restriction"] = "none"
        else:
            result = restricted_linear_sumset(a, family, restriction=restriction)
            record["restriction"] = restriction.describe()
        record["coeffs"] = list(a)
    record["set"] = result.elements()
    record["card"] = len(result)
    return record


def valueset_command(args: argparse.Namespace) -> Record:
    """Value set of a_1 x_1^k + ... + a_n x_n^k + g over an explicit family."""
    modulus = _modulus(args.p)
    family = FamilyParser.parse_family(args.sets, modulus, args.n)
    a = FamilyParser.parse_coefficients(args.coeffs or "1", modulus, family.n)
    g = (
        _polynomial(args.g, modulus, family.n, "--g")
        if args.g is not None
        else SparsePolynomial.zero(family.n, modulus)
    )
    poly = _polynomial(args.poly, modulus, family.n, "--poly") if args.poly is not None else None
    f = ValuePolynomial(args.k, a, g)
    result = restricted_value_set(f, family, poly=poly, distinct=args.distinct)
    record = _family_record(family)
    record.update(
        {
            "k": args.k,
            "coeffs": list(a),
            "distinct": args.distinct,
            "set": result.elements(),
            "card": len(result),
        }
    )
    return record


# ===== BOUNDS =====
def _parse_m(text: Optional[str]) -> Optional[list[int]]:
    return FamilyParser.parse_int_list(text, "--m") if text is not None else None


def _sizes(args: argparse.Namespace) -> list[int]:
    if args.sizes is not None:
        sizes = FamilyParser.parse_int_list(args.sizes, "--sizes")
        if args.n is not None and len(sizes) == 1:
            sizes = sizes * args.n
        return sizes
    if args.size is not None and args.n is not None:
        return [args.size] * args.n
    raise UsageError("bound needs --sizes, --size with --n, or --sets")


def _formula_bound(args: argparse.Namespace, theorem: TheoremId, modulus: PrimeModulus) -> Record:
    p = modulus.p
    sizes = _sizes(args)
    n = len(sizes)
    coeffs = list(FamilyParser.parse_coefficients(args.coeffs or "1", modulus, n))
    exponents = FamilyParser.parse_int_list(args.exponents, "--exponents") if args.exponents else None
    m = _parse_m(args.m)
    spec = get_theorem_spec(theorem)
    record: Record = {"theorem": str(theorem), "p": p, "n": n, "sizes": sizes, "coeffs": coeffs}
    try:
        if theorem in CLASSICAL:
            bound = bounds.classical_bound(theorem, p, sizes, n)
        elif theorem in DISTINCT_LINEAR:
            bound = bounds.linear_restricted_bound(theorem, p, n, sizes, coeffs)
            if theorem is TheoremId.THM_1_2:
                record["alt_bound"] = bounds.thm_1_2_bound(p, sizes, coeffs, proof_penalty=True)
        elif spec.value_set:
            if args.k is None:
                raise UsageError(f"--k is required for {theorem}")
            record["k"] = args.k
            bound = bounds.value_set_bound(theorem, p, sizes, args.k, exponents, coeffs)
        else:
            m_value: Any = m if theorem is TheoremId.COR_1_3 or m is None else m[0]
            bound = bounds.polynomial_restricted_bound(
                theorem, p, sizes, degree=args.degP, exponents=exponents, m=m_value
            )
    except PreconditionError as exc:
        record.update({"bound": None, "status": "vacuous", "reason": exc.message})
        return record
    record["bound"] = bound
    return record


def _instance_from_flags(args: argparse.Namespace, theorem: TheoremId, modulus: PrimeModulus) -> ScanInstance:
    """Build the scan instance described by explicit sets and restriction flags."""
    spec = get_theorem_spec(theorem)
    family = FamilyParser.parse_family(args.sets, modulus, args.n)
    n = family.n
    a = FamilyParser.parse_coefficients(args.coeffs or "1", modulus, n)
    m = _parse_m(args.m)
    extra: dict[str, Any] = {}
    if spec.value_set:
        if args.k is None:
            raise UsageError(f"--k is required for {theorem}")
        extra["k"] = args.k
        if args.g is not None:
            g = _polynomial(args.g, modulus, n, "--g")
            extra["g"] = tuple(sorted(g.terms.items()))
    if spec.uses_poly:
        if args.poly is None:
            raise UsageError(f"--poly is required for {theorem}")
        poly = _polynomial(args.poly, modulus, n, "--poly")
        extra["poly"] = tuple(sorted(poly.terms.items()))
    if theorem is TheoremId.COR_1_2_F:
        if args.collision is None:
            raise UsageError("--collision is required for cor1.2f")
        extra["f"] = tuple(FamilyParser.parse_int_list(args.collision, "--collision"))
    if theorem in (TheoremId.COR_1_2_DIFF, TheoremId.COR_1_3):
        if args.forbid is None:
            raise UsageError(f"--forbid is required for {theorem}")
        restriction = FamilyParser.parse_forbidden(args.forbid, modulus, n)
        extra["forbidden"] = tuple(
            (i, j, tuple(sorted(s))) for (i, j), s in sorted(restriction.forbidden.items())
        )
        if theorem is TheoremId.COR_1_2_DIFF:
            if m is None:
                raise UsageError("--m is required for cor1.2d")
            extra["m"] = m[0]
    return ScanInstance(theorem=theorem, p=modulus.p, sets=family.sets, coeffs=a.coeffs, **extra)


def bound_command(args: argparse.Namespace) -> Record:
    """Evaluate a bound from sizes, or check a whole instance when sets are given."""
    try:
        theorem = bounds.resolve_kind(args.theorem)
    except SumsetError as exc:
        raise UsageError(f"--theorem: {exc.message}") from exc
    modulus = _modulus(args.p)
    if args.sets is None:
        return _formula_bound(args, theorem, modulus)
    report = evaluate_instance(_instance_from_flags(args, theorem, modulus))
    return report.model_dump(mode="json")


# ===== WITNESSES =====
def witness_command(args: argparse.Namespace) -> Record:
    """Witness vector m for the alternating sum, with the route that guarantees it."""
    modulus = _modulus(args.p)
    a = FamilyParser.parse_coefficients(args.coeffs, modulus)
    k = FamilyParser.parse_int_list(args.k, "--k")
    if len(k) != a.n:
        raise ParseError(f"--k: expected {a.n} entries, got {len(k)}", flag="--k")
    conditions = witness_conditions(k, a, args.strict)
    if args.method == "recursive":
        witness = find_witness_recursive(k, a, args.strict)
    elif args.method == "bruteforce":
        witness = find_witness_bruteforce(k, a)
    else:
        witness = find_witness(k, a, args.strict, cross_check=True)
    if witness is None:
        raise WitnessNotFoundError("no witness vector found", {"method": args.method})
    delta = delta_indicator(a)
    pair = conditions.pair
    return {
        "p": modulus.p,
        "k": k,
        "coeffs": list(a),
        "delta": delta.delta,
        "route": None if conditions.route is None else str(conditions.route),
        "pair": None if pair is None else [pair[0] + 1, pair[1] + 1],
        "pairing": pairing_permutation(a).one_based() if modulus.p > 2 else None,
        "witness": list(witness.values),
        "sum": comb(a.n, 2),
        "f_value": f_eval(k, a, witness.values).signed(),
    }


def cn_witness_command(args: argparse.Namespace) -> Record:
    """First grid point of the family where P does not vanish."""
    poly = _polynomial(args.poly, None, None, "--poly")
    if poly.modulus is None:
        raise ParseError("--poly: cn-witness needs a polynomial over Z/pZ", flag="--poly")
    family = FamilyParser.parse_family(args.sets, poly.modulus, poly.arity)
    point = cn_witness_search(poly, family)
    exponents = nullstellensatz_exponents(poly, family.sizes)
    record = _family_record(family)
    record.update(
        {
            "degree": poly.degree,
            "exponents": None if exponents is None else list(exponents),
            "found": point is not None,
            "point": None if point is None else list(point),
        }
    )
    return record


# ===== IDENTITIES =====
def dyson_command(args: argparse.Namespace) -> Record:
    """Expansion coefficient next to its closed form."""
    modulus = _modulus(args.p) if args.p is not None else None
    m = FamilyParser.parse_int_list(args.m, "--m")
    if args.sy:
        if args.n is None or len(m) != 1:
            raise UsageError("--sy needs --n and a single --m")
        coefficient = dyson.sy_coefficient(args.n, m[0])
        closed = dyson.sy_closed_form(args.n, m[0])
        record: Record = {"n": args.n, "m": m[0], "coefficient": coefficient, "closed_form": closed}
        if modulus is not None:
            record["mod_p"] = dyson.sy_coefficient(args.n, m[0], modulus)
    else:
        coefficient = dyson.dyson_coefficient(m)
        closed = dyson.dyson_closed_form(m)
        record = {"m": m, "coefficient": coefficient, "closed_form": closed}
        if modulus is not None:
            record["mod_p"] = dyson.dyson_coefficient(m, modulus)
    record["match"] = coefficient == closed
    if modulus is not None:
        record["p"] = modulus.p
        record["mod_p_match"] = record["mod_p"] == coefficient % modulus.p
    return record


def lemma51_command(args: argparse.Namespace) -> Record:
    lhs, rhs = bounds.lemma_5_1_sides(args.m, args.n, args.k)
    return {
        "m": args.m,
        "n": args.n,
        "k": args.k,
        "lhs": lhs,
        "rhs": rhs,
        "match": lhs == rhs,
        "delta": bounds.delta_nk(args.n, args.k),
    }


def certificate_command(args: argparse.Namespace) -> Record:
    """Both sides of a coefficient identity, computed independently."""
    kind = CertificateKind(args.kind)
    m = _parse_m(args.m)
    if kind is CertificateKind.THM_1_2:
        if args.p is None or args.sizes is None or args.coeffs is None:
            raise UsageError("thm_1_2 certificates need --p, --sizes and --coeffs")
        modulus = _modulus(args.p)
        sizes = FamilyParser.parse_int_list(args.sizes, "--sizes")
        a = FamilyParser.parse_coefficients(args.coeffs, modulus, len(sizes))
        instance: DistinctSumCertificate | PolynomialCertificate = DistinctSumCertificate(
            tuple(sizes), a, tuple(m) if m is not None else None
        )
        record: Record = {"kind": str(kind), "p": modulus.p, "sizes": sizes, "coeffs": list(a)}
    else:
        if args.poly is None or m is None:
            raise UsageError("thm_1_3 certificates need --poly and --m")
        poly = _polynomial(args.poly, None, None, "--poly")
        instance = PolynomialCertificate(poly, tuple(m))
        record = {"kind": str(kind), "p": poly.p, "m": m}
    lhs, rhs = certificate_check(kind, instance)
    record.update({"lhs": lhs.value, "rhs": rhs.value, "match": lhs == rhs})
    return record


COMMANDS: dict[str, Callable[[argparse.Namespace], Record]] = {
    "sumset": sumset_command,
    "valueset": valueset_command,
    "bound": bound_command,
    "witness": witness_command,
    "cn-witness": cn_witness_command,
    "dyson": dyson_command,
    "lemma51": lemma51_command,
    "certificate": certificate_command,
}


def run_single(args: argparse.Namespace) -> Record:
    """Dispatch a one-shot subcommand and return its record."""
    handler = COMMANDS[args.command]
    record = handler(args)
    logger.debug("command_finished", command=args.command)
    return record
