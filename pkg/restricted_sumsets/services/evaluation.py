"""Evaluate one scan instance against its bound."""

from typing import Any, Optional

import structlog

from restricted_sumsets.constants import Status, TheoremId
from restricted_sumsets.core import bounds
from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.core.poly import SparsePolynomial
from restricted_sumsets.core.sumset import (
    CoefficientVector,
    Difference,
    PairRestriction,
    ResidueSet,
    SetFamily,
    ValueCollision,
    ValuePolynomial,
    linear_sumset,
    polynomial_restricted_sumset,
    restricted_linear_sumset,
    restricted_value_set,
)
from restricted_sumsets.core.witness import nullstellensatz_exponents
from restricted_sumsets.errors import PreconditionError
from restricted_sumsets.models.report import BoundReport
from restricted_sumsets.models.scan import ScanInstance, TermList
from restricted_sumsets.parsers.poly_parser import PolynomialParser
from restricted_sumsets.services.registry import TheoremSpec, get_theorem_spec

logger = structlog.get_logger(__name__)


def polynomial_of(terms: TermList, n: int, modulus: PrimeModulus) -> SparsePolynomial:
    return SparsePolynomial(n, dict(terms), modulus)


def restriction_of(instance: ScanInstance, modulus: PrimeModulus) -> Optional[PairRestriction]:
    """The pairwise restriction carried by the instance, if any."""
    if instance.f is not None:
        return ValueCollision(instance.f, modulus)
    if instance.forbidden is not None:
        return Difference({(i, j): s for i, j, s in instance.forbidden}, modulus)
    return None


class InstanceEvaluator:
    """Computes the cardinality and bound of one instance."""

    def __init__(self, instance: ScanInstance) -> None:
        self.instance = instance
        self.spec: TheoremSpec = get_theorem_spec(instance.theorem)
        self.modulus = PrimeModulus(instance.p)
        self.family = SetFamily.build(instance.sets, self.modulus)
        self.a = CoefficientVector(self.modulus, instance.coeffs)
        self.restriction = restriction_of(instance, self.modulus)
        self.poly = (
            polynomial_of(instance.poly, instance.n, self.modulus)
            if instance.poly is not None
            else None
        )

    def value_polynomial(self) -> ValuePolynomial:
        assert self.instance.k is not None
        g = (
            polynomial_of(self.instance.g, self.instance.n, self.modulus)
            if self.instance.g is not None
            else SparsePolynomial.zero(self.instance.n, self.modulus)
        )
        return ValuePolynomial(self.instance.k, self.a, g)

    def cardinality_set(self) -> ResidueSet:
        spec = self.spec
        if spec.value_set:
            return restricted_value_set(
                self.value_polynomial(),
                self.family,
                poly=self.poly,
                distinct=spec.theorem not in (TheoremId.THM_5_1_I, TheoremId.THM_5_2),
            )
        if spec.theorem is TheoremId.THM_1_3:
            return polynomial_restricted_sumset(self.family, self.poly)
        if spec.theorem is TheoremId.CAUCHY_DAVENPORT:
            return linear_sumset(self.a, self.family)
        if self.restriction is not None:
            return restricted_linear_sumset(self.a, self.family, restriction=self.restriction)
        return restricted_linear_sumset(self.a, self.family, distinct=True)

    def _exponents(self) -> tuple[int, ...]:
        assert self.poly is not None
        if self.poly.is_zero():
            raise PreconditionError("P must be nonzero")
        exponents = nullstellensatz_exponents(self.poly, self.family.sizes)
        if exponents is None:
            raise PreconditionError(
                "no top monomial of P with k_i < |A_i|", {"sizes": list(self.family.sizes)}
            )
        return exponents

    def bound(self) -> int:
        """Bound of the statement on this instance.

        Raises:
            PreconditionError: If the hypotheses of the statement fail
        """
        theorem = self.spec.theorem
        p = self.modulus.p
        sizes = self.family.sizes
        n = self.family.n
        coeffs = list(self.a)
        if self.spec.common_set and not self.family.is_common():
            raise PreconditionError("statement needs one common set", {"sizes": list(sizes)})
        if theorem in (
            TheoremId.CAUCHY_DAVENPORT,
            TheoremId.DIAS_DA_SILVA_HAMIDOUNE,
            TheoremId.ALON_NATHANSON_RUZSA,
        ):
            return bounds.classical_bound(theorem, p, sizes, n)
        if theorem in (
            TheoremId.CONJ_1_1,
            TheoremId.THM_1_1,
            TheoremId.THM_1_2,
            TheoremId.EQ_1_8,
            TheoremId.COR_1_1,
        ):
            return bounds.linear_restricted_bound(theorem, p, n, sizes, coeffs)
        if theorem is TheoremId.THM_1_3:
            exponents = self._exponents()
            assert self.poly is not None
            return bounds.thm_1_3_bound(p, sizes, self.poly.degree, exponents)
        if theorem is TheoremId.COR_1_2_F:
            assert isinstance(self.restriction, ValueCollision)
            return bounds.cor_1_2_f_bound(p, n, bounds.common_size(sizes), self.restriction.degree)
        if theorem is TheoremId.COR_1_2_DIFF:
            assert isinstance(self.restriction, Difference) and self.instance.m is not None
            widest = max((len(s) for s in self.restriction.forbidden.values()), default=0)
            return bounds.cor_1_2_diff_bound(
                p, n, bounds.common_size(sizes), self.instance.m, max_forbidden=widest
            )
        if theorem is TheoremId.COR_1_3:
            assert isinstance(self.restriction, Difference)
            return bounds.cor_1_3_bound(p, sizes, self.restriction.max_sizes(n))
        assert self.instance.k is not None
        exponents = self._exponents() if theorem is TheoremId.THM_5_2 else None
        return bounds.value_set_bound(theorem, p, sizes, self.instance.k, exponents, coeffs)

    def alt_bound(self) -> Optional[int]:
        """Same bound with the boundary indicator used inside the proof."""
        if self.spec.theorem is not TheoremId.THM_1_2:
            return None
        return bounds.thm_1_2_bound(self.modulus.p, self.family.sizes, list(self.a), proof_penalty=True)

    def details(self) -> dict[str, Any]:
        details: dict[str, Any] = {}
        if self.instance.m is not None:
            details["m"] = self.instance.m
        if self.restriction is not None:
            details.update(self.restriction.describe())
            details.pop("kind", None)
        if self.poly is not None:
            details["poly"] = PolynomialParser.format(self.poly)
        if self.instance.g is not None:
            details["g"] = PolynomialParser.format(
                polynomial_of(self.instance.g, self.instance.n, self.modulus)
            )
        return details


def evaluate_instance(instance: ScanInstance) -> BoundReport:
    """Check one instance; failing hypotheses give a vacuous report."""
    evaluator = InstanceEvaluator(instance)
    card = len(evaluator.cardinality_set())
    common: dict[str, Any] = {
        "theorem": instance.theorem,
        "p": instance.p,
        "n": instance.n,
        "sizes": list(instance.sizes),
        "coeffs": list(instance.coeffs),
        "restriction": evaluator.spec.restriction,
        "card": card,
        "k": instance.k,
        "sets": [list(s) for s in instance.sets],
        "details": evaluator.details(),
    }
    try:
        bound = evaluator.bound()
        alt_bound = evaluator.alt_bound()
    except PreconditionError as exc:
        logger.debug("instance_vacuous", theorem=str(instance.theorem), reason=exc.message)
        return BoundReport(status=Status.VACUOUS, reason=exc.message, **common)
    status = Status.HOLDS if card >= bound else Status.VIOLATED
    return BoundReport(status=status, bound=bound, alt_bound=alt_bound, **common)


def evaluate_chunk(chunk: list[ScanInstance]) -> list[BoundReport]:
    return [evaluate_instance(instance) for instance in chunk]
