"""Witness vectors, pairing permutations and Nullstellensatz certificates.

Indices are zero based throughout: a permutation is stored as the tuple of
images of 0..n-1 and index pairs (s, t) satisfy 0 <= s < t < n.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, prod
from typing import Optional, Union

import structlog

from restricted_sumsets.config import get_settings
from restricted_sumsets.constants import CertificateKind, WitnessRoute
from restricted_sumsets.core.field import (
    FieldElement,
    factorial,
    falling_factorial_mod,
)
from restricted_sumsets.core.poly import (
    ExponentVector,
    SparsePolynomial,
    linear_form_power,
    multiply,
    product as poly_product,
    pstar_transform,
)
from restricted_sumsets.core.sumset import CoefficientVector, SetFamily
from restricted_sumsets.errors import (
    ArityError,
    ExpansionLimitError,
    ModulusError,
    PreconditionError,
    WitnessDisagreementError,
    WitnessNotFoundError,
)

logger = structlog.get_logger(__name__)


# ===== DOMAIN TYPES =====
@dataclass(frozen=True)
class DeltaClassification:
    """Whether the coefficients form {a, -a} with both multiplicities odd."""

    delta: int
    element: Optional[FieldElement] = None
    counts: Optional[tuple[int, int]] = None


def permutation_sign(images: Sequence[int]) -> int:
    inversions = sum(1 for i, j in combinations(range(len(images)), 2) if images[i] > images[j])
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1} given by its images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ArityError(f"{self.images} is not a permutation")

    @property
    def sign(self) -> int:
        return permutation_sign(self.images)

    @property
    def n(self) -> int:
        return len(self.images)

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.images]


@dataclass(frozen=True)
class WitnessVector:
    """m_1..m_n with sum C(n, 2) and every entry at most max(2n-3, 0)."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.values)
        ceiling = max(2 * n - 3, 0)
        if any(m < 0 or m > ceiling for m in self.values):
            raise PreconditionError(
                f"witness entries must lie in [0, {ceiling}]", {"m": list(self.values)}
            )
        if sum(self.values) != comb(n, 2):
            raise PreconditionError(
                f"witness entries must sum to {comb(n, 2)}", {"m": list(self.values)}
            )

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ExceptionalCase:
    """Three equal coefficients with k = 5 and the fourth, -a, with k = p - 4."""

    equal_indices: tuple[int, int, int]
    odd_index: int

    def witness(self) -> WitnessVector:
        values = [0] * 4
        for index, m in zip(self.equal_indices, (0, 2, 3)):
            values[index] = m
        values[self.odd_index] = 1
        return WitnessVector(tuple(values))


@dataclass(frozen=True)
class WitnessConditions:
    """Which hypothesis guarantees a witness vector for (k, a), if any."""

    delta: DeltaClassification
    route: Optional[WitnessRoute]
    pair: Optional[tuple[int, int]] = None
    exceptional: Optional[ExceptionalCase] = None
    reason: Optional[str] = None

    @property
    def conforming(self) -> bool:
        return self.route is not None


# ===== DELTA AND PAIRINGS =====
def _delta_of(values: Sequence[int], p: int) -> tuple[int, Optional[int], Optional[tuple[int, int]]]:
    if p == 2 or not values:
        return 0, None, None
    counts = Counter(v % p for v in values)
    if len(counts) != 2:
        return 0, None, None
    first = values[0] % p
    other = (-first) % p
    if other not in counts:
        return 0, None, None
    plus, minus = counts[first], counts[other]
    if plus % 2 == 1 and minus % 2 == 1:
        return 1, first, (plus, minus)
    return 0, None, None


def delta_indicator(a: CoefficientVector) -> DeltaClassification:
    """Classify a per the odd-multiplicity {a, -a} condition.

    The reported element is a_1's value.
    """
    delta, element, counts = _delta_of(a.coeffs, a.modulus.p)
    if delta == 0:
        return DeltaClassification(0)
    assert element is not None
    return DeltaClassification(1, a.modulus.element(element), counts)


def _pair_equal_values(indices: Sequence[int], values: Sequence[int]) -> list[int]:
    """Order indices so that equal values sit next to each other."""
    groups: dict[int, list[int]] = {}
    for i in indices:
        groups.setdefault(values[i], []).append(i)
    ordered: list[int] = []
    for value in sorted(groups):
        ordered.extend(groups[value])
    return ordered


def _pairing(indices: list[int], values: Sequence[int], p: int) -> list[int]:
    if len(indices) < 2:
        return list(indices)
    sub = [values[i] for i in indices]
    delta, element, _ = _delta_of(sub, p)
    if delta == 1:
        assert element is not None
        plus = [i for i in indices if values[i] % p == element]
        minus = [i for i in indices if values[i] % p != element]
        # equal values pair up; one of each sign is left for the final slot
        return plus[:-1] + minus[:-1] + [plus[-1], minus[-1]]
    s, t = next(
        (s, t)
        for s, t in combinations(indices, 2)
        if (values[s] + values[t]) % p != 0
    )
    rest = [i for i in indices if i not in (s, t)]
    ordered_rest = _pairing(rest, values, p)
    rest_delta, b, _ = _delta_of([values[i] for i in rest], p)
    if rest_delta == 0:
        return [s, t] + ordered_rest
    assert b is not None
    u, v = ordered_rest[-2], ordered_rest[-1]
    if (values[s] + values[u]) % p and (values[t] + values[v]) % p:
        return [s, u, t, v] + ordered_rest[:-2]
    return [s, v, t, u] + ordered_rest[:-2]


def pairing_permutation(a: CoefficientVector) -> Permutation:
    """A permutation whose leading pairs have nonzero sums.

    The first floor(n/2) - delta(a) consecutive pairs of images satisfy
    a[images[2i]] + a[images[2i+1]] != 0.

    Raises:
        ModulusError: If p = 2
    """
    p = a.modulus.p
    if p == 2:
        raise ModulusError("pairing permutations need an odd prime")
    return Permutation(tuple(_pairing(list(range(a.n)), a.coeffs, p)))


def pairs_nonzero(a: CoefficientVector, sigma: Permutation) -> bool:
    """Check the pairing predicate for sigma against a."""
    p = a.modulus.p
    needed = a.n // 2 - delta_indicator(a).delta
    images = sigma.images
    return all((a[images[2 * i]] + a[images[2 * i + 1]]) % p for i in range(needed))


# ===== ALTERNATING SUM =====
@lru_cache(maxsize=16)
def _signed_permutations(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    return tuple((perm, permutation_sign(perm)) for perm in permutations(range(n)))


def f_eval(k: Sequence[int], a: CoefficientVector, x: Sequence[int]) -> FieldElement:
    """Sum over sigma in S_n of sgn(sigma) prod_j (k_j - x_j)_{sigma(j)} a_j^{sigma(j)}.

    Falling factorial lengths and powers run over 0..n-1.

    Raises:
        ArityError: If k, a and x differ in length
        ExpansionLimitError: If n exceeds the permutation arity cap
    """
    n = a.n
    if len(k) != n or len(x) != n:
        raise ArityError(
            "k, a and x must share one length", {"k": len(k), "a": n, "x": len(x)}
        )
    cap = get_settings().max_permutation_arity
    if n > cap:
        raise ExpansionLimitError(f"n = {n} exceeds the permutation arity cap {cap}")
    p = a.modulus.p
    table = [
        [falling_factorial_mod(k[j] - x[j], e, p) * pow(a[j], e, p) % p for e in range(n)]
        for j in range(n)
    ]
    total = 0
    for perm, sign in _signed_permutations(n):
        term = sign
        for j, e in enumerate(perm):
            term = term * table[j][e] % p
            if term == 0:
                break
        total += term
    return FieldElement(total % p, a.modulus)


# ===== WITNESS HYPOTHESES =====
def _cancelling_pair(k: Sequence[int], a: CoefficientVector, strict: bool) -> Optional[tuple[int, int]]:
    p = a.modulus.p
    candidates = [(0, 1)] if strict else combinations(range(a.n), 2)
    for s, t in candidates:
        if t < a.n and (a[s] + a[t]) % p == 0 and (k[s] + k[t] - 1) % p != 0:
            return s, t
    return None


def _exceptional_case(k: Sequence[int], a: CoefficientVector) -> Optional[ExceptionalCase]:
    p = a.modulus.p
    if a.n != 4 or p <= 7:
        return None
    counts = Counter(a.coeffs)
    if sorted(counts.values()) != [1, 3]:
        return None
    common = next(v for v, c in counts.items() if c == 3)
    odd = next(i for i in range(4) if a[i] != common)
    equal = tuple(i for i in range(4) if i != odd)
    if (a[odd] + common) % p != 0:
        return None
    if any(k[i] != 5 for i in equal) or k[odd] != p - 4:
        return None
    return ExceptionalCase((equal[0], equal[1], equal[2]), odd)


def witness_conditions(k: Sequence[int], a: CoefficientVector, strict: bool = False) -> WitnessConditions:
    """Decide which hypothesis guarantees a witness vector.

    With strict the cancelling pair must be (0, 1); otherwise any pair
    s < t with a_s + a_t = 0 and k_s + k_t != 1 (mod p) qualifies. The
    instance is conforming when p is odd, p > 2n - 3 and some route applies.
    """
    if len(k) != a.n:
        raise ArityError("k and a must share one length", {"k": len(k), "a": a.n})
    p = a.modulus.p
    n = a.n
    delta = delta_indicator(a)
    if p == 2:
        return WitnessConditions(delta, None, reason="p must be odd")
    if n >= 2 and p <= 2 * n - 3:
        return WitnessConditions(delta, None, reason="needs p > 2n-3")
    if delta.delta == 0:
        return WitnessConditions(delta, WitnessRoute.DELTA_ZERO)
    pair = _cancelling_pair(k, a, strict)
    if pair is not None:
        return WitnessConditions(delta, WitnessRoute.CANCELLING_PAIR, pair=pair)
    exceptional = _exceptional_case(k, a)
    if exceptional is not None:
        return WitnessConditions(delta, WitnessRoute.EXCEPTIONAL, exceptional=exceptional)
    return WitnessConditions(
        delta, None, reason="delta = 1 without a cancelling pair whose k-sum avoids 1 mod p"
    )


def lemma_2_3_classify(k: Sequence[int], a: CoefficientVector) -> Union[tuple[int, int], ExceptionalCase]:
    """Find a cancelling pair with k_s + k_t != 1 (mod p), or the exceptional shape.

    Raises:
        PreconditionError: Unless n >= 4, delta(a) = 1, every k_i >= 2n-3
            and p >= sum(k) - n^2 + n + 1
    """
    n = a.n
    p = a.modulus.p
    if len(k) != n:
        raise ArityError("k and a must share one length")
    if n < 4:
        raise PreconditionError("classification needs n >= 4", {"n": n})
    if delta_indicator(a).delta != 1:
        raise PreconditionError("classification needs delta(a) = 1")
    if any(ki < 2 * n - 3 for ki in k):
        raise PreconditionError("classification needs every k_i >= 2n-3", {"k": list(k)})
    if p < sum(k) - n * n + n + 1:
        raise PreconditionError("classification needs p >= sum(k) - n^2 + n + 1", {"p": p})
    pair = _cancelling_pair(k, a, strict=False)
    if pair is not None:
        return pair
    exceptional = _exceptional_case(k, a)
    if exceptional is None:
        raise PreconditionError("no cancelling pair and no exceptional shape", {"k": list(k)})
    return exceptional


# ===== WITNESS SEARCH =====
def _arrangement(a: CoefficientVector, conditions: WitnessConditions) -> list[int]:
    """Reorder so that the last pairs (n-2, n-1), (n-4, n-3), ... have nonzero sums."""
    if conditions.route is WitnessRoute.DELTA_ZERO:
        return list(reversed(pairing_permutation(a).images))
    assert conditions.pair is not None
    s, t = conditions.pair
    rest = [i for i in range(a.n) if i not in (s, t)]
    return [s, t] + _pair_equal_values(rest, a.coeffs)


def _recursive(k: Sequence[int], a: CoefficientVector, strict: bool) -> Optional[tuple[int, ...]]:
    n = a.n
    if n == 1:
        return (0,)
    conditions = witness_conditions(k, a, strict)
    if conditions.route is WitnessRoute.EXCEPTIONAL:
        assert conditions.exceptional is not None
        return conditions.exceptional.witness().values
    if n == 2:
        for m in ((1, 0), (0, 1)):
            if f_eval(k, a, m):
                return m
        return None
    if not conditions.conforming:
        return None
    order = _arrangement(a, conditions)
    k_perm = [k[i] for i in order]
    a_perm = a.permuted(order)
    head = _recursive(k_perm[: n - 2], a_perm.permuted(range(n - 2)), strict)
    if head is None:
        return None
    top = 2 * n - 3
    for x in range(top + 1):
        candidate = (*head, x, top - x)
        if f_eval(k_perm, a_perm, candidate):
            values = [0] * n
            for position, index in enumerate(order):
                values[index] = candidate[position]
            return tuple(values)
    return None


def find_witness_recursive(
    k: Sequence[int], a: CoefficientVector, strict: bool = False
) -> Optional[WitnessVector]:
    """Witness vector built by reduction to n - 2 and a scan of 0..2n-3."""
    values = _recursive(k, a, strict)
    if values is None or not f_eval(k, a, values):
        return None
    return WitnessVector(values)


def _compositions(total: int, parts: int, ceiling: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if 0 <= total <= ceiling:
            yield (total,)
        return
    for first in range(min(total, ceiling) + 1):
        for rest in _compositions(total - first, parts - 1, ceiling):
            yield (first, *rest)


def find_witness_bruteforce(k: Sequence[int], a: CoefficientVector) -> Optional[WitnessVector]:
    """First witness vector in lexicographic order, or None."""
    n = a.n
    for m in _compositions(comb(n, 2), n, max(2 * n - 3, 0)):
        if f_eval(k, a, m):
            return WitnessVector(m)
    return None


def find_witness(
    k: Sequence[int],
    a: CoefficientVector,
    strict: bool = False,
    cross_check: Optional[bool] = None,
) -> WitnessVector:
    """Witness vector for a conforming (k, a).

    The recursive construction is preferred. With cross_check (default from
    settings) the brute-force search runs too and the two must agree.

    Raises:
        WitnessNotFoundError: If (k, a) is not conforming or no vector exists
        WitnessDisagreementError: If the two searches disagree on existence
    """
    conditions = witness_conditions(k, a, strict)
    if not conditions.conforming:
        raise WitnessNotFoundError(
            conditions.reason or "no witness hypothesis applies",
            {"k": list(k), "a": list(a.coeffs), "p": a.modulus.p},
        )
    check = get_settings().witness_cross_check if cross_check is None else cross_check
    recursive = find_witness_recursive(k, a, strict)
    if check:
        brute = find_witness_bruteforce(k, a)
        if (recursive is None) != (brute is None):
            logger.error(
                "witness_paths_disagree",
                k=list(k),
                a=list(a.coeffs),
                p=a.modulus.p,
                recursive=None if recursive is None else list(recursive.values),
                bruteforce=None if brute is None else list(brute.values),
            )
            raise WitnessDisagreementError(
                "recursive and brute-force witness searches disagree",
                {"k": list(k), "a": list(a.coeffs), "p": a.modulus.p},
            )
        recursive = recursive or brute
    if recursive is None:
        raise WitnessNotFoundError(
            "no witness vector found", {"k": list(k), "a": list(a.coeffs), "p": a.modulus.p}
        )
    return recursive


# ===== COMBINATORIAL NULLSTELLENSATZ =====
def nullstellensatz_exponents(poly: SparsePolynomial, sizes: Sequence[int]) -> Optional[ExponentVector]:
    """A top-degree monomial with nonzero coefficient and k_i < |A_i|, if any."""
    if len(sizes) != poly.arity:
        raise ArityError("one size per variable is needed")
    for exponents in sorted(poly.top_terms()):
        if all(j < s for j, s in zip(exponents, sizes)):
            return exponents
    return None


def cn_witness_search(poly: SparsePolynomial, family: SetFamily) -> Optional[tuple[int, ...]]:
    """First grid point (lexicographic) where P does not vanish, or None."""
    if poly.arity != family.n:
        raise ArityError("polynomial arity does not match the set family")
    if poly.p != family.modulus.p:
        raise ModulusError("polynomial and sets live in different fields")
    for point in product(*family.sets):
        if poly.evaluate(point):
            return tuple(point)
    return None


# ===== COEFFICIENT CERTIFICATES =====
@dataclass(frozen=True)
class DistinctSumCertificate:
    """Inputs of the distinct-variable certificate: sizes, a and optionally m."""

    sizes: tuple[int, ...]
    a: CoefficientVector
    m: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class PolynomialCertificate:
    """Inputs of the polynomial-restriction certificate: P and m."""

    poly: SparsePolynomial
    m: tuple[int, ...]


CertificateInstance = Union[DistinctSumCertificate, PolynomialCertificate]


def _distinct_sum_sides(instance: DistinctSumCertificate) -> tuple[FieldElement, FieldElement]:
    a = instance.a
    modulus = a.modulus
    p = modulus.p
    n = a.n
    sizes = instance.sizes
    if len(sizes) != n:
        raise ArityError("one size per coefficient is needed")
    total = sum(sizes) - n * n
    if not 0 <= total < p:
        raise PreconditionError(
            "certificate needs 0 <= sum|A_j| - n^2 < p", {"N": total, "p": p}
        )
    inverted = a.inverted()
    k = [s - 1 for s in sizes]
    m = instance.m if instance.m is not None else find_witness(k, inverted).values
    if len(m) != n:
        raise ArityError("witness length must equal n")
    exponents = tuple(s - 1 - mj for s, mj in zip(sizes, m))
    if any(e < 0 for e in exponents):
        raise PreconditionError("needs m_j <= |A_j| - 1", {"m": list(m)})

    # left side: expand the Vandermonde-type product times (x_1+...+x_n)^N
    factors = [
        SparsePolynomial.linear(
            [inverted[j] if t == j else (-inverted[i] if t == i else 0) for t in range(n)],
            modulus,
        )
        for i, j in combinations(range(n), 2)
    ]
    expanded = multiply(poly_product(factors, n, modulus), linear_form_power(n, total, modulus))
    scale = prod(factorial(e, modulus).value for e in exponents)
    lhs = modulus.element(scale * expanded.coefficient(exponents))

    # right side: N! times the alternating sum at m
    rhs = factorial(total, modulus) * f_eval(k, inverted, m)
    return lhs, rhs


def _polynomial_sides(instance: PolynomialCertificate) -> tuple[FieldElement, FieldElement]:
    poly = instance.poly
    if poly.modulus is None:
        raise ModulusError("the polynomial certificate needs a mod-p polynomial")
    modulus = poly.modulus
    p = modulus.p
    m = instance.m
    if len(m) != poly.arity:
        raise ArityError("m must have one entry per variable")
    if poly.is_zero():
        raise PreconditionError("P must be nonzero")
    excess = sum(m) - poly.degree
    if not 0 <= excess < p:
        raise PreconditionError(
            "certificate needs 0 <= sum(m) - deg P < p", {"M": excess, "p": p}
        )
    if any(mi < 0 or mi >= p for mi in m):
        raise PreconditionError("certificate needs 0 <= m_i < p", {"m": list(m)})

    expanded = multiply(poly, linear_form_power(poly.arity, excess, modulus))
    scale = prod(factorial(mi, modulus).value for mi in m)
    lhs = modulus.element(scale * expanded.coefficient(m))
    rhs = factorial(excess, modulus) * modulus.element(pstar_transform(poly).evaluate(m))
    return lhs, rhs


def certificate_check(
    kind: Union[CertificateKind, str], instance: CertificateInstance
) -> tuple[FieldElement, FieldElement]:
    """Both sides of a coefficient identity, each computed independently."""
    kind = CertificateKind(kind)
    if kind is CertificateKind.THM_1_2:
        if not isinstance(instance, DistinctSumCertificate):
            raise PreconditionError("thm_1_2 certificates take a DistinctSumCertificate")
        return _distinct_sum_sides(instance)
    if not isinstance(instance, PolynomialCertificate):
        raise PreconditionError("thm_1_3 certificates take a PolynomialCertificate")
    return _polynomial_sides(instance)

