"""Sparse multivariate polynomials over Z/pZ and over the integers.

A polynomial is a map from exponent vectors to nonzero coefficients. The
ring is Z/pZ when a modulus is attached and the exact integers otherwise.
Everything here is immutable; arithmetic returns new canonical objects.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, prod
from typing import Optional

import numpy as np
import numpy.typing as npt
import structlog

from restricted_sumsets.config import get_settings
from restricted_sumsets.constants import RingKind
from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.errors import ArityError, ExpansionLimitError, PreconditionError

logger = structlog.get_logger(__name__)

ExponentVector = tuple[int, ...]


def _term_cap(max_terms: Optional[int]) -> int:
    return max_terms if max_terms is not None else get_settings().max_terms


@dataclass(frozen=True, eq=False)
class SparsePolynomial:
    """Polynomial in x_1..x_n stored as {exponents: coefficient}.

    Coefficients are kept as least residues when a modulus is attached and
    as arbitrary integers otherwise. Zero coefficients are never stored.
    """

    arity: int
    terms: Mapping[ExponentVector, int] = field(default_factory=dict)
    modulus: Optional[PrimeModulus] = None

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ArityError(f"polynomial arity must be >= 1, got {self.arity}")
        p = self.modulus.p if self.modulus is not None else None
        canonical: dict[ExponentVector, int] = {}
        for exponents, coeff in self.terms.items():
            key = tuple(int(j) for j in exponents)
            if len(key) != self.arity:
                raise ArityError(
                    f"exponent vector {key} does not match arity {self.arity}"
                )
            if any(j < 0 for j in key):
                raise ArityError(f"negative exponent in {key}")
            value = canonical.get(key, 0) + int(coeff)
            canonical[key] = value % p if p is not None else value
        object.__setattr__(
            self, "terms", {e: c for e, c in sorted(canonical.items()) if c != 0}
        )

    # ===== CONSTRUCTORS =====
    @classmethod
    def zero(cls, arity: int, modulus: Optional[PrimeModulus] = None) -> SparsePolynomial:
        return cls(arity, {}, modulus)

    @classmethod
    def constant(
        cls, value: int, arity: int, modulus: Optional[PrimeModulus] = None
    ) -> SparsePolynomial:
        return cls(arity, {(0,) * arity: value}, modulus)

    @classmethod
    def variable(
        cls, index: int, arity: int, modulus: Optional[PrimeModulus] = None
    ) -> SparsePolynomial:
        """The monomial x_{index+1} (zero-based index)."""
        if not 0 <= index < arity:
            raise ArityError(f"variable index {index} outside arity {arity}")
        exponents = tuple(1 if i == index else 0 for i in range(arity))
        return cls(arity, {exponents: 1}, modulus)

    @classmethod
    def linear(
        cls, coeffs: Sequence[int], modulus: Optional[PrimeModulus] = None, constant: int = 0
    ) -> SparsePolynomial:
        """a_1 x_1 + ... + a_n x_n + constant."""
        n = len(coeffs)
        terms: dict[ExponentVector, int] = {
            tuple(1 if i == j else 0 for i in range(n)): c for j, c in enumerate(coeffs)
        }
        terms[(0,) * n] = constant
        return cls(n, terms, modulus)

    # ===== RING INFO =====
    @property
    def ring(self) -> RingKind:
        return RingKind.INTEGER if self.modulus is None else RingKind.MOD_P

    @property
    def p(self) -> int:
        """Characteristic of the coefficient ring (0 for the integers)."""
        return 0 if self.modulus is None else self.modulus.p

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[ExponentVector, int]]:
        return iter(self.terms.items())

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exponents: Sequence[int]) -> int:
        """Coefficient of the monomial with the given exponents (0 if absent)."""
        key = tuple(exponents)
        if len(key) != self.arity:
            raise ArityError(
                f"exponent vector {key} does not match arity {self.arity}"
            )
        return self.terms.get(key, 0)

    def top_terms(self) -> dict[ExponentVector, int]:
        """Terms of total degree deg P."""
        d = self.degree
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self.terms), default=-1)

    # ===== COMPARISON =====
    def _same_ring(self, other: SparsePolynomial) -> None:
        if self.arity != other.arity:
            raise ArityError(
                "polynomial arity mismatch", {"left": self.arity, "right": other.arity}
            )
        if self.p != other.p:
            raise ArityError("polynomial ring mismatch", {"left": self.p, "right": other.p})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.p == other.p
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self) -> int:
        return hash((self.arity, self.p, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        ring = "Z" if self.modulus is None else f"Z/{self.p}Z"
        return f"SparsePolynomial(arity={self.arity}, ring={ring}, terms={dict(self.terms)})"

    # ===== ARITHMETIC =====
    def __add__(self, other: SparsePolynomial) -> SparsePolynomial:
        self._same_ring(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, 0) + c
        return SparsePolynomial(self.arity, acc, self.modulus)

    def __neg__(self) -> SparsePolynomial:
        return self.scale(-1)

    def __sub__(self, other: SparsePolynomial) -> SparsePolynomial:
        return self + (-other)

    def __mul__(self, other: SparsePolynomial) -> SparsePolynomial:
        return multiply(self, other)

    def __pow__(self, exponent: int) -> SparsePolynomial:
        return power(self, exponent)

    def scale(self, factor: int) -> SparsePolynomial:
        return SparsePolynomial(
            self.arity, {e: c * factor for e, c in self.terms.items()}, self.modulus
        )

    def reduce(self, modulus: PrimeModulus) -> SparsePolynomial:
        """Image of the polynomial in Z/pZ[x]."""
        if self.modulus is not None and self.modulus.p != modulus.p:
            raise ArityError(
                "cannot reduce between different primes",
                {"from": self.modulus.p, "to": modulus.p},
            )
        return SparsePolynomial(self.arity, dict(self.terms), modulus)

    def signed_terms(self) -> dict[ExponentVector, int]:
        """Coefficients with mod-p residues shown in (-p/2, p/2]."""
        if self.modulus is None:
            return dict(self.terms)
        p = self.modulus.p
        return {e: (c - p if c > p // 2 else c) for e, c in self.terms.items()}

    # ===== EVALUATION =====
    def evaluate(self, point: Sequence[int]) -> int:
        """Value at a point; a residue in [0, p) for the mod-p ring."""
        if len(point) != self.arity:
            raise ArityError(
                f"point of length {len(point)} does not match arity {self.arity}"
            )
        if self.modulus is None:
            return sum(c * prod(x**j for x, j in zip(point, e)) for e, c in self.terms.items())
        p = self.modulus.p
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, j in zip(point, e):
                if j:
                    term = term * pow(x, j, p) % p
            total += term
        return total % p

    def evaluate_grid(
        self, sets: Sequence[Sequence[int]], max_points: Optional[int] = None
    ) -> npt.NDArray[np.int64]:
        """Values on the grid A_1 x ... x A_n as an int64 array mod p.

        Axis i of the result is indexed by the elements of A_i in the given
        order.

        Raises:
            ArityError: If the polynomial is not over Z/pZ or the arity differs
            ExpansionLimitError: If the grid has more points than the cap
        """
        if self.modulus is None:
            raise ArityError("grid evaluation needs a mod-p polynomial")
        if len(sets) != self.arity:
            raise ArityError(
                f"{len(sets)} sets given for arity {self.arity}"
            )
        cap = max_points if max_points is not None else get_settings().max_grid_points
        shape = tuple(len(s) for s in sets)
        points = prod(shape)
        if points > cap:
            logger.warning("grid_cap_exceeded", points=points, cap=cap)
            raise ExpansionLimitError(
                f"grid of {points} points exceeds cap {cap}", {"points": points}
            )
        p = self.modulus.p
        out = np.zeros(shape, dtype=np.int64)
        if not self.terms:
            return out
        tables = []
        for axis, values in enumerate(sets):
            top = max(self.degree_in(axis), 0)
            base = np.asarray(values, dtype=np.int64) % p
            table = np.ones((top + 1, len(values)), dtype=np.int64)
            for j in range(1, top + 1):
                table[j] = table[j - 1] * base % p
            view = [1] * self.arity
            view[axis] = len(values)
            tables.append((table, view))
        for e, c in self.terms.items():
            term = np.full(shape, c, dtype=np.int64)
            for (table, view), j in zip(tables, e):
                if j:
                    term = term * table[j].reshape(view) % p
            out = (out + term) % p
        return out


# ===== PRODUCTS =====
def multiply(
    left: SparsePolynomial, right: SparsePolynomial, max_terms: Optional[int] = None
) -> SparsePolynomial:
    """Exact product of two polynomials over the same ring.

    Raises:
        ArityError: On arity or ring mismatch
        ExpansionLimitError: If the product would hold more terms than the cap
    """
    left._same_ring(right)
    cap = _term_cap(max_terms)
    p = left.p
    acc: dict[ExponentVector, int] = {}
    for e, c in left.terms.items():
        for f, d in right.terms.items():
            key = tuple(a + b for a, b in zip(e, f))
            value = acc.get(key, 0) + c * d
            acc[key] = value % p if p else value
        if len(acc) > cap:
            logger.warning("term_cap_exceeded", terms=len(acc), cap=cap)
            raise ExpansionLimitError(
                f"product exceeds the term cap of {cap}", {"terms": len(acc)}
            )
    return SparsePolynomial(left.arity, acc, left.modulus)


def power(
    base: SparsePolynomial, exponent: int, max_terms: Optional[int] = None
) -> SparsePolynomial:
    """base**exponent by repeated multiplication."""
    if exponent < 0:
        raise PreconditionError(f"negative polynomial power {exponent}")
    result = SparsePolynomial.constant(1, base.arity, base.modulus)
    for _ in range(exponent):
        result = multiply(result, base, max_terms)
    return result


def product(
    factors: Iterable[SparsePolynomial],
    arity: int,
    modulus: Optional[PrimeModulus] = None,
    max_terms: Optional[int] = None,
) -> SparsePolynomial:
    result = SparsePolynomial.constant(1, arity, modulus)
    for factor in factors:
        result = multiply(result, factor, max_terms)
    return result


def linear_form_power(
    n: int, exponent: int, modulus: Optional[PrimeModulus] = None, max_terms: Optional[int] = None
) -> SparsePolynomial:
    """(x_1 + ... + x_n)^exponent.

    Raises:
        ExpansionLimitError: If the expansion has more monomials than the cap
    """
    cap = _term_cap(max_terms)
    if exponent >= 0 and comb(exponent + n - 1, n - 1) > cap:
        logger.warning("term_cap_exceeded", n=n, exponent=exponent, cap=cap)
        raise ExpansionLimitError(
            f"(x_1+...+x_{n})^{exponent} exceeds the term cap of {cap}"
        )
    return power(SparsePolynomial.linear([1] * n, modulus), exponent, max_terms)


def difference_product(
    n: int,
    exponent: int = 1,
    modulus: Optional[PrimeModulus] = None,
    max_terms: Optional[int] = None,
) -> SparsePolynomial:
    """Expand the product of (x_j - x_i)^exponent over 1 <= i < j <= n.

    Raises:
        PreconditionError: If n < 2 or the exponent is negative
    """
    if n < 2:
        raise PreconditionError(f"difference product needs n >= 2, got {n}")
    if exponent < 0:
        raise PreconditionError(f"negative exponent {exponent}")
    factors = []
    for i, j in combinations(range(n), 2):
        diff = SparsePolynomial.variable(j, n, modulus) - SparsePolynomial.variable(i, n, modulus)
        factors.append(power(diff, exponent, max_terms))
    return product(factors, n, modulus, max_terms)


# ===== FALLING FACTORIAL BASIS =====
@lru_cache(maxsize=512)
def _falling_coefficients(length: int, p: int) -> tuple[int, ...]:
    """Coefficients c_0..c_length of (x)_length, reduced mod p when p > 0."""
    coeffs = [1]
    for j in range(length):
        # multiply by (x - j)
        shifted = [0] + coeffs
        for t, c in enumerate(coeffs):
            shifted[t] -= j * c
        coeffs = [c % p for c in shifted] if p else shifted
    return tuple(coeffs)


def falling_factorial_polynomial(
    index: int, length: int, arity: int, modulus: Optional[PrimeModulus] = None
) -> SparsePolynomial:
    """(x_{index+1})_length expanded in the monomial basis."""
    coeffs = _falling_coefficients(length, 0 if modulus is None else modulus.p)
    terms = {
        tuple(t if i == index else 0 for i in range(arity)): c for t, c in enumerate(coeffs)
    }
    return SparsePolynomial(arity, terms, modulus)


def pstar_transform(
    poly: SparsePolynomial, max_terms: Optional[int] = None
) -> SparsePolynomial:
    """Replace each top-degree monomial by a product of falling factorials.

    Lower-degree terms are dropped. The top-degree coefficients of the
    result equal those of the input.

    Raises:
        PreconditionError: If the polynomial is zero
    """
    if poly.is_zero():
        raise PreconditionError("P* of the zero polynomial is undefined")
    result = SparsePolynomial.zero(poly.arity, poly.modulus)
    for exponents, coeff in poly.top_terms().items():
        term = SparsePolynomial.constant(coeff, poly.arity, poly.modulus)
        for index, length in enumerate(exponents):
            if length:
                term = multiply(
                    term,
                    falling_factorial_polynomial(index, length, poly.arity, poly.modulus),
                    max_terms,
                )
        result = result + term
    return result


# ===== RANDOM POLYNOMIALS =====
def random_polynomial(
    rng: random.Random,
    arity: int,
    degree: int,
    modulus: PrimeModulus,
    terms: int = 4,
    exact_degree: bool = True,
) -> SparsePolynomial:
    """Seeded random polynomial of total degree <= degree.

    With exact_degree the result has total degree exactly `degree` (when
    degree >= 0), which needs a nonzero top monomial.
    """
    if degree < 0:
        return SparsePolynomial.zero(arity, modulus)
    monomials = list(_monomials_up_to(arity, degree))
    chosen: dict[ExponentVector, int] = {}
    for _ in range(terms):
        chosen[rng.choice(monomials)] = rng.randrange(1, modulus.p)
    if exact_degree:
        top = [e for e in monomials if sum(e) == degree]
        chosen[rng.choice(top)] = rng.randrange(1, modulus.p)
    return SparsePolynomial(arity, chosen, modulus)


def _monomials_up_to(arity: int, degree: int) -> Iterator[ExponentVector]:
    if arity == 1:
        for j in range(degree + 1):
            yield (j,)
        return
    for j in range(degree + 1):
        for rest in _monomials_up_to(arity - 1, degree - j):
            yield (j, *rest)
