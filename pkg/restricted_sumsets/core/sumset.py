"""Restricted sumsets and value sets over Z/pZ.

Sets of residues are Python integers used as bitsets: bit v is set when the
residue v is a member. Adding a constant s to every member is a rotation of
the p-bit word, so sumsets are unions of rotated masks.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

import numpy as np
import structlog

from restricted_sumsets.constants import Restriction
from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.core.poly import SparsePolynomial
from restricted_sumsets.errors import ArityError, ModulusError, PreconditionError

logger = structlog.get_logger(__name__)


# ===== BITSET HELPERS =====
def mask_of(values: Iterable[int], p: int) -> int:
    mask = 0
    for v in values:
        mask |= 1 << (v % p)
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def rotate(mask: int, shift: int, p: int) -> int:
    """Translate every member of the set by shift (mod p)."""
    shift %= p
    if shift == 0:
        return mask
    full = (1 << p) - 1
    return ((mask << shift) | (mask >> (p - shift))) & full


def dilate_mask(mask: int, factor: int, p: int) -> int:
    return mask_of((factor * v for v in iter_bits(mask)), p)


# ===== DOMAIN TYPES =====
@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z/pZ with its cardinality."""

    modulus: PrimeModulus
    mask: int = 0
    cardinality: int = field(init=False)

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.modulus.p:
            raise ModulusError("bitset has members outside [0, p)", {"p": self.modulus.p})
        object.__setattr__(self, "cardinality", self.mask.bit_count())

    @classmethod
    def from_elements(cls, values: Iterable[int], modulus: PrimeModulus) -> ResidueSet:
        return cls(modulus, mask_of(values, modulus.p))

    @classmethod
    def full(cls, modulus: PrimeModulus) -> ResidueSet:
        return cls(modulus, (1 << modulus.p) - 1)

    def elements(self) -> list[int]:
        return list(iter_bits(self.mask))

    def __len__(self) -> int:
        return self.cardinality

    def __contains__(self, value: object) -> bool:
        return isinstance(value, int) and bool(self.mask >> (value % self.modulus.p) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def is_full(self) -> bool:
        return self.cardinality == self.modulus.p

    def issubset(self, other: ResidueSet) -> bool:
        return self.mask & ~other.mask == 0

    def translate(self, shift: int) -> ResidueSet:
        return ResidueSet(self.modulus, rotate(self.mask, shift, self.modulus.p))

    def dilate(self, factor: int) -> ResidueSet:
        if factor % self.modulus.p == 0:
            raise PreconditionError("dilation factor must be nonzero mod p")
        return ResidueSet(self.modulus, dilate_mask(self.mask, factor, self.modulus.p))


@dataclass(frozen=True)
class SetFamily:
    """The sets A_1, ..., A_n, each sorted and duplicate free."""

    modulus: PrimeModulus
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        p = self.modulus.p
        if not self.sets:
            raise ArityError("a set family needs at least one set")
        normalised = tuple(tuple(s) for s in self.sets)
        for index, values in enumerate(normalised):
            if not values:
                raise PreconditionError(f"set A_{index + 1} is empty")
            if any(v < 0 or v >= p for v in values):
                raise ModulusError(f"set A_{index + 1} has elements outside [0, {p})")
            if any(x >= y for x, y in zip(values, values[1:])):
                raise PreconditionError(f"set A_{index + 1} is not strictly increasing")
        object.__setattr__(self, "sets", normalised)

    @classmethod
    def build(cls, sets: Iterable[Iterable[int]], modulus: PrimeModulus) -> SetFamily:
        """Reduce, sort and deduplicate raw residues into a family."""
        return cls(modulus, tuple(tuple(sorted({v % modulus.p for v in s})) for s in sets))

    @classmethod
    def common(cls, values: Iterable[int], n: int, modulus: PrimeModulus) -> SetFamily:
        """A_1 = ... = A_n = values."""
        base = tuple(sorted({v % modulus.p for v in values}))
        return cls(modulus, (base,) * n)

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(s, self.modulus.p) for s in self.sets)

    def is_common(self) -> bool:
        return all(s == self.sets[0] for s in self.sets)

    def translated(self, shift: int) -> SetFamily:
        return SetFamily.build(((v + shift for v in s) for s in self.sets), self.modulus)

    def dilated(self, factor: int) -> SetFamily:
        return SetFamily.build(((v * factor for v in s) for s in self.sets), self.modulus)


@dataclass(frozen=True)
class CoefficientVector:
    """Nonzero coefficients a_1, ..., a_n in Z/pZ."""

    modulus: PrimeModulus
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ArityError("coefficient vector is empty")
        reduced = tuple(c % self.modulus.p for c in self.coeffs)
        if any(c == 0 for c in reduced):
            raise PreconditionError(
                "coefficients must be nonzero mod p", {"coeffs": list(self.coeffs)}
            )
        object.__setattr__(self, "coeffs", reduced)

    @classmethod
    def ones(cls, n: int, modulus: PrimeModulus) -> CoefficientVector:
        return cls(modulus, (1,) * n)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, index: int) -> int:
        return self.coeffs[index]

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def scaled(self, factor: int) -> CoefficientVector:
        return CoefficientVector(self.modulus, tuple(c * factor for c in self.coeffs))

    def inverted(self) -> CoefficientVector:
        """Entrywise inverses a_i^{-1}."""
        return CoefficientVector(
            self.modulus, tuple(self.modulus.inverse(c) for c in self.coeffs)
        )

    def permuted(self, order: Sequence[int]) -> CoefficientVector:
        return CoefficientVector(self.modulus, tuple(self.coeffs[i] for i in order))


@dataclass(frozen=True)
class ValuePolynomial:
    """f = a_1 x_1^k + ... + a_n x_n^k + g with deg g < k."""

    k: int
    a: CoefficientVector
    g: SparsePolynomial

    def __post_init__(self) -> None:
        if self.k < 1:
            raise PreconditionError(f"k must be positive, got {self.k}")
        if self.g.arity != self.a.n:
            raise ArityError(
                "g arity does not match the coefficient vector",
                {"g": self.g.arity, "n": self.a.n},
            )
        if self.g.p != self.a.modulus.p:
            raise ArityError("g must be a polynomial over the same field")
        if self.g.degree >= self.k:
            raise PreconditionError(f"deg g = {self.g.degree} is not below k = {self.k}")

    @classmethod
    def power_sum(cls, k: int, a: CoefficientVector) -> ValuePolynomial:
        return cls(k, a, SparsePolynomial.zero(a.n, a.modulus))

    @property
    def n(self) -> int:
        return self.a.n

    def as_polynomial(self) -> SparsePolynomial:
        n = self.a.n
        terms = {tuple(self.k if i == j else 0 for i in range(n)): c for j, c in enumerate(self.a)}
        return SparsePolynomial(n, terms, self.a.modulus) + self.g


# ===== PAIRWISE RESTRICTIONS =====
class PairRestriction(ABC):
    """A side condition on pairs (x_i, x_j) of a tuple."""

    kind: Restriction
    # True when the blocked mask depends only on the set of earlier values
    symmetric: bool = False

    @abstractmethod
    def blocked(self, prefix: Sequence[int], position: int, p: int) -> int:
        """Mask of values forbidden at `position` given x_0..x_{position-1}."""

    def admits(self, point: Sequence[int], p: int) -> bool:
        return all(
            not (self.blocked(point[:j], j, p) >> (point[j] % p) & 1)
            for j in range(1, len(point))
        )

    def describe(self) -> dict[str, object]:
        return {"kind": str(self.kind)}


class Distinct(PairRestriction):
    """x_i != x_j for i != j."""

    kind = Restriction.DISTINCT
    symmetric = True

    def blocked(self, prefix: Sequence[int], position: int, p: int) -> int:
        return mask_of(prefix, p)


class ValueCollision(PairRestriction):
    """f(x_i) != f(x_j) for i != j, for a fixed univariate f."""

    kind = Restriction.COLLISION
    symmetric = True

    def __init__(self, coefficients: Sequence[int], modulus: PrimeModulus):
        p = modulus.p
        self.coefficients = tuple(c % p for c in coefficients)
        self.images = tuple(
            sum(c * pow(x, j, p) for j, c in enumerate(self.coefficients)) % p for x in range(p)
        )
        self._class_masks: dict[int, int] = {}
        for x, value in enumerate(self.images):
            self._class_masks[value] = self._class_masks.get(value, 0) | (1 << x)

    @property
    def degree(self) -> int:
        return max((j for j, c in enumerate(self.coefficients) if c), default=-1)

    def blocked(self, prefix: Sequence[int], position: int, p: int) -> int:
        mask = 0
        for x in prefix:
            mask |= self._class_masks[self.images[x % p]]
        return mask

    def describe(self) -> dict[str, object]:
        return {"kind": str(self.kind), "f": list(self.coefficients)}


class Difference(PairRestriction):
    """x_i - x_j not in S_ij for every ordered pair (i, j) in the map.

    Indices are zero based. A pair absent from the map carries no condition.
    """

    kind = Restriction.DIFFERENCE

    def __init__(self, forbidden: Mapping[tuple[int, int], Iterable[int]], modulus: PrimeModulus):
        p = modulus.p
        self.forbidden: dict[tuple[int, int], frozenset[int]] = {}
        for (i, j), values in forbidden.items():
            if i == j:
                raise PreconditionError(f"difference condition on the diagonal pair ({i}, {j})")
            residues = frozenset(v % p for v in values)
            if residues:
                self.forbidden[(i, j)] = residues

    def blocked(self, prefix: Sequence[int], position: int, p: int) -> int:
        mask = 0
        for i, x in enumerate(prefix):
            # x_i - x_j = d  <=>  x_j = x_i - d
            for d in self.forbidden.get((i, position), ()):
                mask |= 1 << ((x - d) % p)
            # x_j - x_i = d  <=>  x_j = x_i + d
            for d in self.forbidden.get((position, i), ()):
                mask |= 1 << ((x + d) % p)
        return mask

    def max_sizes(self, n: int) -> list[int]:
        """m_i = max over j != i of |S_ij|."""
        return [
            max((len(self.forbidden.get((i, j), ())) for j in range(n) if j != i), default=0)
            for i in range(n)
        ]

    def describe(self) -> dict[str, object]:
        return {
            "kind": str(self.kind),
            "forbidden": {f"{i + 1},{j + 1}": sorted(s) for (i, j), s in sorted(self.forbidden.items())},
        }


DISTINCT = Distinct()


# ===== VALIDATION =====
def _check_linear(a: CoefficientVector, family: SetFamily) -> None:
    if a.modulus.p != family.modulus.p:
        raise ModulusError(
            "coefficients and sets live in different fields",
            {"coeffs": a.modulus.p, "sets": family.modulus.p},
        )
    if a.n != family.n:
        raise ArityError(
            "coefficient vector and set family differ in length",
            {"coeffs": a.n, "sets": family.n},
        )


def _check_polynomial(poly: SparsePolynomial, family: SetFamily) -> None:
    if poly.arity != family.n:
        raise ArityError(
            "polynomial arity does not match the set family",
            {"arity": poly.arity, "sets": family.n},
        )
    if poly.p != family.modulus.p:
        raise ModulusError(
            "polynomial must be over the same field as the sets",
            {"poly": poly.p, "sets": family.modulus.p},
        )


# ===== LINEAR FORMS =====
def linear_sumset(a: CoefficientVector, family: SetFamily) -> ResidueSet:
    """Unrestricted a_1 A_1 + ... + a_n A_n."""
    _check_linear(a, family)
    p = family.modulus.p
    full = (1 << p) - 1
    acc = 1  # {0}
    for coeff, values in zip(a, family.sets):
        nxt = 0
        for x in values:
            nxt |= rotate(acc, coeff * x, p)
            if nxt == full:
                break
        acc = nxt
    return ResidueSet(family.modulus, acc)


def restricted_linear_sumset(
    a: CoefficientVector,
    family: SetFamily,
    distinct: bool = False,
    restriction: Optional[PairRestriction] = None,
) -> ResidueSet:
    """All a_1 x_1 + ... + a_n x_n with x_i in A_i meeting a pairwise condition.

    `distinct` selects the condition x_i != x_j; any other PairRestriction can
    be passed explicitly. An infeasible condition yields the empty set.
    """
    _check_linear(a, family)
    if restriction is None:
        if not distinct:
            return linear_sumset(a, family)
        restriction = DISTINCT
    rule: PairRestriction = restriction
    p = family.modulus.p
    n = family.n
    full = (1 << p) - 1
    last = n - 1
    a_last = a[last]
    last_values = family.sets[last]
    last_image = mask_of((a_last * y for y in last_values), p)
    last_mask = mask_of(last_values, p)
    visited: set[tuple[int, int, Hashable]] = set()
    prefix: list[int] = []
    result = 0

    def leaf(shift: int) -> int:
        allowed = last_image
        hit = rule.blocked(prefix, last, p) & last_mask if prefix else 0
        for y in iter_bits(hit):
            allowed &= ~(1 << (a_last * y % p))
        return rotate(allowed, shift, p)

    def walk(depth: int, shift: int) -> None:
        nonlocal result
        if result == full:
            return
        if depth == last:
            result |= leaf(shift)
            return
        blocked = rule.blocked(prefix, depth, p) if prefix else 0
        if rule.symmetric:
            key = (depth, shift, rule.blocked(prefix, last, p))
            if key in visited:
                return
            visited.add(key)
        coeff = a[depth]
        for x in family.sets[depth]:
            if blocked >> x & 1:
                continue
            prefix.append(x)
            walk(depth + 1, (shift + coeff * x) % p)
            prefix.pop()

    walk(0, 0)
    return ResidueSet(family.modulus, result)


# ===== POLYNOMIAL RESTRICTIONS =====
def _distinct_grid(family: SetFamily) -> np.ndarray:
    shape = family.sizes
    keep = np.ones(shape, dtype=bool)
    for i, j in combinations(range(family.n), 2):
        xi = np.asarray(family.sets[i]).reshape([-1 if t == i else 1 for t in range(family.n)])
        xj = np.asarray(family.sets[j]).reshape([-1 if t == j else 1 for t in range(family.n)])
        keep &= xi != xj
    return keep


def _linear_grid(coeffs: Sequence[int], family: SetFamily) -> np.ndarray:
    p = family.modulus.p
    total = np.zeros(family.sizes, dtype=np.int64)
    for axis, (c, values) in enumerate(zip(coeffs, family.sets)):
        view = [1] * family.n
        view[axis] = len(values)
        total = (total + (c * np.asarray(values, dtype=np.int64) % p).reshape(view)) % p
    return total


def polynomial_restricted_sumset(
    family: SetFamily, poly: Optional[SparsePolynomial] = None
) -> ResidueSet:
    """All x_1 + ... + x_n with x_i in A_i and P(x) != 0."""
    if poly is None:
        return linear_sumset(CoefficientVector.ones(family.n, family.modulus), family)
    _check_polynomial(poly, family)
    keep = poly.evaluate_grid(family.sets) != 0
    sums = _linear_grid([1] * family.n, family)
    return ResidueSet.from_elements(np.unique(sums[keep]).tolist(), family.modulus)


def restricted_value_set(
    f: ValuePolynomial,
    family: SetFamily,
    poly: Optional[SparsePolynomial] = None,
    distinct: bool = False,
) -> ResidueSet:
    """All f(x) with x_i in A_i, P(x) != 0 and, if asked, distinct x_i."""
    if f.n != family.n:
        raise ArityError("value polynomial arity does not match the set family")
    if f.a.modulus.p != family.modulus.p:
        raise ModulusError("value polynomial and sets live in different fields")
    values = f.as_polynomial().evaluate_grid(family.sets)
    keep = np.ones(family.sizes, dtype=bool)
    if poly is not None:
        _check_polynomial(poly, family)
        keep &= poly.evaluate_grid(family.sets) != 0
    if distinct:
        keep &= _distinct_grid(family)
    return ResidueSet.from_elements(np.unique(values[keep]).tolist(), family.modulus)


# ===== NAIVE ORACLES =====
def naive_linear_sumset(
    a: CoefficientVector,
    family: SetFamily,
    distinct: bool = False,
    restriction: Optional[PairRestriction] = None,
) -> ResidueSet:
    """Nested-loop reference for restricted_linear_sumset."""
    p = family.modulus.p
    found: set[int] = set()
    for point in product(*family.sets):
        if distinct and len(set(point)) != len(point):
            continue
        if isinstance(restriction, Distinct) and len(set(point)) != len(point):
            continue
        if isinstance(restriction, ValueCollision):
            images = [restriction.images[x] for x in point]
            if len(set(images)) != len(images):
                continue
        if isinstance(restriction, Difference) and any(
            (point[i] - point[j]) % p in s for (i, j), s in restriction.forbidden.items()
        ):
            continue
        found.add(sum(c * x for c, x in zip(a, point)) % p)
    return ResidueSet.from_elements(found, family.modulus)


def naive_polynomial_sumset(family: SetFamily, poly: SparsePolynomial) -> ResidueSet:
    p = family.modulus.p
    found = {sum(pt) % p for pt in product(*family.sets) if poly.evaluate(pt) != 0}
    return ResidueSet.from_elements(found, family.modulus)


def naive_value_set(
    f: ValuePolynomial,
    family: SetFamily,
    poly: Optional[SparsePolynomial] = None,
    distinct: bool = False,
) -> ResidueSet:
    full_f = f.as_polynomial()
    found = {
        full_f.evaluate(pt)
        for pt in product(*family.sets)
        if (poly is None or poly.evaluate(pt) != 0) and (not distinct or len(set(pt)) == len(pt))
    }
    return ResidueSet.from_elements(found, family.modulus)
