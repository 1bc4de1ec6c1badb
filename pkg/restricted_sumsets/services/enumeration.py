"""Instance enumeration for scan boxes.

Subsets are enumerated exhaustively, as intervals, or as seeded samples.
Exhaustive boxes can be cut down to one representative per orbit under
x -> c x + t for statements whose restriction and bound are affine
invariant, and coefficient vectors to one representative per orbit under
scaling (and coordinate permutation when all sets coincide).
"""

import random
from collections.abc import Iterator, Sequence
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Any

import structlog

from restricted_sumsets.constants import CoeffMode, GMode, SetSource, TheoremId
from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.core.poly import SparsePolynomial, random_polynomial
from restricted_sumsets.core.sumset import dilate_mask, mask_of, rotate
from restricted_sumsets.models.scan import ScanConfig, ScanInstance, TermList
from restricted_sumsets.services.registry import TheoremSpec, get_theorem_spec

logger = structlog.get_logger(__name__)

Family = tuple[tuple[int, ...], ...]


# ===== SETS =====
@lru_cache(maxsize=512)
def affine_representatives(p: int, size: int) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least member of every affine orbit of size-subsets."""
    seen: set[int] = set()
    reps: list[tuple[int, ...]] = []
    for combo in combinations(range(p), size):
        mask = mask_of(combo, p)
        if mask in seen:
            continue
        reps.append(combo)
        for c in range(1, p):
            dilated = dilate_mask(mask, c, p)
            for t in range(p):
                seen.add(rotate(dilated, t, p))
    return tuple(reps)


def subsets(p: int, size: int, canonical: bool) -> Sequence[tuple[int, ...]]:
    if canonical:
        return affine_representatives(p, size)
    return list(combinations(range(p), size))


def random_subset(rng: random.Random, p: int, size: int) -> tuple[int, ...]:
    return tuple(sorted(rng.sample(range(p), size)))


def size_tuples(spec: TheoremSpec, sizes: Sequence[int], n: int) -> list[tuple[int, ...]]:
    """Per-set size vectors of a family box."""
    tuples = list(product(sizes, repeat=n))
    if spec.increasing_sizes:
        tuples = [t for t in tuples if all(x < y for x, y in zip(t, t[1:]))]
    return tuples


def _families(spec: TheoremSpec, config: ScanConfig, p: int, n: int, sizes: Sequence[int]) -> Iterator[Family]:
    if spec.common_set:
        for size in sizes:
            if config.source is SetSource.INTERVALS:
                yield (tuple(range(size)),) * n
                continue
            canonical = config.canonical_sets and spec.affine_invariant
            for subset in subsets(p, size, canonical):
                yield (subset,) * n
        return
    for shape in size_tuples(spec, sizes, n):
        if config.source is SetSource.INTERVALS:
            yield tuple(tuple(range(s)) for s in shape)
            continue
        # one affine map acts on the whole family, so only A_1 is canonicalized
        canonical = config.canonical_sets and spec.affine_invariant
        choices = [subsets(p, shape[0], canonical)]
        choices += [subsets(p, s, False) for s in shape[1:]]
        yield from product(*choices)


# ===== COEFFICIENTS =====
def _scaled_sorted(coeffs: Sequence[int], c: int, p: int) -> tuple[int, ...]:
    return tuple(sorted(c * x % p for x in coeffs))


def coefficient_classes(p: int, n: int, mode: CoeffMode, spec: TheoremSpec) -> list[tuple[int, ...]]:
    """Coefficient vectors scanned for one (p, n)."""
    if spec.coefficient_free:
        return [(1,) * n]
    if mode is CoeffMode.ALL:
        return list(product(range(1, p), repeat=n))
    if spec.common_set:
        return [
            combo
            for combo in combinations_with_replacement(range(1, p), n)
            if combo == min(_scaled_sorted(combo, c, p) for c in range(1, p))
        ]
    return [(1, *rest) for rest in product(range(1, p), repeat=n - 1)]


# ===== RANDOM PARAMETERS =====
def _terms(poly: SparsePolynomial) -> TermList:
    return tuple(sorted(poly.terms.items()))


def _random_forbidden(
    rng: random.Random, p: int, pairs: Sequence[tuple[int, int]], caps: Sequence[int]
) -> tuple[tuple[int, int, tuple[int, ...]], ...]:
    forbidden = []
    for (i, j), cap in zip(pairs, caps):
        size = rng.randint(0, max(0, min(cap, p)))
        forbidden.append((i, j, tuple(sorted(rng.sample(range(p), size)))))
    return tuple(forbidden)


def _parameters(
    spec: TheoremSpec, config: ScanConfig, modulus: PrimeModulus, sets: Family, rng: random.Random
) -> Iterator[dict[str, Any]]:
    """Per-instance extras: k, m and the random restriction data."""
    p = modulus.p
    n = len(sets)

    def random_p() -> TermList:
        degree = rng.randint(0, config.degree)
        return _terms(random_polynomial(rng, n, degree, modulus))

    if spec.value_set:
        for k in config.ks:
            extra: dict[str, Any] = {"k": k}
            if config.g_mode is GMode.RANDOM:
                extra["g"] = _terms(random_polynomial(rng, n, k - 1, modulus, exact_degree=False))
            if spec.uses_poly:
                extra["poly"] = random_p()
            yield extra
        return
    if spec.uses_poly:
        yield {"poly": random_p()}
        return
    if not spec.uses_m:
        yield {}
        return
    for m in config.ms:
        if spec.theorem is TheoremId.COR_1_2_F:
            f = [rng.randrange(p) for _ in range(m)] + [rng.randrange(1, p)]
            yield {"m": m, "f": tuple(f)}
        elif spec.theorem is TheoremId.COR_1_2_DIFF:
            pairs = list(combinations(range(n), 2))
            yield {"m": m, "forbidden": _random_forbidden(rng, p, pairs, [2 * m - 1] * len(pairs))}
        else:
            pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
            caps = [min(m, (len(sets[i]) - 1) // (n - 1)) if n > 1 else 0 for i, _ in pairs]
            yield {"m": m, "forbidden": _random_forbidden(rng, p, pairs, caps)}


# ===== INSTANCES =====
def _explicit_families(config: ScanConfig, p: int) -> Iterator[Family]:
    assert config.sets is not None
    sets = tuple(tuple(sorted({v % p for v in s})) for s in config.sets)
    if len(sets) == 1:
        for n in config.ns:
            yield sets * n
    else:
        yield sets


def _box(
    spec: TheoremSpec, config: ScanConfig, p: int, rng: random.Random
) -> Iterator[tuple[Family, tuple[int, ...]]]:
    """(sets, coefficients) pairs of one prime."""
    if config.sets is not None:
        for sets in _explicit_families(config, p):
            for coeffs in coefficient_classes(p, len(sets), config.coeffs, spec):
                yield sets, coeffs
        return
    for n in config.ns:
        sizes = [s for s in (config.sizes or spec.default_sizes(p, n)) if s <= p]
        classes = coefficient_classes(p, n, config.coeffs, spec)
        if config.source is SetSource.RANDOM:
            shapes = [(s,) * n for s in sizes] if spec.common_set else size_tuples(spec, sizes, n)
            if not shapes:
                continue
            for _ in range(config.samples):
                shape = rng.choice(shapes)
                if spec.common_set:
                    sets: Family = (random_subset(rng, p, shape[0]),) * n
                else:
                    sets = tuple(random_subset(rng, p, s) for s in shape)
                yield sets, rng.choice(classes)
            continue
        for sets in _families(spec, config, p, n, sizes):
            for coeffs in classes:
                yield sets, coeffs


def generate_instances(config: ScanConfig) -> list[ScanInstance]:
    """Every instance of the box, in generation order.

    All randomness comes from one generator seeded with config.seed and is
    consumed in a fixed order, so the list is reproducible.
    """
    spec = get_theorem_spec(config.theorem)
    rng = random.Random(config.seed)
    instances: list[ScanInstance] = []
    for p in config.primes:
        modulus = PrimeModulus(p)
        for sets, coeffs in _box(spec, config, p, rng):
            for extra in _parameters(spec, config, modulus, sets, rng):
                instances.append(
                    ScanInstance(
                        theorem=spec.theorem,
                        p=p,
                        sets=sets,
                        coeffs=coeffs,
                        index=len(instances),
                        **extra,
                    )
                )
    logger.info("instances_generated", theorem=str(spec.theorem), instances=len(instances))
    return instances
