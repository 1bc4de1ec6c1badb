"""Tests for pairings, witness vectors, the Nullstellensatz search and certificates."""

import random
from math import comb

import pytest
from sympy import primerange

from restricted_sumsets.config import get_settings
from restricted_sumsets.constants import WitnessRoute
from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.core.poly import SparsePolynomial, difference_product, random_polynomial
from restricted_sumsets.core.sumset import CoefficientVector, SetFamily
from restricted_sumsets.core.witness import (
    DistinctSumCertificate,
    ExceptionalCase,
    Permutation,
    PolynomialCertificate,
    WitnessVector,
    certificate_check,
    cn_witness_search,
    delta_indicator,
    f_eval,
    find_witness,
    find_witness_bruteforce,
    find_witness_recursive,
    lemma_2_3_classify,
    nullstellensatz_exponents,
    pairing_permutation,
    pairs_nonzero,
    witness_conditions,
)
from restricted_sumsets.errors import (
    ArityError,
    ExpansionLimitError,
    PreconditionError,
    WitnessNotFoundError,
)

SMALL_PRIMES = (3, 5, 7, 11, 13)


def random_coefficients(rng: random.Random, modulus: PrimeModulus, n: int) -> CoefficientVector:
    """Random coefficients, half of them drawn from a pair {b, -b}."""
    p = modulus.p
    if rng.random() < 0.5:
        b = rng.randrange(1, p)
        return CoefficientVector(modulus, tuple(rng.choice((b, p - b)) for _ in range(n)))
    return CoefficientVector(modulus, tuple(rng.randrange(1, p) for _ in range(n)))


def random_composition(rng: random.Random, total: int, parts: int, ceiling: int) -> list[int]:
    while True:
        values = [rng.randint(0, ceiling) for _ in range(parts - 1)]
        last = total - sum(values)
        if 0 <= last <= ceiling:
            return values + [last]


class TestDeltaIndicator:
    def test_examples(self, f5: PrimeModulus, f7: PrimeModulus) -> None:
        result = delta_indicator(CoefficientVector(f5, (1, 4)))
        assert result.delta == 1
        assert result.counts == (1, 1)
        assert delta_indicator(CoefficientVector(f5, (1, 1))).delta == 0
        assert delta_indicator(CoefficientVector(f7, (1, 6, 1, 6))).delta == 0
        assert delta_indicator(CoefficientVector(f7, (1, 6, 1))).delta == 0
        assert delta_indicator(CoefficientVector(f7, (2, 5, 2, 2))).delta == 1

    def test_invariant_under_permutation_and_scaling(self, rng: random.Random) -> None:
        for _ in range(300):
            modulus = PrimeModulus(rng.choice(SMALL_PRIMES))
            a = random_coefficients(rng, modulus, rng.randint(1, 6))
            order = list(range(a.n))
            rng.shuffle(order)
            base = delta_indicator(a).delta
            assert delta_indicator(a.permuted(order)).delta == base
            assert delta_indicator(a.scaled(rng.randrange(1, modulus.p))).delta == base


class TestPairingPermutation:
    def test_examples(self, f5: PrimeModulus) -> None:
        assert pairing_permutation(CoefficientVector(f5, (1, 1))).images == (0, 1)
        assert pairing_permutation(CoefficientVector(f5, (1, 4))).images == (0, 1)
        sigma = pairing_permutation(CoefficientVector(f5, (1, 4, 1)))
        assert sigma.images == (0, 2, 1)
        assert pairs_nonzero(CoefficientVector(f5, (1, 4, 1)), sigma)

    def test_predicate_always_holds(self, rng: random.Random) -> None:
        for _ in range(500):
            modulus = PrimeModulus(rng.choice(SMALL_PRIMES))
            a = random_coefficients(rng, modulus, rng.randint(1, 8))
            assert pairs_nonzero(a, pairing_permutation(a)), a.coeffs

    def test_permutation_type(self) -> None:
        sigma = Permutation((1, 0, 2))
        assert sigma.sign == -1
        assert sigma.one_based() == [2, 1, 3]
        assert Permutation((2, 0, 1)).sign == 1
        with pytest.raises(ArityError):
            Permutation((0, 0, 1))


class TestAlternatingSum:
    def test_two_variables(self, f5: PrimeModulus) -> None:
        a = CoefficientVector(f5, (1, 2))
        assert f_eval((1, 1), a, (0, 1)).value == 4

    def test_single_variable(self, f7: PrimeModulus) -> None:
        assert f_eval((3,), CoefficientVector(f7, (5,)), (2,)).value == 1

    def test_two_variable_difference(self, rng: random.Random) -> None:
        for _ in range(100):
            modulus = PrimeModulus(rng.choice(SMALL_PRIMES))
            a = random_coefficients(rng, modulus, 2)
            k = (rng.randrange(20), rng.randrange(20))
            diff = f_eval(k, a, (1, 0)) - f_eval(k, a, (0, 1))
            assert diff == a[0] + a[1]

    def test_exceptional_constant(self) -> None:
        for p in primerange(8, 102):
            modulus = PrimeModulus(p)
            a = CoefficientVector(modulus, (1, 1, 1, -1))
            value = f_eval((5, 5, 5, p - 4), a, (0, 2, 3, 1))
            assert value.value == -480 % p
            assert value

    def test_length_mismatch(self, f7: PrimeModulus) -> None:
        with pytest.raises(ArityError):
            f_eval((1, 2), CoefficientVector.ones(3, f7), (0, 1, 2))

    def test_arity_cap(self, f7: PrimeModulus, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("RSUMSET_MAX_PERMUTATION_ARITY", "2")
        get_settings.cache_clear()
        with pytest.raises(ExpansionLimitError):
            f_eval((1, 1, 1), CoefficientVector.ones(3, f7), (0, 1, 2))


class TestWitnessVectors:
    def test_vector_validation(self) -> None:
        assert list(WitnessVector((1, 0))) == [1, 0]
        with pytest.raises(PreconditionError):
            WitnessVector((2, 0))
        with pytest.raises(PreconditionError):
            WitnessVector((0, 0))

    def test_single_variable(self, f7: PrimeModulus) -> None:
        assert find_witness((4,), CoefficientVector(f7, (3,))).values == (0,)

    def test_two_variables(self, f7: PrimeModulus) -> None:
        witness = find_witness((3, 3), CoefficientVector.ones(2, f7))
        assert witness.values in {(1, 0), (0, 1)}
        assert f_eval((3, 3), CoefficientVector.ones(2, f7), witness.values)

    def test_exceptional_configuration(self, f11: PrimeModulus) -> None:
        a = CoefficientVector(f11, (1, 1, 1, 10))
        k = (5, 5, 5, 7)
        conditions = witness_conditions(k, a)
        assert conditions.route is WitnessRoute.EXCEPTIONAL
        witness = find_witness(k, a)
        assert witness.values == (0, 2, 3, 1)
        assert f_eval(k, a, witness.values).value == -480 % 11

    def test_strict_pair(self, f7: PrimeModulus) -> None:
        a = CoefficientVector(f7, (1, 6, 1, 1))
        k = (0, 1, 3, 3)
        loose = witness_conditions(k, a)
        assert loose.route is WitnessRoute.CANCELLING_PAIR
        assert loose.pair == (1, 2)
        assert not witness_conditions(k, a, strict=True).conforming
        with pytest.raises(WitnessNotFoundError):
            find_witness(k, a, strict=True)
        witness = find_witness(k, a)
        assert f_eval(k, a, witness.values)

    def test_small_prime_not_conforming(self, f5: PrimeModulus) -> None:
        conditions = witness_conditions((1, 1, 1, 1), CoefficientVector.ones(4, f5))
        assert not conditions.conforming
        assert conditions.reason == "needs p > 2n-3"

    def test_recursive_and_bruteforce_agree(self, rng: random.Random) -> None:
        checked = 0
        for _ in range(1500):
            modulus = PrimeModulus(rng.choice(SMALL_PRIMES))
            n = rng.randint(1, 4)
            a = random_coefficients(rng, modulus, n)
            k = [rng.randrange(modulus.p) for _ in range(n)]
            if not witness_conditions(k, a).conforming:
                continue
            checked += 1
            recursive = find_witness_recursive(k, a)
            brute = find_witness_bruteforce(k, a)
            assert recursive is not None, (k, a.coeffs)
            assert brute is not None, (k, a.coeffs)
            for witness in (recursive, brute):
                assert sum(witness.values) == comb(n, 2)
                assert all(0 <= m <= max(2 * n - 3, 0) for m in witness.values)
                assert f_eval(k, a, witness.values)
        assert checked > 500


class TestLemma23:
    def test_exceptional(self, f11: PrimeModulus) -> None:
        result = lemma_2_3_classify((5, 5, 5, 7), CoefficientVector(f11, (1, 1, 1, 10)))
        assert isinstance(result, ExceptionalCase)
        assert result.equal_indices == (0, 1, 2)
        assert result.odd_index == 3

    def test_pair(self, f13: PrimeModulus) -> None:
        assert lemma_2_3_classify((5, 5, 5, 8), CoefficientVector(f13, (1, 1, 1, 12))) == (0, 3)

    def test_six_variables(self) -> None:
        modulus = PrimeModulus(29)
        a = CoefficientVector(modulus, (1, 1, 1, 28, 28, 28))
        assert lemma_2_3_classify((9,) * 6, a) == (0, 3)

    def test_preconditions(self, f5: PrimeModulus, f13: PrimeModulus) -> None:
        with pytest.raises(PreconditionError):
            lemma_2_3_classify((3, 3), CoefficientVector(f5, (1, 4)))
        with pytest.raises(PreconditionError):
            lemma_2_3_classify((5, 5, 5, 5), CoefficientVector.ones(4, f13))
        with pytest.raises(PreconditionError):
            lemma_2_3_classify((4, 5, 5, 8), CoefficientVector(f13, (1, 1, 1, 12)))


class TestNullstellensatz:
    def test_difference(self, f5: PrimeModulus) -> None:
        poly = SparsePolynomial.variable(0, 2, f5) - SparsePolynomial.variable(1, 2, f5)
        family = SetFamily.common([0, 1], 2, f5)
        assert cn_witness_search(poly, family) == (0, 1)
        assert nullstellensatz_exponents(poly, family.sizes) == (0, 1)

    def test_vanishing_polynomial(self, f5: PrimeModulus) -> None:
        x1 = SparsePolynomial.variable(0, 2, f5)
        poly = x1 * (x1 - SparsePolynomial.constant(1, 2, f5))
        family = SetFamily.build([[0, 1], [0, 2, 3]], f5)
        assert cn_witness_search(poly, family) is None
        assert nullstellensatz_exponents(poly, family.sizes) is None

    def test_staircase(self, f7: PrimeModulus) -> None:
        family = SetFamily.build([[0], [0, 1], [0, 1, 2]], f7)
        point = cn_witness_search(difference_product(3, 1, f7), family)
        assert point is not None
        assert len(set(point)) == 3

    def test_never_misses_when_certified(self, rng: random.Random) -> None:
        certified = 0
        for _ in range(1000):
            modulus = PrimeModulus(rng.choice((5, 7, 11, 13)))
            n = rng.randint(1, 3)
            poly = random_polynomial(rng, n, rng.randint(0, 4), modulus)
            family = SetFamily.build(
                [rng.sample(range(modulus.p), rng.randint(1, modulus.p)) for _ in range(n)],
                modulus,
            )
            if nullstellensatz_exponents(poly, family.sizes) is None:
                continue
            certified += 1
            point = cn_witness_search(poly, family)
            assert point is not None
            assert poly.evaluate(point) != 0
        assert certified > 100


class TestCertificates:
    def test_polynomial_example(self, f7: PrimeModulus) -> None:
        poly = SparsePolynomial.variable(0, 2, f7) * SparsePolynomial.variable(1, 2, f7)
        lhs, rhs = certificate_check("thm_1_3", PolynomialCertificate(poly, (2, 1)))
        assert lhs == rhs == 2

    def test_polynomial_homogeneous(self, f11: PrimeModulus) -> None:
        poly = SparsePolynomial(2, {(2, 1): 3, (1, 2): 5}, f11)
        lhs, rhs = certificate_check("thm_1_3", PolynomialCertificate(poly, (2, 1)))
        assert lhs == rhs == 2 * 3

    def test_distinct_sum_example(self, f11: PrimeModulus) -> None:
        instance = DistinctSumCertificate((4, 4), CoefficientVector(f11, (1, 2)))
        lhs, rhs = certificate_check("thm_1_2", instance)
        assert lhs == rhs
        assert rhs

    def test_distinct_sum_random(self, rng: random.Random) -> None:
        for _ in range(500):
            p = rng.choice((5, 7, 11, 13))
            modulus = PrimeModulus(p)
            n = rng.randint(2, 4 if p > 5 else 3)
            m = random_composition(rng, comb(n, 2), n, 2 * n - 3)
            while True:
                sizes = tuple(rng.randint(mj + 1, p) for mj in m)
                if 0 <= sum(sizes) - n * n < p:
                    break
            a = CoefficientVector(modulus, tuple(rng.randrange(1, p) for _ in range(n)))
            lhs, rhs = certificate_check("thm_1_2", DistinctSumCertificate(sizes, a, tuple(m)))
            assert lhs == rhs, (p, sizes, a.coeffs, m)

    def test_polynomial_random(self, rng: random.Random) -> None:
        for _ in range(500):
            p = rng.choice((5, 7, 11, 13))
            modulus = PrimeModulus(p)
            n = rng.randint(1, 3)
            poly = random_polynomial(rng, n, rng.randint(0, 4), modulus)
            while True:
                m = tuple(rng.randrange(p) for _ in range(n))
                if 0 <= sum(m) - poly.degree < p:
                    break
            lhs, rhs = certificate_check("thm_1_3", PolynomialCertificate(poly, m))
            assert lhs == rhs, (p, poly, m)

    def test_certificate_preconditions(self, f5: PrimeModulus) -> None:
        with pytest.raises(PreconditionError):
            certificate_check(
                "thm_1_2", DistinctSumCertificate((5, 5, 5), CoefficientVector.ones(3, f5), (1, 1, 1))
            )
        poly = SparsePolynomial.variable(0, 1, f5)
        with pytest.raises(PreconditionError):
            certificate_check("thm_1_3", PolynomialCertificate(poly, (0,)))
