"""Tests for sparse polynomial arithmetic."""

import random

import numpy as np
import pytest

from restricted_sumsets.constants import RingKind
from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.core.poly import (
    SparsePolynomial,
    difference_product,
    falling_factorial_polynomial,
    linear_form_power,
    multiply,
    power,
    pstar_transform,
    random_polynomial,
)
from restricted_sumsets.errors import ArityError, ExpansionLimitError, PreconditionError


def poly(arity: int, terms: dict[tuple[int, ...], int], modulus: PrimeModulus | None = None) -> SparsePolynomial:
    return SparsePolynomial(arity, terms, modulus)


def integer_polynomial(rng: random.Random, arity: int, terms: int = 4) -> SparsePolynomial:
    return poly(
        arity,
        {tuple(rng.randint(0, 3) for _ in range(arity)): rng.randint(-20, 20) for _ in range(terms)},
    )


class TestCanonicalForm:
    def test_drops_zero_and_reduces(self, f5: PrimeModulus) -> None:
        p = poly(2, {(1, 0): 5, (0, 1): 7, (0, 0): 0}, f5)
        assert dict(p.terms) == {(0, 1): 2}
        assert p.ring is RingKind.MOD_P
        assert p.p == 5

    def test_integer_ring(self) -> None:
        p = poly(1, {(2,): -3})
        assert p.ring is RingKind.INTEGER
        assert p.p == 0
        assert p.coefficient((2,)) == -3

    def test_rejects_bad_exponents(self) -> None:
        with pytest.raises(ArityError):
            poly(2, {(1,): 1})
        with pytest.raises(ArityError):
            poly(1, {(-1,): 1})

    def test_degree(self) -> None:
        assert SparsePolynomial.zero(2).degree == -1
        assert poly(2, {(2, 1): 1, (0, 0): 3}).degree == 3


class TestMultiply:
    def test_difference_of_squares(self) -> None:
        x1 = SparsePolynomial.variable(0, 2)
        x2 = SparsePolynomial.variable(1, 2)
        assert (x1 - x2) * (x1 + x2) == poly(2, {(2, 0): 1, (0, 2): -1})

    def test_cross_term_vanishes_mod_two(self) -> None:
        f2 = PrimeModulus(2)
        s = SparsePolynomial.linear([1, 1], f2)
        assert power(s, 2) == poly(2, {(2, 0): 1, (0, 2): 1}, f2)

    def test_identity(self, f7: PrimeModulus) -> None:
        p = poly(2, {(1, 2): 3, (0, 0): 4}, f7)
        assert p * SparsePolynomial.constant(1, 2, f7) == p

    def test_ring_mismatch(self, f5: PrimeModulus, f7: PrimeModulus) -> None:
        with pytest.raises(ArityError):
            SparsePolynomial.variable(0, 1, f5) * SparsePolynomial.variable(0, 1, f7)
        with pytest.raises(ArityError):
            SparsePolynomial.variable(0, 1) * SparsePolynomial.variable(0, 2)

    def test_term_cap(self) -> None:
        s = SparsePolynomial.linear([1, 1, 1])
        with pytest.raises(ExpansionLimitError):
            multiply(power(s, 3), power(s, 3), max_terms=5)
        with pytest.raises(ExpansionLimitError):
            linear_form_power(3, 10, max_terms=10)

    def test_reduction_is_ring_homomorphism(self, rng: random.Random) -> None:
        for _ in range(100):
            a = integer_polynomial(rng, 2)
            b = integer_polynomial(rng, 2)
            for modulus in (PrimeModulus(2), PrimeModulus(5), PrimeModulus(13)):
                assert (a * b).reduce(modulus) == a.reduce(modulus) * b.reduce(modulus)
                assert (a + b).reduce(modulus) == a.reduce(modulus) + b.reduce(modulus)

    def test_commutative_and_associative(self, f11: PrimeModulus, rng: random.Random) -> None:
        for _ in range(100):
            a, b, c = (random_polynomial(rng, 3, rng.randint(0, 3), f11, exact_degree=False) for _ in range(3))
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
        for _ in range(50):
            a, b, c = (integer_polynomial(rng, 2) for _ in range(3))
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)


class TestCoefficients:
    def test_vandermonde_leading_term(self) -> None:
        assert difference_product(3).coefficient((0, 1, 2)) == 1

    def test_absent_monomial(self) -> None:
        assert poly(2, {(2, 1): 1, (0, 0): 3}).coefficient((1, 1)) == 0

    def test_square_of_difference(self) -> None:
        x1 = SparsePolynomial.variable(0, 2)
        x2 = SparsePolynomial.variable(1, 2)
        assert ((x1 - x2) ** 2).coefficient((1, 1)) == -2

    def test_difference_product_small_cases(self) -> None:
        assert difference_product(2) == poly(2, {(0, 1): 1, (1, 0): -1})
        cube = difference_product(2, 3)
        assert cube.coefficient((1, 2)) == -3
        assert cube.coefficient((2, 1)) == 3

    def test_difference_product_needs_two_variables(self) -> None:
        with pytest.raises(PreconditionError):
            difference_product(1)


class TestPStar:
    def test_unique_top_monomial(self) -> None:
        p = poly(2, {(2, 1): 1, (1, 1): 1, (0, 0): 3})
        assert pstar_transform(p) == poly(2, {(2, 1): 1, (1, 1): -1})

    def test_linear_is_fixed(self, f7: PrimeModulus) -> None:
        p = SparsePolynomial.linear([2, 5, 1], f7)
        assert pstar_transform(p) == p

    def test_square_mod_five(self, f5: PrimeModulus) -> None:
        assert pstar_transform(poly(1, {(2,): 1}, f5)) == poly(1, {(2,): 1, (1,): 4}, f5)

    def test_top_coefficients_preserved(self, f13: PrimeModulus, rng: random.Random) -> None:
        for _ in range(50):
            p = random_polynomial(rng, 3, rng.randint(0, 4), f13)
            star = pstar_transform(p)
            assert star.top_terms() == p.top_terms()

    def test_zero_rejected(self) -> None:
        with pytest.raises(PreconditionError):
            pstar_transform(SparsePolynomial.zero(2))

    def test_falling_factorial_polynomial(self) -> None:
        assert falling_factorial_polynomial(0, 3, 1) == poly(1, {(3,): 1, (2,): -3, (1,): 2})


class TestEvaluation:
    def test_evaluate_matches_grid(self, f11: PrimeModulus, rng: random.Random) -> None:
        sets = [[0, 3, 7], [1, 2], [5, 6, 9, 10]]
        for _ in range(20):
            p = random_polynomial(rng, 3, rng.randint(0, 4), f11, exact_degree=False)
            grid = p.evaluate_grid(sets)
            for i, x in enumerate(sets[0]):
                for j, y in enumerate(sets[1]):
                    for k, z in enumerate(sets[2]):
                        assert grid[i, j, k] == p.evaluate((x, y, z))

    def test_zero_grid(self, f5: PrimeModulus) -> None:
        grid = SparsePolynomial.zero(2, f5).evaluate_grid([[0, 1], [2]])
        assert np.array_equal(grid, np.zeros((2, 1), dtype=np.int64))

    def test_grid_cap(self, f5: PrimeModulus) -> None:
        p = SparsePolynomial.linear([1, 1], f5)
        with pytest.raises(ExpansionLimitError):
            p.evaluate_grid([[0, 1, 2], [0, 1, 2]], max_points=8)

    def test_integer_evaluation(self) -> None:
        assert poly(2, {(2, 1): 2, (0, 0): -1}).evaluate((3, -2)) == -37

    def test_random_polynomial_degree(self, f7: PrimeModulus, rng: random.Random) -> None:
        for degree in range(5):
            assert random_polynomial(rng, 2, degree, f7).degree == degree
