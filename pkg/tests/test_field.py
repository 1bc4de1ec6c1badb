"""Tests for arithmetic in Z/pZ."""

import pytest

from restricted_sumsets.core.field import (
    FieldElement,
    PrimeModulus,
    factorial,
    falling_factorial,
    falling_factorial_mod,
    least_residue,
)
from restricted_sumsets.errors import ModulusError, PreconditionError


class TestPrimeModulus:
    @pytest.mark.parametrize("p", [2, 3, 7, 101, 2_147_483_647])
    def test_accepts_primes(self, p: int) -> None:
        assert PrimeModulus(p).p == p

    @pytest.mark.parametrize("p", [0, 1, 4, 9, 91, 2**31])
    def test_rejects_non_primes_and_out_of_range(self, p: int) -> None:
        with pytest.raises(ModulusError):
            PrimeModulus(p)

    def test_inverse_of_every_nonzero_residue(self, f13: PrimeModulus) -> None:
        for x in range(1, 13):
            assert x * f13.inverse(x) % 13 == 1

    def test_zero_has_no_inverse(self, f7: PrimeModulus) -> None:
        with pytest.raises(ZeroDivisionError):
            f7.inverse(0)


class TestFieldElement:
    def test_normalises_value(self, f7: PrimeModulus) -> None:
        assert FieldElement(-1, f7).value == 6
        assert f7.element(15) == 1

    def test_arithmetic(self, f7: PrimeModulus) -> None:
        three = f7.element(3)
        assert three + 5 == 1
        assert 5 - three == 2
        assert three * three == 2
        assert three ** -1 == 5
        assert three / 3 == 1
        assert -three == 4

    def test_mixing_fields_fails(self, f5: PrimeModulus, f7: PrimeModulus) -> None:
        with pytest.raises(ModulusError):
            f5.element(1) + f7.element(1)

    def test_signed_representative(self, f7: PrimeModulus) -> None:
        assert f7.element(6).signed() == -1
        assert f7.element(3).signed() == 3
        assert f7.element(4).signed() == -3

    def test_truthiness(self, f7: PrimeModulus) -> None:
        assert not f7.zero
        assert f7.one


class TestFactorials:
    def test_falling_factorial_integers(self) -> None:
        assert falling_factorial(5, 3) == 60
        assert falling_factorial(7, 0) == 1
        assert falling_factorial(3, 5) == 0
        assert falling_factorial(-2, 2) == 6

    def test_falling_factorial_field(self, f7: PrimeModulus) -> None:
        assert falling_factorial(f7.element(5), 3) == 60 % 7
        assert falling_factorial_mod(5, 3, 7) == 60 % 7
        assert falling_factorial_mod(-3, 2, 7) == 12 % 7

    def test_negative_length_rejected(self) -> None:
        with pytest.raises(PreconditionError):
            falling_factorial(4, -1)

    def test_factorial_matches_wilson(self, f13: PrimeModulus) -> None:
        assert factorial(12, f13) == -1
        assert factorial(0, f13) == 1

    def test_factorial_range(self, f7: PrimeModulus) -> None:
        with pytest.raises(PreconditionError):
            factorial(7, f7)

    def test_least_residue(self) -> None:
        assert least_residue(-3, 5) == 2
        assert least_residue(7, 1) == 0
        with pytest.raises(PreconditionError):
            least_residue(3, 0)
