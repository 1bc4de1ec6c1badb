"""Tests for the bound formulas and the floor-sum identity."""

from itertools import product

import pytest

from restricted_sumsets.constants import TheoremId
from restricted_sumsets.core import bounds
from restricted_sumsets.errors import PreconditionError


class TestResolveKind:
    def test_short_and_long_names(self) -> None:
        assert bounds.resolve_kind("dh") is TheoremId.DIAS_DA_SILVA_HAMIDOUNE
        assert bounds.resolve_kind("thm_1_2") is TheoremId.THM_1_2
        assert bounds.resolve_kind("cor5.2") is TheoremId.COR_5_2
        assert bounds.resolve_kind(TheoremId.THM_1_3) is TheoremId.THM_1_3

    def test_unknown(self) -> None:
        with pytest.raises(PreconditionError):
            bounds.resolve_kind("thm9.9")


class TestClassicalBounds:
    def test_cauchy_davenport(self) -> None:
        assert bounds.classical_bound("cauchy_davenport", 5, [2, 2]) == 3
        assert bounds.classical_bound("cd", 5, [4, 4]) == 5

    def test_dias_da_silva_hamidoune(self) -> None:
        assert bounds.classical_bound("dh", 7, [4, 4], 2) == 5
        assert bounds.dh_bound(13, 3, 5) == 7

    def test_anr(self) -> None:
        assert bounds.classical_bound("anr", 13, [1, 2, 3]) == 1
        assert bounds.anr_bound(13, [2, 4]) == 4

    def test_anr_needs_increasing_sizes(self) -> None:
        with pytest.raises(PreconditionError):
            bounds.anr_bound(13, [3, 3])

    def test_dh_needs_common_size(self) -> None:
        with pytest.raises(PreconditionError):
            bounds.classical_bound("dh", 7, [3, 4])


class TestLinearRestrictedBounds:
    def test_conj_1_1_penalty(self) -> None:
        assert bounds.linear_restricted_bound("conj_1_1", 13, 2, [5, 5], [1, 12]) == 7
        assert bounds.conj_1_1_bound(7, 2, 5, [1, 6]) == 6
        assert bounds.conj_1_1_bound(7, 2, 5, [1, 1]) == 7

    def test_thm_1_1_range(self) -> None:
        assert bounds.thm_1_1_bound(7, 3, 4, [1, 1, 1]) == 4
        with pytest.raises(PreconditionError):
            bounds.thm_1_1_bound(5, 3, 4, [1, 1, 1])

    def test_thm_1_2(self) -> None:
        assert bounds.linear_restricted_bound("thm_1_2", 11, 3, [4, 4, 4], [1, 2, 3]) == 4
        assert bounds.thm_1_2_bound(11, [4, 5, 6], [1, 1, 1]) == 7

    def test_thm_1_2_hypotheses(self) -> None:
        with pytest.raises(PreconditionError):
            bounds.thm_1_2_bound(3, [4, 4, 4], [1, 1, 1])
        with pytest.raises(PreconditionError):
            bounds.thm_1_2_bound(11, [3, 4, 4], [1, 1, 1])

    def test_thm_1_2_proof_penalty(self) -> None:
        assert bounds.thm_1_2_bound(5, [4, 4], [1, 1]) == 5
        assert bounds.thm_1_2_bound(5, [4, 4], [1, 1], proof_penalty=True) == 4
        assert bounds.thm_1_2_bound(5, [4, 4], [1, 4]) == 4
        assert bounds.thm_1_2_bound(5, [4, 4], [1, 4], proof_penalty=True) == 5

    def test_eq_1_8(self) -> None:
        assert bounds.linear_restricted_bound("eq_1_8", 7, 3, [4, 4, 4], [1, 1, 1]) == 4

    def test_cor_1_1(self) -> None:
        assert bounds.cor_1_1_min_size(11) == 7
        assert bounds.cor_1_1_min_size(13) == 7
        assert bounds.cor_1_1_bound(11, 3, 7) == 11
        with pytest.raises(PreconditionError):
            bounds.cor_1_1_bound(11, 2, 7)
        with pytest.raises(PreconditionError):
            bounds.cor_1_1_bound(11, 3, 6)
        with pytest.raises(PreconditionError):
            bounds.cor_1_1_bound(7, 2, 5)

    def test_penalty_indicators(self) -> None:
        assert bounds.sum_zero_penalty(7, [3, 4]) == 1
        assert bounds.sum_zero_penalty(7, [3, 4, 1]) == 0
        assert bounds.equal_penalty(7, [3, 10]) == 1

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_penalties_ignore_scaling_and_order(self, p: int) -> None:
        for a1, a2 in product(range(1, p), repeat=2):
            for penalty in (bounds.sum_zero_penalty, bounds.equal_penalty):
                base = penalty(p, [a1, a2])
                assert penalty(p, [a2, a1]) == base
                for c in range(1, p):
                    assert penalty(p, [c * a1 % p, c * a2 % p]) == base

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_conj_1_1_matches_thm_1_2_on_common_set(self, p: int) -> None:
        for n in range(1, 5):
            if (n - 1) ** 2 > p:
                continue
            for a in product(range(1, p), repeat=min(n, 2)):
                coeffs = list(a) + [1] * (n - len(a))
                for size in range(max(1, 2 * n - 2), p + 1):
                    expected = bounds.conj_1_1_bound(p, n, size, coeffs)
                    assert bounds.thm_1_2_bound(p, [size] * n, coeffs) == expected


class TestPolynomialBounds:
    def test_thm_1_3(self) -> None:
        assert bounds.polynomial_restricted_bound("thm_1_3", 11, [3, 3, 3], degree=2) == 3
        assert bounds.thm_1_3_bound(11, [3, 3, 3], 2, exponents=(2, 0, 0)) == 3

    def test_thm_1_3_exponent_checks(self) -> None:
        with pytest.raises(PreconditionError):
            bounds.thm_1_3_bound(11, [3, 3, 3], 2, exponents=(3, 0, 0))
        with pytest.raises(PreconditionError):
            bounds.thm_1_3_bound(11, [2, 3, 3], 2, exponents=(2, 0, 0))

    def test_cor_1_2_collision(self) -> None:
        assert bounds.polynomial_restricted_bound("cor_1_2_f", 13, [5, 5], m=1) == 7
        assert bounds.cor_1_2_f_bound(13, 1, 5, 0) == 5
        with pytest.raises(PreconditionError):
            bounds.cor_1_2_f_bound(13, 2, 5, 0)

    def test_cor_1_2_difference(self) -> None:
        assert bounds.polynomial_restricted_bound("cor_1_2_diff", 13, [5, 5], m=1) == 7
        with pytest.raises(PreconditionError):
            bounds.cor_1_2_diff_bound(13, 2, 5, 1, max_forbidden=2)

    def test_cor_1_3(self) -> None:
        assert bounds.polynomial_restricted_bound("cor_1_3", 13, [4, 4], m=[1, 1]) == 3
        assert bounds.cor_1_3_bound(13, [4, 4], [2, 0]) == 3
        with pytest.raises(PreconditionError):
            bounds.cor_1_3_bound(13, [4, 4], [4, 0])


class TestValueSetBounds:
    def test_thm_5_1(self) -> None:
        assert bounds.value_set_bound("thm_5_1_i", 7, [3, 3], 2) == 3
        assert bounds.value_set_bound("thm_5_1_ii", 7, [3, 3], 2) == 2
        with pytest.raises(PreconditionError):
            bounds.thm_5_1_ii_bound(7, [3, 3], 1)

    def test_thm_5_2(self) -> None:
        assert bounds.value_set_bound("thm_5_2", 13, [3, 3], 2, exponents=(1, 1)) == 1
        assert bounds.thm_5_2_bound(13, [5, 5], 2, (0, 1)) == 4
        with pytest.raises(PreconditionError):
            bounds.thm_5_2_bound(13, [3, 3], 2, (3, 0))

    def test_cor_5_1(self) -> None:
        assert bounds.value_set_bound("cor_5_1", 7, [3, 3], 2) == 2
        assert bounds.cor_5_1_bound(13, [4, 4, 4], 1) == 7 - 3

    def test_cor_5_2(self) -> None:
        assert bounds.value_set_bound("cor_5_2", 13, [7, 7, 7, 7], 2) == 7
        with pytest.raises(PreconditionError):
            bounds.cor_5_2_bound(13, 3, 2, 1)

    def test_conj_5_2(self) -> None:
        assert bounds.value_set_bound("conj_5_2", 13, [5, 5], 2, a=[1, 1]) == 4
        assert bounds.conj_5_2_bound(5, 2, 5, 2, [1, 4]) == 4
        with pytest.raises(PreconditionError):
            bounds.conj_5_2_bound(13, 1, 5, 2, [1])


class TestFloorSums:
    def test_delta_examples(self) -> None:
        assert bounds.delta_nk(4, 2) == 2
        assert bounds.delta_nk(5, 1) == 10
        assert bounds.delta_nk(3, 5) == 0

    def test_delta_closed_form(self) -> None:
        for n in range(1, 51):
            for k in range(1, 51):
                assert bounds.delta_nk(n, k) == sum((i - 1) // k for i in range(1, n + 1))

    def test_r_kmn(self) -> None:
        assert bounds.r_kmn(2, 7, 4) == 0
        assert bounds.r_kmn(3, 4, 5) == 1
        assert all(bounds.r_kmn(1, m, 3) == 0 for m in range(-5, 6))

    def test_lemma_5_1_examples(self) -> None:
        assert bounds.lemma_5_1_sides(7, 4, 2) == (8, 8)
        assert bounds.lemma_5_1_sides(0, 1, 1) == (-1, -1)

    def test_lemma_5_1_at_m_equals_n(self) -> None:
        for n in range(1, 13):
            for k in range(1, 13):
                lhs, rhs = bounds.lemma_5_1_sides(n, n, k)
                assert lhs == rhs == bounds.delta_nk(n, k)

    def test_lemma_5_1_identity(self) -> None:
        for m in range(-100, 101):
            for n in range(1, 13):
                for k in range(1, 13):
                    lhs, rhs = bounds.lemma_5_1_sides(m, n, k)
                    assert lhs == rhs, (m, n, k)
