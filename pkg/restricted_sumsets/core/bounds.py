"""Lower-bound formulas for restricted sumsets and value sets.

Every bound is a pure integer function of the instance parameters. A
formula whose hypotheses fail raises PreconditionError; callers record such
instances as vacuous. Results are never clamped, so nonpositive bounds stay
visible in reports.
"""

from collections.abc import Sequence
from math import comb, isqrt
from typing import Optional, Union

from restricted_sumsets.constants import TheoremId
from restricted_sumsets.core.field import least_residue
from restricted_sumsets.errors import PreconditionError

Kind = Union[TheoremId, str]

# Long-form names accepted next to the short theorem ids
KIND_ALIASES: dict[str, TheoremId] = {
    "cauchy_davenport": TheoremId.CAUCHY_DAVENPORT,
    "dh": TheoremId.DIAS_DA_SILVA_HAMIDOUNE,
    "anr": TheoremId.ALON_NATHANSON_RUZSA,
    "conj_1_1": TheoremId.CONJ_1_1,
    "thm_1_1": TheoremId.THM_1_1,
    "thm_1_2": TheoremId.THM_1_2,
    "eq_1_8": TheoremId.EQ_1_8,
    "cor_1_1": TheoremId.COR_1_1,
    "thm_1_3": TheoremId.THM_1_3,
    "cor_1_2_f": TheoremId.COR_1_2_F,
    "cor_1_2_diff": TheoremId.COR_1_2_DIFF,
    "cor_1_3": TheoremId.COR_1_3,
    "thm_5_1_i": TheoremId.THM_5_1_I,
    "thm_5_1_ii": TheoremId.THM_5_1_II,
    "thm_5_2": TheoremId.THM_5_2,
    "cor_5_1": TheoremId.COR_5_1,
    "cor_5_2": TheoremId.COR_5_2,
    "conj_5_2": TheoremId.CONJ_5_2,
}


def resolve_kind(kind: Kind) -> TheoremId:
    """Map a theorem id or long-form alias to a TheoremId."""
    if isinstance(kind, TheoremId):
        return kind
    if kind in KIND_ALIASES:
        return KIND_ALIASES[kind]
    try:
        return TheoremId(kind)
    except ValueError:
        raise PreconditionError(f"unknown theorem id: {kind}") from None


def iverson(condition: bool) -> int:
    return 1 if condition else 0


def _require(condition: bool, message: str, **context: object) -> None:
    if not condition:
        raise PreconditionError(message, dict(context))


def common_size(sizes: Sequence[int]) -> int:
    _require(len(set(sizes)) == 1, "bound needs a common set size", sizes=list(sizes))
    return sizes[0]


def _positive_sizes(sizes: Sequence[int]) -> None:
    _require(bool(sizes), "at least one set size is needed")
    _require(all(s >= 1 for s in sizes), "set sizes must be positive", sizes=list(sizes))


# ===== INDICATORS =====
def sum_zero_penalty(p: int, a: Sequence[int]) -> int:
    """[[n = 2 & a_1 + a_2 = 0]] in Z/pZ."""
    _require(len(a) > 0, "empty coefficient vector")
    return iverson(len(a) == 2 and (a[0] + a[1]) % p == 0)


def equal_penalty(p: int, a: Sequence[int]) -> int:
    """[[n = 2 & a_1 = a_2]] in Z/pZ."""
    _require(len(a) > 0, "empty coefficient vector")
    return iverson(len(a) == 2 and (a[0] - a[1]) % p == 0)


# ===== CLASSICAL BOUNDS =====
def cauchy_davenport_bound(p: int, sizes: Sequence[int]) -> int:
    _positive_sizes(sizes)
    return min(p, sum(sizes) - len(sizes) + 1)


def dh_bound(p: int, n: int, size: int) -> int:
    """Bound for n distinct summands from one set of the given size."""
    _require(n >= 1 and size >= 1, "n and |A| must be positive", n=n, size=size)
    return min(p, n * size - n * n + 1)


def anr_bound(p: int, sizes: Sequence[int]) -> int:
    _positive_sizes(sizes)
    _require(
        all(x < y for x, y in zip(sizes, sizes[1:])),
        "sizes must be strictly increasing",
        sizes=list(sizes),
    )
    return min(p, sum(s - i for i, s in enumerate(sizes, start=1)) + 1)


def classical_bound(kind: Kind, p: int, sizes: Sequence[int], n: Optional[int] = None) -> int:
    theorem = resolve_kind(kind)
    if theorem is TheoremId.CAUCHY_DAVENPORT:
        return cauchy_davenport_bound(p, sizes)
    if theorem is TheoremId.DIAS_DA_SILVA_HAMIDOUNE:
        return dh_bound(p, n if n is not None else len(sizes), common_size(sizes))
    if theorem is TheoremId.ALON_NATHANSON_RUZSA:
        return anr_bound(p, sizes)
    raise PreconditionError(f"{theorem} is not a classical bound")


# ===== LINEAR FORMS WITH DISTINCT VARIABLES =====
def conj_1_1_bound(p: int, n: int, size: int, a: Sequence[int]) -> int:
    _require(len(a) == n, "coefficient vector length must equal n", n=n)
    return min(p - sum_zero_penalty(p, a), n * (size - n) + 1)


def thm_1_1_bound(p: int, n: int, size: int, a: Sequence[int]) -> int:
    """Same expression as conj_1_1, proved when p >= n(3n-5)/2."""
    _require(2 * p >= n * (3 * n - 5), "needs p >= n(3n-5)/2", p=p, n=n)
    return conj_1_1_bound(p, n, size, a)


def thm_1_2_bound(p: int, sizes: Sequence[int], a: Sequence[int], proof_penalty: bool = False) -> int:
    """Distinct-variable bound for per-set sizes.

    With proof_penalty the boundary indicator is [[n=2 & a_1=a_2]] instead of
    the stated [[n=2 & a_1+a_2=0]].
    """
    n = len(sizes)
    _require(len(a) == n, "coefficient vector length must equal n", n=n)
    _require(p >= (n - 1) ** 2, "needs p >= (n-1)^2", p=p, n=n)
    _require(
        all(s >= 2 * n - 2 for s in sizes), "needs |A_i| >= 2n-2", sizes=list(sizes)
    )
    penalty = equal_penalty(p, a) if proof_penalty else sum_zero_penalty(p, a)
    return min(p - penalty, sum(sizes) - n * n + 1)


def eq_1_8_bound(p: int, n: int, size: int) -> int:
    return min(p - comb(n, 2), n * (size - n) + 1)


def cor_1_1_bound(p: int, n: int, size: int) -> int:
    """Every residue is reached once |A|^2 >= 4p-7 and n = floor(|A|/2)."""
    _require(p > 7, "needs p > 7", p=p)
    _require(size * size >= 4 * p - 7, "needs |A| >= sqrt(4p-7)", size=size, p=p)
    _require(n == size // 2, "needs n = floor(|A|/2)", n=n, size=size)
    return p


def cor_1_1_min_size(p: int) -> int:
    """Smallest |A| with |A| >= sqrt(4p-7)."""
    root = isqrt(4 * p - 7)
    return root if root * root == 4 * p - 7 else root + 1


def linear_restricted_bound(
    kind: Kind, p: int, n: int, sizes: Sequence[int], a: Sequence[int]
) -> int:
    theorem = resolve_kind(kind)
    _require(len(a) > 0, "empty coefficient vector")
    if theorem is TheoremId.CONJ_1_1:
        return conj_1_1_bound(p, n, common_size(sizes), a)
    if theorem is TheoremId.THM_1_1:
        return thm_1_1_bound(p, n, common_size(sizes), a)
    if theorem is TheoremId.THM_1_2:
        per_set = list(sizes) if len(sizes) == n else [common_size(sizes)] * n
        return thm_1_2_bound(p, per_set, a)
    if theorem is TheoremId.EQ_1_8:
        return eq_1_8_bound(p, n, common_size(sizes))
    if theorem is TheoremId.COR_1_1:
        return cor_1_1_bound(p, n, common_size(sizes))
    raise PreconditionError(f"{theorem} is not a distinct-variable linear bound")


# ===== POLYNOMIAL RESTRICTIONS =====
def thm_1_3_bound(
    p: int, sizes: Sequence[int], degree: int, exponents: Optional[Sequence[int]] = None
) -> int:
    """Bound for sums restricted by P(x) != 0.

    When the exponents k of a nonvanishing top monomial are given, the
    hypothesis |A_i| > k_i is checked as well.
    """
    _positive_sizes(sizes)
    _require(degree >= 0, "P must be nonzero", degree=degree)
    if exponents is not None:
        _require(len(exponents) == len(sizes), "exponent vector length must equal n")
        _require(sum(exponents) == degree, "exponents must sum to deg P")
        _require(
            all(s > k for s, k in zip(sizes, exponents)),
            "needs |A_i| > k_i",
            sizes=list(sizes),
            exponents=list(exponents),
        )
    n = len(sizes)
    return min(p - degree, sum(sizes) - n - 2 * degree + 1)


def cor_1_2_f_bound(p: int, n: int, size: int, m: int) -> int:
    """Bound for f(x_i) != f(x_j) with deg f = m."""
    _require(m >= 0, "needs deg f >= 0", m=m)
    # a constant f forbids every pair, so the statement is empty for n >= 2
    _require(not (m == 0 and n >= 2), "constant f leaves no admissible tuple", n=n)
    return min(p - m * comb(n, 2), n * (size - 1 - m * (n - 1)) + 1)


def cor_1_2_diff_bound(p: int, n: int, size: int, m: int, max_forbidden: Optional[int] = None) -> int:
    """Bound for x_i - x_j not in S_ij (i < j) with |S_ij| <= 2m-1."""
    _require(m >= 1, "needs m >= 1", m=m)
    if max_forbidden is not None:
        _require(max_forbidden <= 2 * m - 1, "needs |S_ij| <= 2m-1", m=m)
    return min(p - (2 * m - 1) * comb(n, 2), n * (size - 1 - (2 * m - 1) * (n - 1)) + 1)


def cor_1_3_bound(p: int, sizes: Sequence[int], m: Sequence[int]) -> int:
    """Bound for x_i - x_j not in S_ij (i != j), m_i = max_j |S_ij|."""
    n = len(sizes)
    _positive_sizes(sizes)
    _require(n > 1, "needs n > 1", n=n)
    _require(len(m) == n, "needs one m_i per set")
    _require(
        all(mi >= 0 and mi * (n - 1) <= s - 1 for mi, s in zip(m, sizes)),
        "needs |S_ij| <= (|A_i|-1)/(n-1)",
        sizes=list(sizes),
        m=list(m),
    )
    total = sum(m)
    return min(p - (n - 1) * total, sum(s - 1 for s in sizes) - 2 * (n - 1) * total + 1)


def polynomial_restricted_bound(
    kind: Kind,
    p: int,
    sizes: Sequence[int],
    degree: Optional[int] = None,
    exponents: Optional[Sequence[int]] = None,
    m: Union[int, Sequence[int], None] = None,
) -> int:
    theorem = resolve_kind(kind)
    n = len(sizes)
    if theorem is TheoremId.THM_1_3:
        _require(degree is not None, "thm1.3 needs deg P")
        assert degree is not None
        return thm_1_3_bound(p, sizes, degree, exponents)
    if theorem is TheoremId.COR_1_2_F:
        _require(isinstance(m, int), "cor1.2f needs deg f")
        assert isinstance(m, int)
        return cor_1_2_f_bound(p, n, common_size(sizes), m)
    if theorem is TheoremId.COR_1_2_DIFF:
        _require(isinstance(m, int), "cor1.2d needs m")
        assert isinstance(m, int)
        return cor_1_2_diff_bound(p, n, common_size(sizes), m)
    if theorem is TheoremId.COR_1_3:
        _require(m is not None and not isinstance(m, int), "cor1.3 needs m_1..m_n")
        assert m is not None and not isinstance(m, int)
        return cor_1_3_bound(p, sizes, m)
    raise PreconditionError(f"{theorem} is not a polynomial-restriction bound")


# ===== VALUE SETS =====
def delta_nk(n: int, k: int) -> int:
    """Delta(n, k), which equals the sum of floor((i-1)/k) for i = 1..n."""
    _require(n >= 1 and k >= 1, "needs n, k >= 1", n=n, k=k)
    q = n // k
    return q * n - k * q * (q + 1) // 2


def r_kmn(k: int, m: int, n: int) -> int:
    _require(k >= 1, "needs k >= 1", k=k)
    rm = least_residue(m, k)
    return rm * iverson(rm < least_residue(n, k))


def lemma_5_1_sides(m: int, n: int, k: int) -> tuple[int, int]:
    """Both sides of the floor-sum identity, denominator k on the left."""
    _require(n >= 1 and k >= 1, "needs n, k >= 1", n=n, k=k)
    lhs = sum((m - i) // k for i in range(1, n + 1))
    q = n // k
    rhs = m * q + least_residue(n, k) * ((m - n) // k) - k * q * (q + 1) // 2 + r_kmn(k, m, n)
    return lhs, rhs


def thm_5_1_i_bound(p: int, sizes: Sequence[int], k: int) -> int:
    _positive_sizes(sizes)
    _require(k >= 1, "needs k >= 1", k=k)
    return min(p, sum((s - 1) // k for s in sizes) + 1)


def thm_5_1_ii_bound(p: int, sizes: Sequence[int], k: int) -> int:
    _positive_sizes(sizes)
    n = len(sizes)
    _require(k >= n, "needs k >= n", k=k, n=n)
    _require(all(s >= i for i, s in enumerate(sizes, start=1)), "needs |A_i| >= i")
    return min(p, sum((s - i) // k for i, s in enumerate(sizes, start=1)) + 1)


def thm_5_2_bound(p: int, sizes: Sequence[int], k: int, exponents: Sequence[int]) -> int:
    _positive_sizes(sizes)
    _require(k >= 1, "needs k >= 1", k=k)
    _require(len(exponents) == len(sizes), "exponent vector length must equal n")
    _require(
        all(s > ki for s, ki in zip(sizes, exponents)),
        "needs |A_i| > k_i",
        sizes=list(sizes),
        exponents=list(exponents),
    )
    shift = sum(ki // k for ki in exponents)
    body = sum((s - ki - 1) // k - ki // k for s, ki in zip(sizes, exponents))
    return min(p - shift, body + 1)


def cor_5_1_bound(p: int, sizes: Sequence[int], k: int) -> int:
    """Guaranteed |V| for distinct variables: right side minus Delta(n, k)."""
    _positive_sizes(sizes)
    _require(k >= 1, "needs k >= 1", k=k)
    n = len(sizes)
    _require(all(s >= i for i, s in enumerate(sizes, start=1)), "needs |A_i| >= i")
    return min(p, sum((s - i) // k for i, s in enumerate(sizes, start=1)) + 1) - delta_nk(n, k)


def cor_5_2_bound(p: int, n: int, m: int, k: int) -> int:
    _require(k >= 1, "needs k >= 1", k=k)
    _require(m >= n, "needs common size m >= n", m=m, n=n)
    numerator = n * (m - n) - least_residue(n, k) * least_residue(m - n, k)
    return min(p - delta_nk(n, k), numerator // k + r_kmn(k, m, n) + 1)


def conj_5_2_bound(p: int, n: int, size: int, k: int, a: Sequence[int]) -> int:
    _require(k >= 1, "needs k >= 1", k=k)
    _require(n >= k, "needs n >= k", n=n, k=k)
    _require(len(a) == n, "coefficient vector length must equal n", n=n)
    numerator = n * (size - n) - least_residue(n, k) * least_residue(size - n, k)
    # numerator is divisible by k
    return min(p - sum_zero_penalty(p, a), numerator // k + 1)


def value_set_bound(
    kind: Kind,
    p: int,
    sizes: Sequence[int],
    k: int,
    exponents: Optional[Sequence[int]] = None,
    a: Optional[Sequence[int]] = None,
) -> int:
    theorem = resolve_kind(kind)
    n = len(sizes)
    if theorem is TheoremId.THM_5_1_I:
        return thm_5_1_i_bound(p, sizes, k)
    if theorem is TheoremId.THM_5_1_II:
        return thm_5_1_ii_bound(p, sizes, k)
    if theorem is TheoremId.THM_5_2:
        _require(exponents is not None, "thm5.2 needs the exponents k_1..k_n")
        assert exponents is not None
        return thm_5_2_bound(p, sizes, k, exponents)
    if theorem is TheoremId.COR_5_1:
        return cor_5_1_bound(p, sizes, k)
    if theorem is TheoremId.COR_5_2:
        return cor_5_2_bound(p, n, common_size(sizes), k)
    if theorem is TheoremId.CONJ_5_2:
        coeffs = list(a) if a is not None else [1] * n
        return conj_5_2_bound(p, n, common_size(sizes), k, coeffs)
    raise PreconditionError(f"{theorem} is not a value-set bound")
