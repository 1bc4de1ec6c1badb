"""Constant-term identities checked by explicit expansion.

Coefficients are computed over the exact integers unless a modulus is
given, in which case the whole expansion runs in Z/pZ.
"""

from collections.abc import Sequence
from itertools import combinations
from math import comb, prod
from typing import Optional

import structlog
from sympy import factorial as exact_factorial

from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.core.poly import SparsePolynomial, multiply, power
from restricted_sumsets.errors import PreconditionError

logger = structlog.get_logger(__name__)


def _difference_power(
    n: int, i: int, j: int, exponent: int, modulus: Optional[PrimeModulus], max_terms: Optional[int]
) -> SparsePolynomial:
    """(x_i - x_j)^exponent in n variables, zero based."""
    diff = SparsePolynomial.variable(i, n, modulus) - SparsePolynomial.variable(j, n, modulus)
    return power(diff, exponent, max_terms)


def dyson_coefficient(
    m: Sequence[int],
    modulus: Optional[PrimeModulus] = None,
    max_terms: Optional[int] = None,
) -> int:
    """Coefficient of prod x_i^{m_i(n-1)} in prod_{i<j} (x_i - x_j)^{m_i + m_j}.

    Raises:
        PreconditionError: If n < 2 or some m_i is negative
        ExpansionLimitError: If the expansion exceeds the term cap
    """
    n = len(m)
    if n < 2:
        raise PreconditionError(f"needs n >= 2, got {n}")
    if any(mi < 0 for mi in m):
        raise PreconditionError("exponents must be nonnegative", {"m": list(m)})
    expansion = SparsePolynomial.constant(1, n, modulus)
    for i, j in combinations(range(n), 2):
        expansion = multiply(
            expansion, _difference_power(n, i, j, m[i] + m[j], modulus, max_terms), max_terms
        )
    target = tuple(mi * (n - 1) for mi in m)
    logger.debug("dyson_expanded", m=list(m), terms=len(expansion))
    return expansion.coefficient(target)


def dyson_closed_form(m: Sequence[int]) -> int:
    """(-1)^{sum (j-1) m_j} (m_1 + ... + m_n)! / (m_1! ... m_n!)."""
    sign = -1 if sum(j * mj for j, mj in enumerate(m)) % 2 else 1
    return sign * int(exact_factorial(sum(m))) // prod(int(exact_factorial(mi)) for mi in m)


def sy_exponents(n: int, m: int) -> tuple[int, ...]:
    """Exponents (m-1)(n-1) + i - 1 for i = 1..n."""
    return tuple((m - 1) * (n - 1) + i for i in range(n))


def sy_coefficient(
    n: int,
    m: int,
    modulus: Optional[PrimeModulus] = None,
    max_terms: Optional[int] = None,
) -> int:
    """Coefficient of prod x_i^{(m-1)(n-1)+i-1} in prod_{i<j} (x_j - x_i)^{2m-1}.

    Raises:
        PreconditionError: If n < 1 or m < 1
    """
    if n < 1 or m < 1:
        raise PreconditionError("needs n, m >= 1", {"n": n, "m": m})
    if n == 1:
        return 1
    expansion = SparsePolynomial.constant(1, n, modulus)
    for i, j in combinations(range(n), 2):
        expansion = multiply(
            expansion, _difference_power(n, j, i, 2 * m - 1, modulus, max_terms), max_terms
        )
    return expansion.coefficient(sy_exponents(n, m))


def sy_closed_form(n: int, m: int) -> int:
    """(-1)^{(m-1) C(n,2)} (mn)! / (m!^n n!)."""
    if n < 1 or m < 1:
        raise PreconditionError("needs n, m >= 1", {"n": n, "m": m})
    sign = -1 if (m - 1) * comb(n, 2) % 2 else 1
    numerator = int(exact_factorial(m * n))
    denominator = int(exact_factorial(m)) ** n * int(exact_factorial(n))
    return sign * numerator // denominator
