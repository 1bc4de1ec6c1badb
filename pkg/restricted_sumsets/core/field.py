"""Exact arithmetic in Z/pZ.

Residues, inverses, factorials, falling factorials and least nonnegative
residues. Every value is immutable; integer twins of the helpers back the
identities that hold over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union, overload

from sympy import isprime

from restricted_sumsets.constants import MAX_MODULUS
from restricted_sumsets.errors import ModulusError, PreconditionError


@lru_cache(maxsize=1024)
def _checked_prime(p: int) -> bool:
    return bool(isprime(p))


@dataclass(frozen=True)
class PrimeModulus:
    """A prime modulus p, validated at construction."""

    p: int

    def __post_init__(self) -> None:
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise ModulusError(f"modulus must be an integer, got {self.p!r}")
        if self.p < 2 or self.p >= MAX_MODULUS:
            raise ModulusError(
                f"modulus {self.p} outside [2, 2^31)", {"p": self.p}
            )
        if not _checked_prime(self.p):
            raise ModulusError(f"modulus {self.p} is not prime", {"p": self.p})

    def __int__(self) -> int:
        return self.p

    def reduce(self, value: int) -> int:
        return value % self.p

    def element(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        """The multiplicative identity e."""
        return FieldElement(1, self)

    def inverse(self, value: int) -> int:
        """Inverse of a nonzero residue via x^(p-2)."""
        value %= self.p
        if value == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.p}")
        return pow(value, self.p - 2, self.p)

    def negate(self, value: int) -> int:
        return (-value) % self.p


Operand = Union["FieldElement", int]


@dataclass(frozen=True, eq=False)
class FieldElement:
    """An element of Z/pZ stored as its least nonnegative residue."""

    value: int
    modulus: PrimeModulus

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.modulus.p:
            object.__setattr__(self, "value", self.value % self.modulus.p)

    # ===== COERCION =====
    def _coerce(self, other: Operand) -> int:
        if isinstance(other, FieldElement):
            if other.modulus.p != self.modulus.p:
                raise ModulusError(
                    "arithmetic on elements of different fields",
                    {"left": self.modulus.p, "right": other.modulus.p},
                )
            return other.value
        if isinstance(other, int):
            return other % self.modulus.p
        return NotImplemented  # type: ignore[return-value]

    def _new(self, value: int) -> FieldElement:
        return FieldElement(value % self.modulus.p, self.modulus)

    # ===== ARITHMETIC =====
    def __add__(self, other: Operand) -> FieldElement:
        return self._new(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> FieldElement:
        return self._new(self.value - self._coerce(other))

    def __rsub__(self, other: Operand) -> FieldElement:
        return self._new(self._coerce(other) - self.value)

    def __mul__(self, other: Operand) -> FieldElement:
        return self._new(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> FieldElement:
        return self._new(-self.value)

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._new(pow(self.value, exponent, self.modulus.p))

    def __truediv__(self, other: Operand) -> FieldElement:
        return self * self._new(self._coerce(other)).inverse()

    def __rtruediv__(self, other: Operand) -> FieldElement:
        return self._new(self._coerce(other)) * self.inverse()

    def inverse(self) -> FieldElement:
        return self._new(self.modulus.inverse(self.value))

    # ===== COMPARISON =====
    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.modulus.p == other.modulus.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus.p})"

    def signed(self) -> int:
        """Representative in (-p/2, p/2]."""
        half = self.modulus.p // 2
        return self.value - self.modulus.p if self.value > half else self.value


# ===== FALLING FACTORIALS =====
@overload
def falling_factorial(x: FieldElement, n: int) -> FieldElement: ...


@overload
def falling_factorial(x: int, n: int) -> int: ...


def falling_factorial(x: FieldElement | int, n: int) -> FieldElement | int:
    """Compute (x)_n = x(x-1)...(x-n+1), with (x)_0 = 1.

    Args:
        x: A field element or an exact integer
        n: Number of factors

    Returns:
        The product in the same numeric kind as x

    Raises:
        PreconditionError: If n is negative
    """
    if n < 0:
        raise PreconditionError(f"falling factorial length must be >= 0, got {n}")
    if isinstance(x, FieldElement):
        p = x.modulus.p
        acc = 1
        for j in range(n):
            acc = acc * (x.value - j) % p
            if acc == 0:
                break
        return FieldElement(acc, x.modulus)
    result = 1
    for j in range(n):
        result *= x - j
        if result == 0:
            break
    return result


def falling_factorial_mod(x: int, n: int, p: int) -> int:
    """Residue of (x)_n modulo p, on plain integers."""
    acc = 1
    for j in range(n):
        acc = acc * (x - j) % p
        if acc == 0:
            return 0
    return acc % p


def factorial(n: int, modulus: PrimeModulus) -> FieldElement:
    """n! in Z/pZ for 0 <= n < p.

    Raises:
        PreconditionError: If n is negative or n >= p (the result would vanish)
    """
    if n < 0 or n >= modulus.p:
        raise PreconditionError(
            f"factorial argument must lie in [0, {modulus.p}), got {n}",
            {"n": n, "p": modulus.p},
        )
    acc = 1
    for j in range(2, n + 1):
        acc = acc * j % modulus.p
    return FieldElement(acc, modulus)


def least_residue(m: int, k: int) -> int:
    """Least nonnegative residue {m}_k of m modulo k.

    Raises:
        PreconditionError: If k < 1
    """
    if k < 1:
        raise PreconditionError(f"residue modulus must be positive, got {k}")
    return m % k
