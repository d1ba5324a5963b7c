"""Exact elementary number theory: Jacobi symbols, inverses, roots of unity."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import InvalidArgument, NotInvertible

Rational = Fraction

__all__ = [
    "Rational",
    "UnitRoot",
    "jacobi",
    "inv_mod",
    "unitroot_pow",
    "is_prime",
    "prime_factors",
    "split_23",
    "frac_part",
]


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; (a/1) = 1."""
    if n <= 0 or n % 2 == 0:
        raise InvalidArgument(f"jacobi needs odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def inv_mod(a: int, m: int) -> int:
    if m <= 0:
        raise InvalidArgument("modulus must be positive")
    if gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m) if m > 1 else 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    f = 17
    r = isqrt(n)
    while f <= r:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of |n| in increasing order."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def split_23(n: int) -> tuple[int, int, int]:
    """Write n = 2^e2 * 3^e3 * rest with (rest, 6) = 1; returns (e2, e3, rest).

    The sign of n is carried by rest.
    """
    if n == 0:
        raise InvalidArgument("cannot split 0")
    e2 = e3 = 0
    while n % 2 == 0:
        n //= 2
        e2 += 1
    while n % 3 == 0:
        n //= 3
        e3 += 1
    return e2, e3, n


def frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class UnitRoot:
    """The root of unity exp(2*pi*i*exponent), exponent kept reduced in [0, 1)."""

    exponent: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "exponent", frac_part(Fraction(self.exponent)))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> UnitRoot:
        """zeta_n^k."""
        return cls(Fraction(k, n))

    def __mul__(self, other: UnitRoot) -> UnitRoot:
        return UnitRoot(self.exponent + other.exponent)

    def __truediv__(self, other: UnitRoot) -> UnitRoot:
        return UnitRoot(self.exponent - other.exponent)

    def __pow__(self, n: int) -> UnitRoot:
        return UnitRoot(self.exponent * n)

    def inverse(self) -> UnitRoot:
        return UnitRoot(-self.exponent)

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def is_one(self) -> bool:
        return self.exponent == 0

    def to_complex(self) -> complex:
        import cmath

        return cmath.exp(2j * cmath.pi * float(self.exponent))

    def __str__(self):
        return f"exp(2*pi*i*{self.exponent})"


def unitroot_pow(u: UnitRoot, n: int) -> UnitRoot:
    return u ** n
