"""Exact Dedekind sums."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InvalidArgument

__all__ = ["dedekind_sum", "dedekind_sum_fast", "reciprocity_rhs", "lemma22_defect"]


def dedekind_sum(d: int, c: int) -> Fraction:
    """s(d, c) = sum_{r=1}^{c-1} (r/c - floor(r/c) - 1/2)(dr/c - floor(dr/c) - 1/2).

    Evaluated literally, without the convention that the sawtooth vanishes at
    integers. On coprime (d, c) this agrees with the classical sum; for
    non-coprime arguments the terms with c | dr contribute -(r/c - 1/2)/2.
    """
    if c <= 0:
        raise InvalidArgument("c must be positive")
    # work in units of 1/(2c): 2c * (x/c - floor(x/c) - 1/2) = 2(x mod c) - c
    total = 0
    for r in range(1, c):
        total += (2 * r - c) * (2 * (d * r % c) - c)
    return Fraction(total, 4 * c * c)


def reciprocity_rhs(d: int, c: int) -> Fraction:
    """-1/4 + (d/c + c/d + 1/(cd))/12, the value of s(d,c) + s(c,d)."""
    return Fraction(-1, 4) + (Fraction(d, c) + Fraction(c, d) + Fraction(1, c * d)) / 12


def dedekind_sum_fast(d: int, c: int) -> Fraction:
    """s(d, c) for gcd(d, c) = 1 by the reciprocity recursion (Euclid-length steps)."""
    if c <= 0:
        raise InvalidArgument("c must be positive")
    if gcd(d, c) != 1:
        raise InvalidArgument(f"dedekind_sum_fast needs gcd(d, c) = 1, got ({d}, {c})")
    total = Fraction(0)
    sign = 1
    d %= c
    while c > 1 and d:
        # s(d, c) = reciprocity_rhs(d, c) - s(c mod d, d)
        total += sign * reciprocity_rhs(d, c)
        sign = -sign
        d, c = c % d, d
    return total


def lemma22_defect(m: int, lam: int, A) -> Fraction:
    """s(-d + lam*c, m*c) - s(-d, m*c) - lam(1 - a^2)/(12m) for A = [[a,b],[c,d]].

    Expected to be an even integer whenever (m, 6) = 1, A is in Gamma_0(m) with
    c > 0 and (a, 6) = 1.
    """
    a, b, c, d = A
    if a * d - b * c != 1:
        raise InvalidArgument("A must have determinant 1")
    if c <= 0 or m < 1 or c % m:
        raise InvalidArgument("need c > 0 and A in Gamma_0(m)")
    if gcd(m, 6) != 1 or gcd(a, 6) != 1:
        raise InvalidArgument("need (m, 6) = (a, 6) = 1")
    if lam < 0:
        raise InvalidArgument("lambda must be non-negative")
    mc = m * c
    return (dedekind_sum_fast(-d + lam * c, mc) - dedekind_sum_fast(-d, mc)
            - Fraction(lam * (1 - a * a), 12 * m))
