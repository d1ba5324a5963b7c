"""Square-class witnesses: the b_n / c_n lifting construction and t_A orbits."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .admissibility import Q_mB, alpha_beta
from .arith import split_23
from .errors import ConstructionError, InvalidArgument

__all__ = ["WitnessResult", "radu_witness", "witness_construction", "t_map", "t_orbit",
           "orbit_covers"]


def t_map(m: int, t: int, B: int, a: int) -> int:
    """t*a^2 + B(a^2-1)/24 mod m, for (a, 6) = 1."""
    a2 = a * a
    if (a2 - 1) % 24:
        raise InvalidArgument(f"a={a} is not coprime to 6")
    return (t * a2 + B * ((a2 - 1) // 24)) % m


@dataclass(frozen=True)
class WitnessResult:
    a: int
    lam: int
    Q: int
    m: int
    t: int
    B: int
    N: int

    def verify(self) -> bool:
        """Both defining congruences, checked by direct substitution."""
        if gcd(self.a, 6 * self.m * self.N) != 1:
            return False
        return t_map(self.m, self.t, self.B, self.a) == (self.t + self.lam * self.Q) % self.m


def _defect(b: int, t: int, B: int, lam: int, Q: int) -> int:
    return B * ((b * b - 1) // 24) + t * (b * b - 1) - lam * Q


def witness_construction(m: int, t: int, B: int, N: int, lam: int, reduce: bool = False) -> int:
    """The lifting construction verbatim; returns the (possibly large) integer a.

    First lifts b_0 = 1 through b_{u-alpha} (powers of 2), then c_0 = b_{u-alpha}
    through c_{v-beta} (powers of 3). Every divisibility the construction relies on
    is asserted rather than assumed.

    With reduce=True each iterate is replaced by its residue mod 24mN. The defect
    mod m and coprimality to 6mN only depend on that residue, so every step stays
    valid while the integers stay small (unreduced, they reach ~10^4 digits).
    """
    if m < 1 or N < 1:
        raise InvalidArgument("m and N must be positive")
    if B == 0:
        raise InvalidArgument("B must be nonzero")
    Q = Q_mB(m, B)
    if not 0 <= lam < m // Q:
        raise InvalidArgument(f"lambda={lam} outside [0, {m // Q})")
    alpha, beta = alpha_beta(m, B)
    u, v, _ = split_23(m)
    _, _, n_prime = split_23(N)

    b = 1
    for n in range(1, u - alpha + 1):
        d = _defect(b, t, B, lam, Q)
        step = 2 ** (n - 1) * Q
        if d % step:
            raise ConstructionError(f"b-step {n}: {d} not divisible by {step}")
        x = d // step
        # 2^(n+1-alpha) * Q is an integer since 2^alpha | Q
        b += 3 * x * n_prime * (Q * 2 ** (n + 1) >> alpha)
        if reduce:
            b %= 24 * m * N

    c = b
    if beta < v:
        if beta != 0 or B % 3 == 0:
            raise ConstructionError("beta < v requires beta = 0 and 3 not dividing B")
        eps = 1 if (B * n_prime) % 3 == 1 else -1
        for n in range(1, v - beta + 1):
            d = _defect(c, t, B, lam, Q)
            step = 2 ** (u - alpha) * 3 ** (n - 1) * Q
            if d % step:
                raise ConstructionError(f"c-step {n}: {d} not divisible by {step}")
            y = d // step
            c *= 2 ** (2 + u - alpha) * 3 ** n * y * Q * n_prime - eps
            if reduce:
                c %= 24 * m * N
    if _defect(c, t, B, lam, Q) % m:
        raise ConstructionError("constructed a fails the target congruence")
    return c


def radu_witness(m: int, t: int, B: int, N: int, lam: int) -> WitnessResult:
    """An a with (a, 6mN) = 1 and t + lam*Q = t a^2 + B(a^2-1)/24 (mod m).

    The construction runs with iterates reduced modulo 24mN, which preserves both
    conditions.
    """
    a = witness_construction(m, t, B, N, lam, reduce=True) % (24 * m * N)
    res = WitnessResult(a, lam, Q_mB(m, B), m, t, B, N)
    if not res.verify():
        raise ConstructionError(f"reduced witness a={a} fails verification")
    return res


def t_orbit(m: int, t: int, B: int, N: int = 1) -> frozenset[int]:
    """{t*a^2 + B(a^2-1)/24 mod m : (a, 6mN) = 1}.

    The map depends on a only modulo 24m, and every unit class mod 24m contains
    integers prime to N, so it suffices to run over a mod 24m with (a, 6m) = 1.
    """
    if m < 1:
        raise InvalidArgument("m must be positive")
    if m == 1:
        return frozenset({0})
    a = np.arange(24 * m, dtype=np.int64)
    a = a[np.gcd(a, 6 * m) == 1]
    a2 = a * a
    vals = (t * (a2 % (24 * m)) + B * ((a2 - 1) // 24)) % m
    return frozenset(int(x) for x in np.unique(vals))


def orbit_covers(m: int, t: int, B: int, N: int = 1) -> bool:
    """Every t + lam*Q_{m,B} (mod m), 0 <= lam < m/Q_{m,B}, lies in the t_A orbit."""
    Q = Q_mB(m, B)
    orbit = t_orbit(m, t, B, N)
    return all((t + lam * Q) % m in orbit for lam in range(m // Q))
