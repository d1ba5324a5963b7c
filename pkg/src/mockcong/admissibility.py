"""Necessary-condition verdicts for linear congruences a(mn+t) = 0 (mod ell).

Each verdict is one of RuledOut (a necessary condition fails),
NecessaryConditionsMet, or OutOfHypothesis (the governing theorem does not apply).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd

from .arith import is_prime, jacobi, split_23
from .errors import HypothesisViolation, InvalidArgument
from .qseries import EtaQuotientSpec

__all__ = [
    "RULED_OUT", "MET", "OUT_OF_HYPOTHESIS",
    "ProgressionVerdict",
    "m_B", "Q_mB", "alpha_beta",
    "verdict_f", "verdict_omega", "verdict_eta", "verdict_general", "verdict_for",
    "andrews_condition",
]

RULED_OUT = "RuledOut"
MET = "NecessaryConditionsMet"
OUT_OF_HYPOTHESIS = "OutOfHypothesis"

# reason codes
ELL_NMID_M = "ell-does-not-divide-m"
LEGENDRE_CLASH = "legendre-clash"
ELL_DIVIDES_BN = "ell-divides-BN"
ELL_DIVIDES_N_24N0_B = "ell-divides-N(24n0+B)"
MB_N_NOT_COPRIME = "mB-N-not-coprime"
B_NONNEGATIVE = "B-nonnegative"
NO_POLE = "24n0+B-nonnegative"


@dataclass(frozen=True)
class ProgressionVerdict:
    theorem: str
    m: int
    t: int
    ell: int
    outcome: str
    reason: str | None = None
    symbol_zero: bool = False

    @property
    def ruled_out(self) -> bool:
        return self.outcome == RULED_OUT

    def as_dict(self) -> dict:
        return asdict(self)

    def __str__(self):
        tail = f"({self.reason})" if self.reason else ""
        return f"{self.outcome}{tail}"


def _check_ell(ell: int):
    if ell < 5 or not is_prime(ell):
        raise HypothesisViolation(f"ell must be a prime >= 5, got {ell}")


def _check_mt(m: int, t: int):
    if m < 1 or not 0 <= t < m:
        raise InvalidArgument(f"need m >= 1 and 0 <= t < m, got m={m}, t={t}")


def m_B(m: int, B: int) -> int:
    """2^min(r,u) 3^min(s,v) m' for m = 2^u 3^v m', B = 2^r 3^s B'."""
    if B == 0:
        raise InvalidArgument("B must be nonzero")
    if m < 1:
        raise InvalidArgument("m must be positive")
    u, v, mp = split_23(m)
    r, s, _ = split_23(B)
    return 2 ** min(r, u) * 3 ** min(s, v) * mp


def alpha_beta(m: int, B: int) -> tuple[int, int]:
    if B == 0:
        raise InvalidArgument("B must be nonzero")
    if m < 1:
        raise InvalidArgument("m must be positive")
    u, v, _ = split_23(m)
    r, s, _ = split_23(B)
    if r == 0:
        alpha = 0
    elif r <= 2:
        alpha = min(r, u)
    else:
        alpha = u
    beta = 0 if s == 0 else v
    return alpha, beta


def Q_mB(m: int, B: int) -> int:
    """2^alpha 3^beta m', the divisor of m whose progressions the square-class witnesses reach."""
    alpha, beta = alpha_beta(m, B)
    _, _, mp = split_23(m)
    return 2 ** alpha * 3 ** beta * mp


def _conclusion(theorem: str, m: int, t: int, ell: int, value: int, target: int) -> ProgressionVerdict:
    zero = value % ell == 0
    if m % ell:
        return ProgressionVerdict(theorem, m, t, ell, RULED_OUT, ELL_NMID_M, zero)
    if jacobi(value, ell) == jacobi(target, ell):
        return ProgressionVerdict(theorem, m, t, ell, RULED_OUT, LEGENDRE_CLASH, zero)
    return ProgressionVerdict(theorem, m, t, ell, MET, None, zero)


def verdict_f(m: int, t: int, ell: int) -> ProgressionVerdict:
    """ell | m and ((24t-1)/ell) != (-1/ell) are necessary for a(mn+t) = 0 mod ell."""
    _check_ell(ell)
    _check_mt(m, t)
    return _conclusion("F", m, t, ell, 24 * t - 1, -1)


def verdict_omega(m: int, t: int, ell: int) -> ProgressionVerdict:
    _check_ell(ell)
    _check_mt(m, t)
    return _conclusion("Omega", m, t, ell, 3 * t + 2, -1)


def verdict_eta(spec: EtaQuotientSpec, m: int, t: int, ell: int) -> ProgressionVerdict:
    _check_ell(ell)
    _check_mt(m, t)
    B, N = spec.B, spec.N
    if B >= 0:
        return ProgressionVerdict("Eta", m, t, ell, OUT_OF_HYPOTHESIS, B_NONNEGATIVE)
    if (B * N) % ell == 0:
        return ProgressionVerdict("Eta", m, t, ell, OUT_OF_HYPOTHESIS, ELL_DIVIDES_BN)
    if gcd(m_B(m, B), N) != 1:
        return ProgressionVerdict("Eta", m, t, ell, OUT_OF_HYPOTHESIS, MB_N_NOT_COPRIME)
    return _conclusion("Eta", m, t, ell, 24 * t + B, B)


def verdict_general(B: int, N: int, n0: int, m: int, t: int, ell: int) -> ProgressionVerdict:
    """Verdict for f = q^(B/24) sum_{n >= n0} a_f(n) q^n with a pole at infinity."""
    _check_ell(ell)
    _check_mt(m, t)
    if N < 1:
        raise InvalidArgument("N must be positive")
    lead = 24 * n0 + B
    if lead >= 0:
        return ProgressionVerdict("General", m, t, ell, OUT_OF_HYPOTHESIS, NO_POLE)
    if (N * lead) % ell == 0:
        return ProgressionVerdict("General", m, t, ell, OUT_OF_HYPOTHESIS, ELL_DIVIDES_N_24N0_B)
    mb = m_B(m, B) if B else m
    if gcd(mb, N) != 1:
        return ProgressionVerdict("General", m, t, ell, OUT_OF_HYPOTHESIS, MB_N_NOT_COPRIME)
    return _conclusion("General", m, t, ell, 24 * t + B, lead)


def verdict_for(handle, m: int, t: int, ell: int) -> ProgressionVerdict:
    """Dispatch on a sequences.SequenceHandle."""
    if handle.kind == "f":
        return verdict_f(m, t, ell)
    if handle.kind == "omega":
        return verdict_omega(m, t, ell)
    return verdict_eta(handle.spec, m, t, ell)


def andrews_condition(ell: int, t: int) -> bool:
    """((8t+1)/ell) != 1."""
    _check_ell(ell)
    return jacobi(8 * t + 1, ell) != 1
