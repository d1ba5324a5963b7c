"""Empirical scans for linear congruences a(mn+t) = 0 (mod ell).

A scan is evidence up to its bound, never a proof.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .arith import is_prime, jacobi, prime_factors
from .errors import InvalidArgument, PrecisionError
from .qseries import QSeries

__all__ = ["ScanResult", "check_progression", "scan_range", "good_f", "good_omega"]


@dataclass(frozen=True)
class ScanResult:
    m: int
    t: int
    ell: int
    N: int
    first_fail_n: int | None = None
    value: int | None = None

    @property
    def holds(self) -> bool:
        return self.first_fail_n is None

    @property
    def checked(self) -> int:
        return self.N + 1 if self.holds else self.first_fail_n + 1

    @property
    def status(self) -> str:
        if self.holds:
            return f"HoldsUpTo({self.N})"
        return f"FailsAt({self.first_fail_n}, {self.value})"

    def as_dict(self) -> dict:
        return {
            "m": self.m, "t": self.t, "ell": self.ell,
            "status": "holds" if self.holds else "fails",
            "N": self.N, "first_fail_n": self.first_fail_n, "value": self.value,
            "evidence": f"empirical (n <= {self.N})",
        }


def _check_ell(ell: int):
    if ell < 5 or not is_prime(ell):
        raise InvalidArgument(f"ell must be a prime >= 5, got {ell}")


def _residues(seq: QSeries, ell: int, stop: int) -> np.ndarray:
    if stop > seq.prec:
        raise PrecisionError(
            f"scan needs coefficients up to n={stop} but the series has precision {seq.prec}")
    if seq.modulus is not None and seq.modulus % ell:
        raise InvalidArgument(f"series is stored mod {seq.modulus}, not a multiple of {ell}")
    if seq.modulus is None:
        return np.array([int(c) % ell for c in seq.dense(0, stop)], dtype=np.int64)
    return seq.dense(0, stop) % ell


def _first_failure(res: np.ndarray, m: int, t: int, N: int, ell: int) -> ScanResult:
    vals = res[t: m * N + t + 1: m]
    bad = np.flatnonzero(vals)
    if len(bad) == 0:
        return ScanResult(m, t, ell, N)
    n = int(bad[0])
    return ScanResult(m, t, ell, N, n, int(vals[n]))


def check_progression(seq: QSeries, m: int, t: int, ell: int, N: int) -> ScanResult:
    """Test a(mn+t) = 0 (mod ell) for 0 <= n <= N; reports the minimal failing n."""
    _check_ell(ell)
    if m < 1 or not 0 <= t < m:
        raise InvalidArgument(f"need m >= 1 and 0 <= t < m, got m={m}, t={t}")
    if N < 0:
        raise InvalidArgument("scan bound must be non-negative")
    res = _residues(seq, ell, m * N + t)
    return _first_failure(res, m, t, N, ell)


def scan_range(seq: QSeries, ell: int, m_max: int, N: int, threads: int = 1) -> list[ScanResult]:
    """All (m, t) with m <= m_max, 0 <= t < m, surviving N checks; ordered by (m, t)."""
    _check_ell(ell)
    if m_max < 1:
        return []
    res = _residues(seq, ell, m_max * N + m_max - 1)
    cells = [(m, t) for m in range(1, m_max + 1) for t in range(m)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda c: _first_failure(res, c[0], c[1], N, ell), cells))
    else:
        results = [_first_failure(res, m, t, N, ell) for m, t in cells]
    return [r for r in results if r.holds]


def _good(m: int, value: int) -> bool:
    # Jacobi symbols need an odd modulus, so p = 2 never witnesses goodness
    return any(jacobi(value, p) == -1 for p in prime_factors(m) if p > 2)


def good_f(m: int, t: int) -> bool:
    """True iff some prime p | m has ((1-24t)/p) = -1."""
    if m < 1:
        raise InvalidArgument("m must be positive")
    return _good(m, 1 - 24 * t)


def good_omega(m: int, t: int) -> bool:
    """True iff some prime p | m has ((-3t-2)/p) = -1."""
    if m < 1:
        raise InvalidArgument("m must be positive")
    return _good(m, -3 * t - 2)
