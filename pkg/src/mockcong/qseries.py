"""Truncated q-series with a fractional prefactor q^(offset24/24).

A QSeries stands for q^(offset24/24) * sum_{n0 <= n <= prec} a(n) q^n, where
coefficients past ``prec`` are unknown. Coefficients live either in Z (``EXACT``)
or in Z/M (``Mod(M)``).
"""
from __future__ import annotations

import re
import struct
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from pathlib import Path

import numpy as np

from . import _kernels as K
from .errors import InvalidArgument, PrecisionError

__all__ = [
    "Ring",
    "EXACT",
    "Mod",
    "QSeries",
    "EtaQuotientSpec",
    "eta_power",
    "eta_quotient",
    "extract_progression",
    "reduce_mod",
    "save_series",
    "load_series",
]


@dataclass(frozen=True)
class Ring:
    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None:
            if self.modulus < 1:
                raise InvalidArgument("modulus must be positive")
            if self.modulus >= K.MAX_MODULUS:
                raise InvalidArgument(f"modulus must be below {K.MAX_MODULUS}")

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def __str__(self):
        return "exact" if self.modulus is None else f"mod {self.modulus}"


EXACT = Ring()


def Mod(modulus: int) -> Ring:
    return Ring(int(modulus))


def as_ring(ring) -> Ring:
    if ring is None or ring == "exact":
        return EXACT
    if isinstance(ring, Ring):
        return ring
    return Mod(int(ring))


class QSeries:
    """Immutable truncated q-series.

    Leading zeros are stripped on construction, so ``n0`` is the index of the
    first nonzero coefficient (or ``prec + 1`` for the zero series).
    """

    __slots__ = ("coeffs", "n0", "prec", "offset24", "ring")

    def __init__(self, coeffs, n0: int = 0, prec: int | None = None,
                 offset24=0, ring: Ring = EXACT):
        ring = as_ring(ring)
        arr = _as_array(coeffs, ring.modulus)
        if prec is None:
            prec = n0 + len(arr) - 1
        if n0 + len(arr) - 1 > prec:
            arr = arr[: prec - n0 + 1]
        elif n0 + len(arr) - 1 < prec:
            arr = np.concatenate([arr, K.zeros(prec - n0 + 1 - len(arr), ring.modulus)])
        nz = np.flatnonzero(arr != 0)
        if len(nz) == 0:
            arr = arr[:0]
            n0 = prec + 1
        elif nz[0] > 0:
            arr = arr[nz[0]:]
            n0 += int(nz[0])
        arr.flags.writeable = False
        self.coeffs = arr
        self.n0 = int(n0)
        self.prec = int(prec)
        self.offset24 = Fraction(offset24)
        self.ring = ring

    # construction helpers -------------------------------------------------
    @classmethod
    def one(cls, prec: int, ring=EXACT) -> QSeries:
        return cls([1], 0, prec, 0, ring)

    @classmethod
    def zero(cls, prec: int, ring=EXACT, offset24=0) -> QSeries:
        return cls([], 0, prec, offset24, ring)

    # access -----------------------------------------------------------------
    def __getitem__(self, n: int):
        if n > self.prec:
            raise PrecisionError(f"coefficient {n} requested, precision is {self.prec}")
        i = n - self.n0
        if i < 0:
            return 0
        return int(self.coeffs[i])

    def coefficients(self, start: int = 0, stop: int | None = None) -> list[int]:
        """a(n) for start <= n <= stop (stop defaults to prec)."""
        if stop is None:
            stop = self.prec
        if stop > self.prec:
            raise PrecisionError(f"coefficient {stop} requested, precision is {self.prec}")
        return [self[n] for n in range(start, stop + 1)]

    def dense(self, start: int, stop: int) -> np.ndarray:
        """Coefficient array for start <= n <= stop, zero-filled below n0."""
        if stop > self.prec:
            raise PrecisionError(f"coefficient {stop} requested, precision is {self.prec}")
        out = K.zeros(stop - start + 1, self.ring.modulus)
        lo = max(start, self.n0)
        if lo <= stop:
            out[lo - start:] = self.coeffs[lo - self.n0: stop - self.n0 + 1]
        return out

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def modulus(self) -> int | None:
        return self.ring.modulus

    def __len__(self):
        return self.prec - self.n0 + 1

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.ring == other.ring and self.n0 == other.n0 and self.prec == other.prec
                and self.offset24 == other.offset24
                and len(self.coeffs) == len(other.coeffs)
                and bool(np.all(self.coeffs == other.coeffs)))

    __hash__ = None

    def __repr__(self):
        head = ", ".join(str(int(c)) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return (f"QSeries(offset24={self.offset24}, n0={self.n0}, prec={self.prec}, "
                f"ring={self.ring}, coeffs=[{head}{more}])")

    # arithmetic -------------------------------------------------------------
    def _check_ring(self, other: QSeries):
        if self.ring != other.ring:
            raise InvalidArgument(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: QSeries) -> QSeries:
        self._check_ring(other)
        if self.offset24 != other.offset24:
            raise InvalidArgument(
                f"cannot add series with offsets {self.offset24}/24 and {other.offset24}/24")
        prec = min(self.prec, other.prec)
        lo = min(self.n0, other.n0)
        if lo > prec:
            return QSeries.zero(prec, self.ring, self.offset24)
        out = K.normalize(self.dense(lo, prec) + other.dense(lo, prec), self.modulus)
        return QSeries(out, lo, prec, self.offset24, self.ring)

    def __neg__(self) -> QSeries:
        return QSeries(K.normalize(-self.coeffs, self.modulus), self.n0, self.prec,
                       self.offset24, self.ring)

    def __sub__(self, other: QSeries) -> QSeries:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries(K.normalize(self.coeffs * other, self.modulus), self.n0,
                           self.prec, self.offset24, self.ring)
        self._check_ring(other)
        n0 = self.n0 + other.n0
        prec = min(self.prec + other.n0, other.prec + self.n0)
        offset = self.offset24 + other.offset24
        if self.is_zero or other.is_zero:
            # a zero factor still only certifies coefficients up to its precision
            return QSeries.zero(prec, self.ring, offset)
        coeffs = K.dense_mul(self.coeffs, other.coeffs, prec - n0 + 1, self.modulus)
        return QSeries(coeffs, n0, prec, offset, self.ring)

    __rmul__ = __mul__

    def inverse(self) -> QSeries:
        """Truncated inverse; the leading coefficient must be a unit."""
        if self.is_zero:
            raise InvalidArgument("zero series is not invertible")
        n_out = self.prec - self.n0 + 1
        coeffs = K.inverse_unit(self.coeffs, n_out, self.modulus)
        return QSeries(coeffs, -self.n0, self.prec - 2 * self.n0, -self.offset24, self.ring)

    def __pow__(self, r: int) -> QSeries:
        if r < 0:
            return self.inverse() ** (-r)
        result = QSeries([1], 0, self.prec - self.n0, 0, self.ring)
        base = self
        while r:
            if r & 1:
                result = result * base
            r >>= 1
            if r:
                base = base * base
        return result

    def truncate(self, prec: int) -> QSeries:
        if prec > self.prec:
            raise PrecisionError(f"cannot extend precision {self.prec} to {prec}")
        return QSeries(self.coeffs, self.n0, prec, self.offset24, self.ring)

    def shift(self, k: int) -> QSeries:
        """Multiply by q^k (integer part only)."""
        return QSeries(self.coeffs, self.n0 + k, self.prec + k, self.offset24, self.ring)

    def reduce_mod(self, modulus: int) -> QSeries:
        return reduce_mod(self, modulus)

    def extract_progression(self, m: int, t: int) -> QSeries:
        return extract_progression(self, m, t)


def _as_array(coeffs, modulus):
    if isinstance(coeffs, np.ndarray) and modulus is None and coeffs.dtype == object:
        return coeffs.copy()
    if modulus is None:
        out = np.empty(len(coeffs), dtype=object)
        out[:] = [int(c) for c in coeffs]
        return out
    if isinstance(coeffs, np.ndarray) and coeffs.dtype != object:
        return np.mod(coeffs.astype(np.int64), modulus)
    return np.array([int(c) % modulus for c in coeffs], dtype=np.int64)


# ---------------------------------------------------------------------------
# eta products

def _spread(coeffs, step: int, n_out: int, modulus):
    """Substitute q -> q^step."""
    if step == 1:
        return coeffs[:n_out]
    out = K.zeros(n_out, modulus)
    m = (n_out - 1) // step + 1
    out[::step] = coeffs[:m]
    return out


def _euler_power(r: int, n: int, modulus) -> np.ndarray:
    """Coefficients of prod_{k>=1}(1-x^k)^r for x^0..x^(n-1)."""
    exps, signs = K.pentagonal_terms(n - 1)
    one = K.zeros(n, modulus)
    one[0] = 1
    if r == 0:
        return one
    if modulus is None:
        if r == 1:
            return K.sparse_mul(one, exps, signs, None)
        if r == -1:
            return K.sparse_div(one, exps, signs, None)
        return K.miller_power(K.sparse_mul(one, exps, signs, None), r, n)
    if modulus == 1:
        return np.zeros(n, dtype=np.int64)
    if abs(r) <= 8:
        out = one
        for _ in range(abs(r)):
            out = (K.sparse_mul if r > 0 else K.sparse_div)(out, exps, signs, modulus)
        return out
    base = (K.sparse_mul if r > 0 else K.sparse_div)(one, exps, signs, modulus)
    e = abs(r)
    out = one
    while e:
        if e & 1:
            out = K.dense_mul(out, base, n, modulus)
        e >>= 1
        if e:
            base = K.dense_mul(base, base, n, modulus)
    return out


def eta_power(delta: int, r: int, N: int, ring=EXACT) -> QSeries:
    """eta(delta z)^r truncated at q^N; offset24 = delta*r."""
    ring = as_ring(ring)
    if delta < 1:
        raise InvalidArgument("delta must be positive")
    if N < 0:
        raise InvalidArgument("precision must be non-negative")
    inner = _euler_power(r, N // delta + 1, ring.modulus)
    coeffs = _spread(inner, delta, N + 1, ring.modulus)
    return QSeries(coeffs, 0, N, delta * r, ring)


_FACTOR_RE = re.compile(r"^\s*(\d+)\s*\^\s*([+-]?\d+)\s*$")


@dataclass(frozen=True)
class EtaQuotientSpec:
    """prod eta(delta z)^(r_delta) with a declared level.

    ``level`` defaults to the lcm of the deltas.
    """

    factors: tuple[tuple[int, int], ...]
    level: int | None = None
    _level: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        merged: dict[int, int] = {}
        for d, r in self.factors:
            d, r = int(d), int(r)
            if d < 1:
                raise InvalidArgument(f"eta factor delta must be >= 1, got {d}")
            merged[d] = merged.get(d, 0) + r
        facs = tuple((d, r) for d, r in merged.items() if r != 0)
        object.__setattr__(self, "factors", facs)
        lev = self.level if self.level is not None else reduce(lcm, (d for d, _ in facs), 1)
        if lev < 1:
            raise InvalidArgument("level must be positive")
        for d, _ in facs:
            if lev % d:
                raise InvalidArgument(f"delta={d} does not divide level {lev}")
        object.__setattr__(self, "_level", lev)

    @classmethod
    def parse(cls, text: str, level: int | None = None) -> EtaQuotientSpec:
        """Parse ``'2^1,3^1,1^-3,6^-1'`` (commas or whitespace between factors)."""
        parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
        if not parts:
            raise InvalidArgument("empty eta-quotient")
        facs = []
        for p in parts:
            mt = _FACTOR_RE.match(p)
            if not mt:
                raise InvalidArgument(f"bad eta factor {p!r}; expected delta^r")
            facs.append((int(mt.group(1)), int(mt.group(2))))
        return cls(tuple(facs), level)

    @property
    def N(self) -> int:
        return self._level

    @property
    def B(self) -> int:
        return sum(d * r for d, r in self.factors)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    def __str__(self):
        return ",".join(f"{d}^{r}" for d, r in self.factors)


def eta_quotient(spec: EtaQuotientSpec, N: int, ring=EXACT) -> QSeries:
    """Coefficients a_f(n), n <= N, of the eta-quotient; offset24 = B."""
    ring = as_ring(ring)
    if N < 0:
        raise InvalidArgument("precision must be non-negative")
    result = QSeries.one(N, ring)
    for d, r in spec.factors:
        result = result * eta_power(d, r, N, ring)
    return result


# ---------------------------------------------------------------------------

def extract_progression(s: QSeries, m: int, t: int) -> QSeries:
    """The series sum a(mn+t) q^n; offset24 becomes (24t + offset24)/m."""
    if m < 1:
        raise InvalidArgument("m must be positive")
    if not 0 <= t < m:
        raise InvalidArgument(f"t={t} outside [0, {m})")
    prec = (s.prec - t) // m
    lo = -((t - s.n0) // m)  # ceil((n0 - t)/m)
    offset = (24 * t + s.offset24) / m
    if lo > prec:
        return QSeries.zero(prec, s.ring, offset)
    coeffs = s.coeffs[lo * m + t - s.n0:: m][: prec - lo + 1]
    return QSeries(coeffs, lo, prec, offset, s.ring)


def reduce_mod(s: QSeries, modulus: int) -> QSeries:
    """Coefficientwise reduction into [0, modulus)."""
    if modulus <= 1:
        raise InvalidArgument("modulus must exceed 1")
    if s.modulus is not None and s.modulus % modulus:
        raise InvalidArgument(f"cannot reduce a mod-{s.modulus} series modulo {modulus}")
    if s.modulus is None:
        coeffs = np.array([int(c) % modulus for c in s.coeffs], dtype=np.int64)
    else:
        coeffs = s.coeffs % modulus
    return QSeries(coeffs, s.n0, s.prec, s.offset24, Mod(modulus))


# ---------------------------------------------------------------------------
# coefficient cache files

_MAGIC = b"MCQS\x01"
_HEADER = struct.Struct("<BQqqqqQH")


def save_series(path, s: QSeries) -> None:
    """Header (magic, ring, modulus, offset24 num/den, n0, N, count, width) + LE array."""
    vals = [int(c) for c in s.coeffs]
    bits = max((v.bit_length() for v in vals), default=0) + 1
    width = max(8, (bits + 7) // 8)
    body = b"".join(v.to_bytes(width, "little", signed=True) for v in vals)
    header = _HEADER.pack(
        0 if s.ring.is_exact else 1, s.modulus or 0,
        s.offset24.numerator, s.offset24.denominator, s.n0, s.prec, len(vals), width)
    Path(path).write_bytes(_MAGIC + header + body)


def load_series(path) -> QSeries:
    raw = Path(path).read_bytes()
    if not raw.startswith(_MAGIC):
        raise InvalidArgument(f"{path}: not a coefficient cache file")
    off = len(_MAGIC)
    kind, modulus, num, den, n0, prec, count, width = _HEADER.unpack_from(raw, off)
    off += _HEADER.size
    if len(raw) != off + count * width:
        raise InvalidArgument(f"{path}: truncated coefficient cache file")
    if width == 8:
        vals = np.frombuffer(raw, dtype="<i8", count=count, offset=off)
        vals = vals.astype(np.int64) if kind else vals.astype(object)
    else:
        vals = [int.from_bytes(raw[off + i * width: off + (i + 1) * width], "little", signed=True)
                for i in range(count)]
    ring = Mod(modulus) if kind else EXACT
    return QSeries(vals, n0, prec, Fraction(num, den), ring)
