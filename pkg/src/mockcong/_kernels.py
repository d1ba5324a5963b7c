"""Low-level coefficient kernels for dense truncated series.

Coefficient arrays are numpy arrays: dtype=object for exact integers,
int64 holding residues in [0, M) for the modular backend.
"""
from __future__ import annotations

import numpy as np
from numba import njit

# modular products must stay below 2**63
MAX_MODULUS = 2 ** 31


def pentagonal_terms(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Exponents e >= 1 and signs of prod(1 - q^n) = 1 + sum sign*q^e, e <= n_max."""
    exps, signs = [], []
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 > n_max:
            break
        s = -1 if k % 2 else 1
        exps.append(e1)
        signs.append(s)
        e2 = k * (3 * k + 1) // 2
        if e2 <= n_max:
            exps.append(e2)
            signs.append(s)
        k += 1
    return np.array(exps, dtype=np.int64), np.array(signs, dtype=np.int64)


def zeros(n: int, modulus: int | None) -> np.ndarray:
    if modulus is None:
        out = np.empty(n, dtype=object)
        out[:] = 0
        return out
    return np.zeros(n, dtype=np.int64)


def normalize(a: np.ndarray, modulus: int | None) -> np.ndarray:
    if modulus is None:
        return a
    return np.mod(a, modulus)


def sparse_mul(a, exps, signs, modulus):
    """Multiply by 1 + sum sign*q^e, truncated to len(a)."""
    n = len(a)
    out = a.copy()
    for e, s in zip(exps.tolist(), signs.tolist()):
        if e >= n:
            continue
        if s == 1:
            out[e:] += a[: n - e]
        else:
            out[e:] -= a[: n - e]
    return normalize(out, modulus)


def divide_binomial(a, e: int, s: int, modulus):
    """Divide by (1 + s*q^e) with s = +-1, truncated to len(a).

    Rows of length e are the residue classes; the recurrence
    b[n] = a[n] - s*b[n-e] becomes a signed cumulative sum down each column.
    """
    n = len(a)
    if e >= n:
        return a.copy()
    rows = -(-n // e)
    pad = rows * e - n
    if modulus is None:
        buf = np.concatenate([a, zeros(pad, None)]).reshape(rows, e)
    else:
        buf = np.concatenate([a, np.zeros(pad, dtype=np.int64)]).reshape(rows, e)
    if s == -1:
        out = np.cumsum(buf, axis=0)
    else:
        sign = np.where(np.arange(rows) % 2 == 0, 1, -1).astype(np.int64)
        if modulus is None:
            sign = sign.astype(object)
        out = np.cumsum(buf * sign[:, None], axis=0) * sign[:, None]
    out = out.reshape(-1)[:n]
    return normalize(out, modulus)


@njit(cache=True)
def _sparse_div_mod(a, exps, signs, modulus):
    n = a.shape[0]
    b = np.empty(n, dtype=np.int64)
    for i in range(n):
        acc = a[i]
        for k in range(exps.shape[0]):
            e = exps[k]
            if e > i:
                break
            acc -= signs[k] * b[i - e]
        acc %= modulus
        b[i] = acc
    return b


def sparse_div(a, exps, signs, modulus):
    """Divide by 1 + sum sign*q^e (exponents increasing, >= 1)."""
    if len(exps) == 1:
        return divide_binomial(a, int(exps[0]), int(signs[0]), modulus)
    if modulus is not None:
        return _sparse_div_mod(np.ascontiguousarray(a, dtype=np.int64), exps, signs, modulus)
    n = len(a)
    b = zeros(n, None)
    terms = list(zip(exps.tolist(), signs.tolist()))
    for i in range(n):
        acc = a[i]
        for e, s in terms:
            if e > i:
                break
            acc = acc - b[i - e] if s == 1 else acc + b[i - e]
        b[i] = acc
    return b


def _pack(values: list[int], width: int) -> int:
    pos = b"".join((v if v > 0 else 0).to_bytes(width, "little") for v in values)
    x = int.from_bytes(pos, "little")
    if any(v < 0 for v in values):
        neg = b"".join((-v if v < 0 else 0).to_bytes(width, "little") for v in values)
        x -= int.from_bytes(neg, "little")
    return x


def dense_mul(a, b, n_out: int, modulus):
    """Truncated product via Kronecker substitution on Python integers."""
    if n_out <= 0:
        return zeros(0, modulus)
    la, lb = min(len(a), n_out), min(len(b), n_out)
    if la == 0 or lb == 0:
        return zeros(n_out, modulus)
    av = [int(x) for x in a[:la]]
    bv = [int(x) for x in b[:lb]]
    bound = max(map(abs, av)) * max(map(abs, bv)) * min(la, lb)
    width = (bound.bit_length() + 2 + 7) // 8
    prod = _pack(av, width) * _pack(bv, width)
    nbits = 8 * width * n_out
    half = 1 << (8 * width - 1)
    low = prod & ((1 << nbits) - 1)
    # bias every slot by half so all digits are non-negative
    bias = int.from_bytes(half.to_bytes(width, "little") * n_out, "little")
    low = (low + bias) & ((1 << nbits) - 1)
    raw = low.to_bytes(width * n_out, "little")
    out = [
        int.from_bytes(raw[i * width:(i + 1) * width], "little") - half
        for i in range(n_out)
    ]
    if modulus is None:
        arr = np.empty(n_out, dtype=object)
        arr[:] = out
        return arr
    return np.array([v % modulus for v in out], dtype=np.int64)


def inverse_unit(a, n_out: int, modulus):
    """Truncated inverse of a series with unit constant term, by the linear recurrence."""
    c0 = int(a[0])
    if modulus is None:
        if c0 not in (1, -1):
            raise ValueError("constant term is not a unit in Z")
        inv0 = c0
    else:
        inv0 = pow(c0, -1, modulus)
    av = [int(x) for x in a[:n_out]]
    b = [0] * n_out
    b[0] = inv0
    nz = [(k, v) for k, v in enumerate(av) if k > 0 and v]
    for i in range(1, n_out):
        acc = 0
        for k, v in nz:
            if k > i:
                break
            acc += v * b[i - k]
        acc = -acc * inv0
        b[i] = acc % modulus if modulus is not None else acc
    if modulus is None:
        arr = np.empty(n_out, dtype=object)
        arr[:] = b
        return arr
    return np.array(b, dtype=np.int64)


def miller_power(g, r: int, n_out: int):
    """Exact coefficients of g^r for g with g[0] = 1, via n*P_n = sum ((r+1)k - n) g_k P_{n-k}."""
    gv = [int(x) for x in g[:n_out]]
    nz = [(k, v) for k, v in enumerate(gv) if k > 0 and v]
    p = [0] * n_out
    p[0] = 1
    for n in range(1, n_out):
        acc = 0
        for k, v in nz:
            if k > n:
                break
            acc += ((r + 1) * k - n) * v * p[n - k]
        q, rem = divmod(acc, n)
        if rem:
            raise ArithmeticError("non-integral coefficient in power recurrence")
        p[n] = q
    arr = np.empty(n_out, dtype=object)
    arr[:] = p
    return arr
