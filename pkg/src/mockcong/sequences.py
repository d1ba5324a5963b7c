"""Named coefficient sequences: mock theta functions f and omega, partition-type
eta-quotients, and the Example-4 style counterexample families."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import _kernels as K
from .arith import is_prime
from .errors import InvalidArgument
from .qseries import EXACT, EtaQuotientSpec, QSeries, as_ring, eta_power, eta_quotient, reduce_mod

__all__ = [
    "SequenceHandle",
    "mock_f",
    "mock_omega",
    "k_color",
    "example4_family",
    "resolve",
    "PRESETS",
    "DIAMOND1",
    "ANDREWS_STANLEY",
]

DIAMOND1 = EtaQuotientSpec(((2, 1), (3, 1), (1, -3), (6, -1)))
ANDREWS_STANLEY = EtaQuotientSpec(((2, 2), (16, 5), (1, -1), (4, -5), (32, -2)))
PARTITION = EtaQuotientSpec(((1, -1),))


def _accumulate(N: int, ring, lead: Callable[[int], int], denom_exp: Callable[[int], int],
                sign: int) -> QSeries:
    """1 + sum_{j>=1} q^lead(j) / prod_{i<=j} (1 + sign*q^denom_exp(i))^2.

    The running denominator product is only kept to the length its term can
    still reach, N - lead(j).
    """
    ring = as_ring(ring)
    mod = ring.modulus
    total = K.zeros(N + 1, mod)
    total[0] = 1
    running = K.zeros(N + 1, mod)
    running[0] = 1
    j = 1
    while lead(j) <= N:
        room = N - lead(j) + 1
        running = running[:room]
        e = denom_exp(j)
        running = K.divide_binomial(running, e, sign, mod)
        running = K.divide_binomial(running, e, sign, mod)
        total[lead(j):] += running
        j += 1
    return QSeries(K.normalize(total, mod), 0, N, 0, ring)


def mock_f(N: int, ring=EXACT) -> QSeries:
    """a(n), n <= N, of f(q) = 1 + sum q^(n^2) / ((1+q)^2 ... (1+q^n)^2).

    offset24 is -1 (the q^(-1/24) of the completed form).
    """
    if N < 0:
        raise InvalidArgument("precision must be non-negative")
    s = _accumulate(N, ring, lambda j: j * j, lambda j: j, +1)
    return QSeries(s.coeffs, s.n0, s.prec, -1, s.ring)


def mock_omega(N: int, ring=EXACT) -> QSeries:
    """c(n), n <= N, of omega(q) = sum_{n>=0} q^(2n^2+2n) / ((1-q)^2 (1-q^3)^2 ... (1-q^(2n+1))^2).

    offset24 is 16 (the q^(2/3) of the completed form).
    """
    if N < 0:
        raise InvalidArgument("precision must be non-negative")
    mod = as_ring(ring).modulus
    # the n = 0 term 1/(1-q)^2 is folded in by starting the running product there
    base = K.zeros(N + 1, mod)
    base[0] = 1
    base = K.divide_binomial(K.divide_binomial(base, 1, -1, mod), 1, -1, mod)
    total = base.copy()
    running = base
    j = 1
    while 2 * j * j + 2 * j <= N:
        lead = 2 * j * j + 2 * j
        running = running[: N - lead + 1]
        e = 2 * j + 1
        running = K.divide_binomial(K.divide_binomial(running, e, -1, mod), e, -1, mod)
        total[lead:] += running
        j += 1
    return QSeries(K.normalize(total, mod), 0, N, 16, as_ring(ring))


def k_color(k: int, N: int, ring=EXACT) -> QSeries:
    """p_k(n): partitions into k colours, from eta^(-k)."""
    if k < 1:
        raise InvalidArgument("k must be positive")
    return eta_quotient(EtaQuotientSpec(((1, -k),)), N, ring)


def example4_family(ell: int, N: int) -> tuple[QSeries, QSeries]:
    """(eta^-1(ell z), eta^-ell(z)) reduced mod ell; both carry offset24 = -ell."""
    if ell < 5 or not is_prime(ell):
        raise InvalidArgument("ell must be a prime >= 5")
    lhs = reduce_mod(eta_power(ell, -1, N, ell), ell)
    rhs = reduce_mod(eta_power(1, -ell, N, ell), ell)
    return lhs, rhs


@dataclass(frozen=True)
class SequenceHandle:
    """A named sequence plus the constants that decide which theorem governs it.

    kind is 'f' (offset -1/24), 'omega' (offset +2/3) or 'eta' (offset B/24).
    """

    name: str
    kind: str
    generator: Callable[..., QSeries] = field(repr=False)
    params: tuple[int, ...] = ()
    spec: EtaQuotientSpec | None = None

    @property
    def offset24(self) -> int:
        if self.kind == "f":
            return -1
        if self.kind == "omega":
            return 16
        return self.spec.B

    @property
    def offset(self) -> Fraction:
        return Fraction(self.offset24, 24)

    @property
    def B(self) -> int:
        return self.offset24

    @property
    def level(self) -> int:
        return self.spec.N if self.spec is not None else 1

    def generate(self, N: int, ring=EXACT) -> QSeries:
        return self.generator(N, ring)


def _eta_handle(name: str, spec: EtaQuotientSpec, params=()) -> SequenceHandle:
    return SequenceHandle(name, "eta", lambda N, ring=EXACT: eta_quotient(spec, N, ring),
                          tuple(params), spec)


PRESETS = ("f", "omega", "partition", "kcolor:k", "diamond1", "andrews-stanley", "eta:<spec>")


def resolve(selector: str, level: int | None = None) -> SequenceHandle:
    """Look up a preset by CLI selector; ``level`` overrides an eta-quotient's level."""
    sel = selector.strip()
    if sel == "f":
        return SequenceHandle("f", "f", mock_f)
    if sel == "omega":
        return SequenceHandle("omega", "omega", mock_omega)
    if sel == "partition":
        return _eta_handle(sel, EtaQuotientSpec(PARTITION.factors, level))
    if sel == "diamond1":
        return _eta_handle(sel, EtaQuotientSpec(DIAMOND1.factors, level))
    if sel == "andrews-stanley":
        return _eta_handle(sel, EtaQuotientSpec(ANDREWS_STANLEY.factors, level))
    if sel.startswith("kcolor:"):
        try:
            k = int(sel.split(":", 1)[1])
        except ValueError:
            raise InvalidArgument(f"bad k in {selector!r}") from None
        if k < 1:
            raise InvalidArgument("k must be positive")
        return _eta_handle(sel, EtaQuotientSpec(((1, -k),), level), (k,))
    if sel.startswith("eta:"):
        return _eta_handle(sel, EtaQuotientSpec.parse(sel[4:], level))
    raise InvalidArgument(f"unknown sequence {selector!r}; known: {', '.join(PRESETS)}")
