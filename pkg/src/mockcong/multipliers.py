"""Exact multiplier systems of eta, M and Omega, and the cusp leading-constant checks.

Every multiplier is returned as a UnitRoot whose exponent is assembled from
exact rationals; nothing here touches floating point except the numerical
check of the eta transformation law.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .arith import UnitRoot, frac_part, inv_mod, is_prime, jacobi
from .dedekind import dedekind_sum_fast
from .errors import ConstructionError, HypothesisViolation, InvalidArgument, PrecisionError

__all__ = [
    "Mat2", "T", "S",
    "xi", "eta_multiplier", "w_of", "w1_of", "w2_of",
    "eta_product", "eta_residual", "verify_eta_numeric", "terms_needed",
    "LeadingConstant", "leading_constant_f", "leading_constant_omega",
    "default_t_f", "default_t_omega",
]


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise InvalidArgument(f"{tuple(self)} does not have determinant 1")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def normalized(self) -> Mat2:
        """Sign representative with c > 0, or c = 0 and d > 0."""
        if self.c < 0 or (self.c == 0 and self.d < 0):
            return -self
        return self

    def act(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)


T = Mat2(1, 1, 0, 1)
S = Mat2(0, -1, 1, 0)


def _require(A: Mat2, *, c_even=False, d_even=False):
    if A.det != 1:
        raise InvalidArgument(f"{A} does not have determinant 1")
    if A.c <= 0:
        raise InvalidArgument("multiplier formulas need c > 0; normalize the matrix first")
    if c_even and A.c % 2:
        raise InvalidArgument("this multiplier needs c even")
    if d_even and A.d % 2:
        raise InvalidArgument("this multiplier needs d even")


def xi(A: Mat2) -> UnitRoot:
    """Multiplier of eta: eta(Az) = xi(A) (cz+d)^(1/2) eta(z), for c > 0."""
    _require(A)
    a, b, c, d = A
    if c % 2 == 0:
        sym = jacobi(c, abs(d))
        e = Fraction((a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d, 24)
    else:
        sym = jacobi(d, c)
        e = Fraction((a + d) * c - b * d * (c * c - 1) - 3 * c, 24)
    if sym == -1:
        e += Fraction(1, 2)
    return UnitRoot(e)


def eta_multiplier(A: Mat2) -> UnitRoot:
    """xi for any SL2(Z) matrix after sign normalization; c = 0 is the q-shift."""
    A = A.normalized()
    if A.det != 1:
        raise InvalidArgument(f"{A} does not have determinant 1")
    if A.c == 0:
        return UnitRoot(Fraction(A.b, 24))
    return xi(A)


def w_of(A: Mat2) -> UnitRoot:
    """Multiplier of M(z) for A in Gamma_0(2), c > 0."""
    _require(A, c_even=True)
    a, b, c, d = A
    e = (Fraction(-1, 8) + Fraction(c + 1 + a * d, 4)
         - dedekind_sum_fast(-d, c) / 2 - Fraction(a + d, 24 * c) - Fraction(a, 4)
         + Fraction(3 * c * d, 8))
    return UnitRoot(e)


def w1_of(A: Mat2) -> UnitRoot:
    """Multiplier of Omega(z) when c is even."""
    _require(A, c_even=True)
    a, b, c, d = A
    e = (Fraction(1, 8) + Fraction(a - 1, 4) - dedekind_sum_fast(-d, c // 2) / 2
         + Fraction(3 * a * b, 4) - Fraction(a + d, 12 * c))
    return UnitRoot(e)


def w2_of(A: Mat2) -> UnitRoot:
    """Multiplier relating Omega(Az) to M(z/2) when d is even (3a/c taken literally)."""
    _require(A, d_even=True)
    a, b, c, d = A
    e = (Fraction(-1, 8) + Fraction(32 * a - d, 48 * c) - dedekind_sum_fast(-d // 2, c) / 2
         - (2 * a + b - 3 - 3 * a * b + Fraction(3 * a, c)) / 4)
    return UnitRoot(e)


# ---------------------------------------------------------------------------
# numerical check of the eta transformation law

def terms_needed(z, tol: float) -> int:
    """Product terms T with |q|^(T+1)/(1-|q|) below tol/1000 at z."""
    y = float(mpmath.im(z))
    if y <= 0:
        raise InvalidArgument("z must lie in the upper half-plane")
    r = mpmath.exp(-2 * mpmath.pi * y)
    target = mpmath.mpf(tol) / 1000 * (1 - r)
    return max(1, int(mpmath.ceil(mpmath.log(target) / mpmath.log(r))))


def eta_product(z, terms: int):
    """q^(1/24) prod_{n<=terms} (1 - q^n) at z, in mpmath precision."""
    z = mpmath.mpc(z)
    q = mpmath.exp(2j * mpmath.pi * z)
    prod = mpmath.mpc(1)
    qn = q
    for _ in range(terms):
        prod *= 1 - qn
        qn *= q
    return mpmath.exp(1j * mpmath.pi * z / 12) * prod


def eta_residual(A: Mat2, z, terms: int | None = None, tol: float = 1e-9, dps: int = 30):
    """|eta(Az) - xi(A)(cz+d)^(1/2) eta(z)| with the principal square root.

    A is replaced by its sign representative first (same action on z).
    """
    A = A.normalized()
    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        if z.imag <= 0:
            raise InvalidArgument("z must lie in the upper half-plane")
        Az = A.act(z)
        need = max(terms_needed(Az, tol), terms_needed(z, tol))
        if terms is None:
            terms = need
        elif terms < need:
            raise PrecisionError(f"{terms} product terms cannot reach tolerance {tol}; need {need}")
        ex = eta_multiplier(A).exponent
        mult = mpmath.expjpi(2 * mpmath.mpf(ex.numerator) / ex.denominator)
        lhs = eta_product(Az, terms)
        rhs = mult * mpmath.sqrt(A.c * z + A.d) * eta_product(z, terms)
        return abs(lhs - rhs)


def verify_eta_numeric(A: Mat2, z, terms: int | None = None, tol: float = 1e-9) -> bool:
    return eta_residual(A, z, terms, tol) < tol


# ---------------------------------------------------------------------------
# leading constants at the cusps 1/2ell and 1/ell

@dataclass(frozen=True)
class LeadingConstant:
    """K = unit * radicand^(-1/2), together with the per-term data that produced it."""

    unit: UnitRoot
    radicand: int
    Q: int
    ell: int
    t: int
    lambdas: tuple[int, ...]
    term_exponents: tuple[Fraction, ...]
    lambda0: int
    alpha: int
    # per-term exponent minus the reduced expression from the proof; constant when consistent
    trace_offsets: tuple[Fraction, ...]

    @property
    def exponent_order(self) -> int:
        return 48 * self.Q * self.ell ** 2

    def power(self, n: int) -> tuple[UnitRoot, Fraction]:
        """K^n as (root of unity, rational) for even n."""
        if n % 2:
            raise InvalidArgument("only even powers of K are rational up to a root of unity")
        return self.unit ** n, Fraction(self.radicand) ** (-(n // 2))

    def identity_holds(self) -> bool:
        """K^(48 Q ell^2) == radicand^(-24 Q ell^2) exactly."""
        n = self.exponent_order
        root, value = self.power(n)
        return root.is_one() and value == Fraction(self.radicand) ** (-(n // 2))

    @property
    def trace_consistent(self) -> bool:
        return len(set(self.trace_offsets)) == 1


def default_t_f(Q: int, ell: int) -> int:
    return ((1 - Q * Q) // 24) % ell


def default_t_omega(Q: int, ell: int) -> int:
    return (-((Q * Q + 32) // 48)) % ell


def _check_prime(ell):
    if ell < 5 or not is_prime(ell):
        raise HypothesisViolation(f"ell must be a prime >= 5, got {ell}")


def _collapse(terms: list[Fraction]) -> UnitRoot:
    reduced = {frac_part(e) for e in terms}
    if len(reduced) != 1:
        raise ConstructionError(
            f"term exponents do not coincide: {sorted(reduced)}")
    return UnitRoot(reduced.pop())


def leading_constant_f(Q: int, ell: int, t: int | None = None) -> LeadingConstant:
    """Leading coefficient K of M_{Q ell, t} at the cusp 1/(2 ell), with K = u Q^(-1/2).

    Sums over the ell values of lambda in [0, Q ell) with gcd(1 + 2 ell lambda, Q) = Q,
    using lambda' = Q lambda and A_lambda = [[(1+2 ell lambda)/Q, -2 lambda^2],
    [2 ell^2, Q(1 - 2 ell lambda)]].
    """
    _check_prime(ell)
    if Q < 1 or gcd(Q, 6 * ell) != 1:
        raise HypothesisViolation(f"need (Q, 6 ell) = 1, got Q={Q}")
    target = (1 - Q * Q) // 24
    if t is None:
        t = default_t_f(Q, ell)
    if (t - target) % ell:
        raise HypothesisViolation(f"need t = (1-Q^2)/24 = {target % ell} mod {ell}, got {t}")
    alpha = next(x for x in range(inv_mod(Q, 2 * ell), 10 ** 9, 2 * ell) if x % 3)

    lams, exps, offsets = [], [], []
    for lam in range(Q * ell):
        if gcd(1 + 2 * ell * lam, Q) != Q:
            continue
        A = Mat2((1 + 2 * ell * lam) // Q, -2 * lam * lam, 2 * ell * ell, Q * (1 - 2 * ell * lam))
        e = (-Fraction(lam * (24 * t - 1), 24 * Q * ell) + w_of(A).exponent
             - Fraction(Q * lam, 24 * ell))
        reduced = -(Fraction(lam * (24 * t - 1), 24 * Q * ell)
                    - Fraction(lam * alpha * (1 - Q * Q), 24 * ell)
                    + Fraction(lam, 2) + Fraction(lam * (12 * ell * ell + 1), 24 * Q * ell))
        lams.append(lam)
        exps.append(frac_part(e))
        offsets.append(frac_part(e - reduced))
    if len(lams) != ell:
        raise ConstructionError(f"expected {ell} contributing lambdas, found {len(lams)}")
    unit = _collapse(exps)
    return LeadingConstant(unit, Q, Q, ell, t, tuple(lams), tuple(exps), lams[0], alpha,
                           tuple(offsets))


def leading_constant_omega(Q: int, ell: int, t: int | None = None) -> LeadingConstant:
    """Leading coefficient K of Omega_{Q ell, t} at the cusp 1/ell, with K = u (2Q)^(-1/2).

    Uses B_lambda = [[(1+ell lambda)/Q, -lambda^2], [ell^2, Q(1 - ell lambda)]]
    (lambda' = Q lambda, even because 4 | Q) and the w2 multiplier.
    """
    _check_prime(ell)
    if Q < 1 or Q % 4 or gcd(Q, 3 * ell) != 1:
        raise HypothesisViolation(f"need 4 | Q and (Q, 3 ell) = 1, got Q={Q}")
    target = -((Q * Q + 32) // 48)
    if t is None:
        t = default_t_omega(Q, ell)
    if (t - target) % ell:
        raise HypothesisViolation(
            f"need t = -(Q^2+32)/48 = {target % ell} mod {ell}, got {t}")
    alpha = next(x for x in range(2 * inv_mod(Q, ell) % ell or ell, 10 ** 9, ell) if x % 3)

    lams, exps, offsets = [], [], []
    for lam in range(Q * ell):
        if gcd(1 + ell * lam, Q) != Q:
            continue
        lam_prime = Q * lam
        assert lam_prime % 2 == 0
        B = Mat2((1 + ell * lam) // Q, -lam * lam, ell * ell, Q * (1 - ell * lam))
        e = (-Fraction(lam * (3 * t + 2), 3 * Q * ell) + w2_of(B).exponent
             - Fraction(lam * Q, 48 * ell))
        reduced = (-Fraction(t * lam, Q * ell) - Fraction(lam * (Q * Q + 32), 48 * Q * ell)
                   + Fraction(lam * (alpha * alpha * Q * Q - 4
                                     + 12 * ell * (Q * lam - 3 * lam - 2 * ell - 3 * ell * lam * lam)),
                              48 * Q * ell))
        lams.append(lam)
        exps.append(frac_part(e))
        offsets.append(frac_part(e - reduced))
    if len(lams) != ell:
        raise ConstructionError(f"expected {ell} contributing lambdas, found {len(lams)}")
    unit = _collapse(exps)
    return LeadingConstant(unit, 2 * Q, Q, ell, t, tuple(lams), tuple(exps), lams[0], alpha,
                           tuple(offsets))
