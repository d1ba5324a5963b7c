import cmath
import random
from fractions import Fraction

import pytest

from mockcong.arith import UnitRoot
from mockcong.errors import InvalidArgument, PrecisionError
from mockcong.multipliers import (S, T, LeadingConstant, Mat2, default_t_f, default_t_omega,
                                  eta_multiplier, eta_residual, leading_constant_f,
                                  leading_constant_omega, verify_eta_numeric, w1_of, w2_of,
                                  w_of, xi)

Z24 = UnitRoot(Fraction(1, 24))


def random_matrix(rng, bound=60, c_mod=1, d_even=False):
    while True:
        c = c_mod * rng.randint(1, max(1, bound // c_mod))
        d = rng.randint(-bound, bound)
        if d_even and d % 2:
            continue
        try:
            a = pow(d, -1, c)
        except ValueError:
            continue
        a += c * rng.randint(-2, 2)
        b = (a * d - 1) // c
        return Mat2(a, b, c, d)


def test_xi_example():
    assert xi(Mat2(1, 0, 1, 1)) == UnitRoot(Fraction(23, 24))


def test_xi_shift_cocycle():
    rng = random.Random(1)
    for _ in range(200):
        A = random_matrix(rng)
        assert xi(A @ T) == xi(A) * Z24


def test_eta_multiplier_handles_c_nonpositive():
    assert eta_multiplier(T) == Z24
    A = random_matrix(random.Random(2))
    assert eta_multiplier(-A) == xi(A)


def test_w_shift_cocycles():
    rng = random.Random(3)
    for _ in range(200):
        A = random_matrix(rng, c_mod=2)
        assert w_of(A @ T) == w_of(A) / Z24
        assert w_of(T @ A) == w_of(A) / Z24
        assert 48 * A.c % w_of(A).exponent.denominator == 0


def test_w1_w2_shift_units():
    rng = random.Random(4)
    two_thirds = UnitRoot(Fraction(2, 3))
    for _ in range(100):
        A = random_matrix(rng, c_mod=2)
        assert w1_of(A @ T @ T) == w1_of(A) * UnitRoot(Fraction(1, 3))
        assert w1_of(T @ A) == w1_of(A) * two_thirds
        assert 48 * A.c % w1_of(A).exponent.denominator == 0
        B = random_matrix(rng, d_even=True)
        assert w2_of(T @ B) == w2_of(B) * two_thirds
        assert w2_of(B @ T @ T) == w2_of(B) * UnitRoot(Fraction(23, 24))


def test_multiplier_domains():
    with pytest.raises(InvalidArgument):
        w_of(Mat2(1, 0, 1, 1))
    with pytest.raises(InvalidArgument):
        w2_of(Mat2(1, 0, 1, 1))
    with pytest.raises(InvalidArgument):
        Mat2(1, 1, 1, 1)


def test_eta_numeric_examples():
    z = complex(0.1, 0.9)
    assert eta_residual(T, z) < 1e-12
    assert eta_residual(S, 1j, terms=200) < 1e-10
    rng = random.Random(6)
    for _ in range(5):
        assert verify_eta_numeric(random_matrix(rng, 50), complex(0.25, 0.75))


def test_eta_numeric_detects_wrong_multiplier(monkeypatch):
    # the transformation fails if the multiplier is off by a 24th root of unity
    from mockcong import multipliers
    A, z = Mat2(2, 1, 7, 4), complex(0.25, 0.75)
    assert eta_residual(A, z) < 1e-9
    orig = multipliers.xi
    monkeypatch.setattr(multipliers, "xi", lambda M: orig(M) * Z24)
    assert eta_residual(A, z) > 1e-3


def test_eta_numeric_term_shortfall():
    with pytest.raises(PrecisionError):
        eta_residual(Mat2(2, 1, 7, 4), complex(0.25, 0.75), terms=3)


@pytest.mark.parametrize("Q,ell,t", [(1, 5, 0), (1, 7, 0), (5, 7, 6), (7, 5, 3)])
def test_leading_constant_f(Q, ell, t):
    assert default_t_f(Q, ell) == t
    k = leading_constant_f(Q, ell, t)
    assert isinstance(k, LeadingConstant)
    assert len(set(k.term_exponents)) == 1 and len(k.lambdas) == ell
    assert (k.unit ** (48 * Q * ell * ell)).is_one()
    assert k.identity_holds() and k.trace_consistent
    assert k.radicand == Q


@pytest.mark.parametrize("Q,ell,t", [(4, 5, 4), (4, 7, 6), (8, 5, 3)])
def test_leading_constant_omega(Q, ell, t):
    assert default_t_omega(Q, ell) == t
    k = leading_constant_omega(Q, ell, t)
    assert len(set(k.term_exponents)) == 1 and len(k.lambdas) == ell
    assert (k.unit ** (48 * Q * ell * ell)).is_one()
    assert k.identity_holds() and k.trace_consistent
    assert k.radicand == 2 * Q


def test_leading_constant_power_is_exact():
    k = leading_constant_f(5, 7)
    root, value = k.power(k.exponent_order)
    assert root.is_one() and value == Fraction(1, 5 ** (24 * 5 * 49))
    with pytest.raises(InvalidArgument):
        k.power(3)


def test_unit_to_complex_consistent():
    u = xi(Mat2(1, 0, 1, 1))
    assert abs(u.to_complex() - cmath.exp(-2j * cmath.pi / 24)) < 1e-15
