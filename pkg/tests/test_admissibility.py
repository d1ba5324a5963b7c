import pytest

from mockcong.admissibility import (MET, OUT_OF_HYPOTHESIS, RULED_OUT, Q_mB, alpha_beta,
                                    andrews_condition, m_B, verdict_eta, verdict_f,
                                    verdict_for, verdict_general, verdict_omega)
from mockcong.arith import jacobi
from mockcong.errors import HypothesisViolation, InvalidArgument
from mockcong.qseries import EtaQuotientSpec
from mockcong.sequences import DIAMOND1, resolve

PARTITION = EtaQuotientSpec([(1, -1)])


def test_m_B_examples():
    assert m_B(35, 5) == 35 and m_B(7, -13) == 7
    assert m_B(12, -4) == 4
    assert m_B(5, -1) == 5
    with pytest.raises(InvalidArgument):
        m_B(5, 0)


def test_Q_mB_examples():
    assert Q_mB(35, -1) == 35
    assert Q_mB(8, 16) == 8 and alpha_beta(8, 16) == (3, 0)
    assert Q_mB(12, -6) == 6 and alpha_beta(12, -6) == (1, 1)


def test_Q_mB_divides_m():
    for m in range(1, 200):
        for B in (-60, -24, -12, -8, -6, -4, -3, -2, -1, 1, 4, 16, 18):
            Q = Q_mB(m, B)
            assert m % Q == 0 and Q % m_B(m, B) == 0


def test_verdict_f_examples():
    v = verdict_f(4, 1, 5)
    assert v.outcome == RULED_OUT and v.reason == "ell-does-not-divide-m"
    assert verdict_f(5, 1, 5).outcome == MET
    v = verdict_f(5, 3, 5)
    assert (v.outcome, v.reason) == (RULED_OUT, "legendre-clash")
    assert str(v) == "RuledOut(legendre-clash)"


def test_verdict_omega_examples():
    assert verdict_omega(4, 0, 5).reason == "ell-does-not-divide-m"
    v = verdict_omega(5, 1, 5)
    assert v.outcome == MET and v.symbol_zero
    assert verdict_omega(5, 3, 5).outcome == RULED_OUT


def test_verdict_eta_examples():
    v = verdict_eta(PARTITION, 5, 4, 5)
    assert v.outcome == MET and v.symbol_zero
    for m in range(2, 40, 2):
        for t in range(m):
            assert verdict_eta(DIAMOND1, m, t, 5).outcome == OUT_OF_HYPOTHESIS
    for t in range(5):
        clash = jacobi(6 * t - 1, 5) == jacobi(-1, 5)
        assert verdict_eta(DIAMOND1, 5, t, 5).ruled_out == clash


def test_verdict_eta_hypotheses():
    assert verdict_eta(EtaQuotientSpec([(1, 1)]), 5, 0, 7).reason == "B-nonnegative"
    assert verdict_eta(EtaQuotientSpec([(1, -5)]), 5, 0, 5).reason == "ell-divides-BN"


def test_verdict_general_examples():
    for m, t in [(5, 4), (5, 1), (10, 3), (7, 2)]:
        a, b = verdict_general(-1, 1, 0, m, t, 5), verdict_eta(PARTITION, m, t, 5)
        assert (a.outcome, a.reason) == (b.outcome, b.reason)
    assert verdict_general(-1, 1, -1, 5, 4, 5).outcome == OUT_OF_HYPOTHESIS
    v = verdict_general(-4, 6, 0, 5, 2, 5)
    assert v.outcome == RULED_OUT and v.reason == "legendre-clash"


def test_andrews_condition_examples():
    assert andrews_condition(5, 3)
    assert not andrews_condition(5, 0)
    assert andrews_condition(5, 2)


def test_ell_must_be_prime_at_least_5():
    for ell in (2, 3, 4, 9, 25):
        with pytest.raises(HypothesisViolation):
            verdict_f(ell, 0, ell)


def test_verdict_for_dispatch():
    assert verdict_for(resolve("f"), 5, 3, 5).theorem == "F"
    assert verdict_for(resolve("omega"), 5, 3, 5).theorem == "Omega"
    assert verdict_for(resolve("partition"), 5, 4, 5).theorem == "Eta"
    d = verdict_f(5, 3, 5).as_dict()
    assert set(d) == {"theorem", "m", "t", "ell", "outcome", "reason", "symbol_zero"}
