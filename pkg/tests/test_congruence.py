import pytest

from mockcong.congruence import ScanResult, check_progression, good_f, good_omega, scan_range
from mockcong.errors import InvalidArgument, PrecisionError
from mockcong.qseries import EXACT, Mod, eta_power
from mockcong.sequences import k_color, mock_f

from oracles import partition_counts


@pytest.fixture(scope="module")
def partitions_mod5():
    return eta_power(1, -1, 5 * 400 + 5, Mod(5))


def test_check_progression_examples(partitions_mod5):
    r = check_progression(partitions_mod5, 5, 4, 5, 400)
    assert r.holds and r.status == "HoldsUpTo(400)"
    r = check_progression(partitions_mod5, 5, 0, 5, 400)
    assert (r.first_fail_n, r.value) == (0, 1) and r.status == "FailsAt(0, 1)"
    r = check_progression(mock_f(4 * 400 + 1, Mod(5)), 4, 1, 5, 400)
    assert not r.holds and r.first_fail_n < 10


def test_failure_is_minimal_against_oracle():
    p = partition_counts(2000)
    s = eta_power(1, -1, 2000)
    for m in range(1, 12):
        for t in range(m):
            N = (2000 - t) // m
            r = check_progression(s, m, t, 7, N)
            bad = [n for n in range(N + 1) if p[m * n + t] % 7]
            assert r.first_fail_n == (bad[0] if bad else None)
            if bad:
                assert r.value == p[m * bad[0] + t] % 7


def test_precision_shortfall_is_an_error(partitions_mod5):
    with pytest.raises(PrecisionError):
        check_progression(partitions_mod5, 5, 4, 5, 402)
    with pytest.raises(PrecisionError):
        scan_range(eta_power(1, -1, 100, Mod(5)), 5, 5, 400)


def test_bad_inputs():
    s = eta_power(1, -1, 50, EXACT)
    with pytest.raises(InvalidArgument):
        check_progression(s, 5, 4, 4, 5)
    with pytest.raises(InvalidArgument):
        check_progression(s, 5, 5, 5, 5)
    with pytest.raises(InvalidArgument):
        check_progression(eta_power(1, -1, 50, Mod(7)), 5, 4, 5, 5)


def test_scan_range_examples(partitions_mod5):
    cells = {(r.m, r.t) for r in scan_range(partitions_mod5, 5, 5, 400)}
    assert cells == {(5, 4)}
    assert scan_range(partitions_mod5, 5, 0, 400) == []
    kc = k_color(2, 5 * 400 + 5, Mod(5))
    cells = {(r.m, r.t) for r in scan_range(kc, 5, 5, 400)}
    assert {(5, 2), (5, 3), (5, 4)} <= cells


def test_scan_range_threads_deterministic():
    s = mock_f(30 * 200 + 30, Mod(7))
    serial = scan_range(s, 7, 30, 200)
    assert scan_range(s, 7, 30, 200, threads=4) == serial
    assert serial == sorted(serial, key=lambda r: (r.m, r.t))


def test_scan_result_record():
    r = ScanResult(5, 4, 5, 100)
    d = r.as_dict()
    assert d["status"] == "holds" and d["evidence"] == "empirical (n <= 100)"
    assert r.checked == 101
    assert ScanResult(5, 0, 5, 100, 3, 2).checked == 4


def test_good_predicates():
    assert not good_f(1, 0) and not good_f(1, 3)
    assert not good_f(5, 0)
    assert good_f(5, 1)
    assert not good_omega(1, 2)
    assert not good_omega(5, 1)
    assert good_omega(5, 0)
    # a composite modulus uses any prime divisor
    assert good_f(35, 1) and good_omega(10, 0)
