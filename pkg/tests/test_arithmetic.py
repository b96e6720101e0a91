"""Tests for the cusp decomposition and Kloosterman-type sums.

Hand-derived expectations:
  * decompose(3,10): 3h=9=0*10+9 so h1=0, h2=9; nu=(0,3); mu=(0,9); alpha=9.
  * decompose(2,5):  3h=6=1*5+1 so h1=1, h2=1; nu=(0,2); mu=(0,1); alpha=1.
  * The k=10 twisted sum collapses to 2 cos(2 pi (4/25 + 3n/10)); the
    conjugated variant to 2 cos(2 pi (3/25 - n/10)).
  * The k=5 sum has single terms at h=2,3 giving 2 cos(2 pi (1-20n)/50).
"""

import math

import pytest
from mpmath import mpf

from qsign.arithmetic import (
    a_k,
    a_kj,
    a_kj_reduced_d5,
    a_kj_reduced_d10_abs,
    a_kj_rewrite,
    aggregated_bound_check,
    alpha_of,
    bound_check_d5,
    bound_check_d10,
    cal_a_k,
    decompose,
    divisor_count,
    kloosterman,
    select_hprime,
    weil_bound_check,
)
from qsign.numerics import cos_two_pi_rational, working_precision

TOL = mpf("1e-30")


def phi(k):
    return sum(1 for h in range(1, k + 1) if math.gcd(h, k) == 1)


# -- divisor count ------------------------------------------------------------


@pytest.mark.parametrize("n,expected", [(1, 1), (6, 4), (100, 9), (97, 2), (5040, 60)])
def test_divisor_count(n, expected):
    assert divisor_count(n) == expected


def test_divisor_count_rejects_nonpositive():
    with pytest.raises(ValueError):
        divisor_count(0)


def test_divisor_count_submultiplicative_at_100():
    for k in (3, 8, 30, 49, 110):
        assert divisor_count(100 * k) <= 9 * divisor_count(k)


# -- cusp decomposition --------------------------------------------------------


def test_decompose_3_over_10():
    c = decompose(3, 10)
    assert (c.d, c.h1, c.h2) == (10, 0, 9)
    assert (c.nu1, c.nu2, c.mu1, c.mu2) == (0, 3, 0, 9)
    assert c.alpha == 9
    assert c.hprime == 3


def test_decompose_2_over_5():
    c = decompose(2, 5)
    assert (c.d, c.h1, c.h2) == (5, 1, 1)
    assert (c.nu1, c.nu2, c.mu1, c.mu2) == (0, 2, 0, 1)
    assert c.alpha == 1
    assert c.hprime == 2


def test_decompose_reduces_modulo_k():
    assert decompose(13, 10) == decompose(3, 10)
    assert decompose(7, 5) == decompose(2, 5)


@pytest.mark.parametrize("h,k", [(1, 5), (4, 15), (9, 20), (7, 30), (11, 25)])
def test_decompose_invariants(h, k):
    c = decompose(h, k)
    assert 3 * c.h == c.h1 * k + c.h2 and 0 <= c.h2 < k
    assert c.h == c.d * c.nu1 + c.nu2 and 0 <= c.nu2 < c.d
    assert c.h2 == c.d * c.mu1 + c.mu2 and 0 <= c.mu2 < c.d
    assert c.alpha % c.d == (3 * c.h) % c.d and 1 <= c.alpha < c.d
    assert c.nu2 == c.h % c.d
    assert c.mu2 == c.alpha
    # companion inverse conditions
    assert (c.h * c.hprime) % k == (-1) % k
    assert c.hprime % (10 // c.d) == 0


def test_decompose_rejects_bad_input():
    with pytest.raises(ValueError):
        decompose(2, 10)  # gcd(h,k) != 1
    with pytest.raises(ValueError):
        decompose(1, 3)  # gcd(k,10) not in {5,10}


def test_select_hprime_parity_for_odd_k():
    for h, k in ((2, 5), (4, 15), (8, 25)):
        hp = select_hprime(h, k, 5)
        assert hp % 2 == 0
        assert (h * hp) % k == (-1) % k


# -- classical Kloosterman sums --------------------------------------------------


def test_kloosterman_k1_is_one():
    for n, m in ((0, 0), (5, 7), (-3, 11)):
        v = kloosterman(1, n, m).value
        assert abs(v.re.value - 1) < TOL and abs(v.im.value) < TOL


def test_kloosterman_small_values():
    # K_2(0,0): single term h=1, h'=1, e^0 = 1
    v = kloosterman(2, 0, 0).value
    assert abs(v.re.value - 1) < TOL
    # K_3(1,1): h=1->h'=2 and h=2->h'=1, both phases e^(2 pi i) = 1
    v = kloosterman(3, 1, 1).value
    assert abs(v.re.value - 2) < TOL and abs(v.im.value) < TOL


def test_kloosterman_trivial_bound():
    with working_precision(128):
        for k in (4, 7, 12, 30):
            for n, m in ((1, 2), (0, 5), (-4, 9)):
                v = kloosterman(k, n, m).value.abs()
                assert v.value <= phi(k) + float(v.err)


def test_weil_bound_examples():
    assert weil_bound_check(1, 3, 4)
    assert weil_bound_check(3, 1, 1)  # |K| = 2 <= 2 sqrt(3)
    for k in (5, 10, 15, 28, 45):
        for n in (0, 1, 7):
            for m in (0, 2, 9):
                assert weil_bound_check(k, n, m)


# -- twisted sums ----------------------------------------------------------------


def test_k10_sum_is_the_cosine():
    with working_precision(128):
        for n in range(10):
            got = a_k(10, n)
            expect = cos_two_pi_rational(16 + 30 * n, 100) * 2
            assert abs(got.re.value - expect.value) < TOL
            assert abs(got.im.value) < TOL


def test_k10_conjugated_sum_is_the_cosine():
    with working_precision(128):
        for n in range(10):
            got = cal_a_k(10, n)
            expect = cos_two_pi_rational(12 - 10 * n, 100) * 2
            assert abs(got.re.value - expect.value) < TOL
            assert abs(got.im.value) < TOL


def test_k5_sum_hand_derived():
    # single terms at h=2 and h=3 with exponents 1-20n and -(1+30n) mod 50
    with working_precision(128):
        for n in range(7):
            got = a_k(5, n)
            expect = cos_two_pi_rational(1 - 20 * n, 50) * 2
            assert abs(got.re.value - expect.value) < TOL


def test_periodicity_in_n():
    with working_precision(128):
        for k, j in ((15, 2), (20, 9), (35, 3)):
            a = a_kj(k, j, 4)
            b = a_kj(k, j, 4 + k)
            assert (a - b).abs().value < TOL


def test_rewrite_matches_direct_on_grid():
    with working_precision(128):
        for k in (5, 10, 15, 20, 25, 30):
            d = math.gcd(k, 10)
            js = (1, 2, 3, 4) if d == 5 else (1, 3, 7, 9)
            for j in js:
                for n in (0, 3, 11):
                    diff = (a_kj(k, j, n) - a_kj_rewrite(k, j, n)).abs()
                    assert diff.value < TOL


def test_rewrite_under_larger_shifts():
    with working_precision(128):
        for h_shift, hp_shift in ((2, 1), (3, 4), (0, 2)):
            diff = (
                a_kj(15, 4, 6)
                - a_kj_rewrite(15, 4, 6, h_shift=h_shift, hp_shift=hp_shift)
            ).abs()
            assert diff.value < TOL


def test_per_term_shift_invariance_is_exact():
    # each summand's root-of-unity exponent is invariant (mod 10k) under
    # h -> h + k with recomputed h1, nu1, and under the h' shifts, so the
    # shifted exponent tables agree entry by entry
    from qsign.arithmetic import _akj_exponent_table

    for k, j in ((15, 2), (20, 7), (35, 1), (30, 9)):
        base = _akj_exponent_table(k, j)
        for h_shift, hp_shift in ((1, 0), (0, 1), (2, 3)):
            shifted = _akj_exponent_table(k, j, h_shift=h_shift, hp_shift=hp_shift)
            assert shifted == base, (k, j, h_shift, hp_shift)


def test_twist_constants_d5():
    # j^2 - 5j - alpha^2 + 5 alpha = +2 for j in {1,4}, -2 for j in {2,3}
    for j, expected in ((1, 2), (4, 2), (2, -2), (3, -2)):
        al = alpha_of(j, 5)
        assert j * j - 5 * j - al * al + 5 * al == expected


def test_twist_constants_d10():
    for j, expected in ((1, 12), (9, 12), (3, -12), (7, -12)):
        al = alpha_of(j, 10)
        assert j * j - 10 * j - al * al + 10 * al == expected


def test_reduced_identity_d5():
    with working_precision(128):
        for k, j, n in ((5, 3, 0), (15, 1, 7), (25, 2, 3), (45, 4, 12)):
            diff = (a_kj(k, j, n) - a_kj_reduced_d5(k, j, n)).abs()
            assert diff.value < TOL


def test_reduced_identity_d10():
    with working_precision(128):
        for k, j, n in ((10, 3, 0), (20, 9, 5), (30, 7, 2), (40, 1, 9)):
            direct = a_kj(k, j, n).abs()
            reduced = a_kj_reduced_d10_abs(k, j, n)
            assert abs(direct.value - reduced.value) < TOL


def test_reduced_identity_negative_controls():
    with working_precision(128):
        bad5 = a_kj_reduced_d5(15, 2, 1, alpha_shift=1)
        assert (a_kj(15, 2, 1) - bad5).abs().value > mpf("1e-6")
        bad10 = a_kj_reduced_d10_abs(20, 3, 1, alpha_shift=2)
        assert abs(a_kj(20, 3, 1).abs().value - bad10.value) > mpf("1e-6")


def test_domain_errors():
    with pytest.raises(ValueError):
        a_kj(12, 1, 0)  # gcd(k,10) = 2
    with pytest.raises(ValueError):
        a_kj(15, 5, 0)  # j shares a factor with d
    with pytest.raises(ValueError):
        a_kj_reduced_d5(10, 1, 0)
    with pytest.raises(ValueError):
        a_kj_reduced_d10_abs(15, 1, 0)
    with pytest.raises(ValueError):
        kloosterman(0, 1, 1)


# -- bounds ----------------------------------------------------------------------


def test_bound_checks_examples():
    assert bound_check_d5(5, 2, 0)
    assert bound_check_d10(10, 3, 0)


def test_bound_checks_small_grid():
    for k in (5, 15, 25):
        for j in (1, 2, 3, 4):
            for n in (0, 5):
                assert bound_check_d5(k, j, n)
    for k in (10, 20, 30):
        for j in (1, 3, 7, 9):
            for n in (0, 5):
                assert bound_check_d10(k, j, n)


def test_aggregated_bounds():
    for k in (5, 10, 15, 20):
        for n in (0, 7):
            assert aggregated_bound_check(k, n)
            assert aggregated_bound_check(k, n, twisted=True)


def test_bound_check_domain():
    with pytest.raises(ValueError):
        bound_check_d5(10, 1, 0)
    with pytest.raises(ValueError):
        bound_check_d10(5, 1, 0)
