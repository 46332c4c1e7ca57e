"""Unit tests for base-b repunit arithmetic and admissibility screens."""

from math import gcd

import pytest

from collapse_lab.qarith import (
    QNumber,
    TwoAdicSplit,
    gcd_identities_check,
    in_G,
    in_Gss,
    lemma_arithmetic_check,
    make_qnumber,
    prime_power_decomposition,
    qnum,
    torus_order_odd,
    two_adic_split,
)


def test_qnum_small_values():
    assert qnum(1, 2) == 1
    assert qnum(2, 2) == 3
    assert qnum(3, 2) == 7
    assert qnum(2, 3) == 4
    assert qnum(3, 3) == 13
    assert qnum(4, 10) == 1111


def test_qnum_matches_direct_sum():
    for b in range(2, 10):
        for a in range(1, 13):
            assert qnum(a, b) == sum(b**i for i in range(a))


def test_qnum_rejects_bad_arguments():
    with pytest.raises(ValueError):
        qnum(0, 2)
    with pytest.raises(ValueError):
        qnum(3, 1)


def test_make_qnumber_roundtrip_and_validation():
    rec = make_qnumber(3, 2)
    assert rec == QNumber(3, 2, 7)
    with pytest.raises(ValueError):
        QNumber(3, 2, 8)
    with pytest.raises(ValueError):
        QNumber(0, 2, 0)


def test_two_adic_split_exhaustive():
    for n in range(1, 2049):
        split = two_adic_split(n)
        assert split.n == n
        assert split.b % 2 == 1
        assert (1 << split.a) * split.b == n


def test_two_adic_split_rejects_nonpositive():
    with pytest.raises(ValueError):
        two_adic_split(0)
    with pytest.raises(ValueError):
        TwoAdicSplit(12, 1, 3)  # 2 * 3 != 12


def test_gcd_identities_exhaustive_small_box():
    # Exhaustive over the declared verification box: a, c <= 12, b <= 9.
    for b in range(2, 10):
        for a in range(1, 13):
            for c in range(1, 13):
                assert gcd_identities_check(a, b, c), (a, b, c)


def test_gcd_identities_component_meaning():
    # Spot-check that the three identities say what they claim.
    a, b, c = 6, 4, 9
    assert gcd(qnum(a, b), b - 1) == gcd(a, b - 1)
    assert gcd(qnum(a, b), qnum(c, b)) == qnum(gcd(a, c), b)
    assert qnum(a * c, b) == qnum(a, b) * qnum(c, b**a)


def test_prime_power_decomposition_known_values():
    assert prime_power_decomposition(2) == (2, 1)
    assert prime_power_decomposition(4) == (2, 2)
    assert prime_power_decomposition(8) == (2, 3)
    assert prime_power_decomposition(9) == (3, 2)
    assert prime_power_decomposition(27) == (3, 3)
    assert prime_power_decomposition(121) == (11, 2)
    assert prime_power_decomposition(97) == (97, 1)


def test_prime_power_decomposition_exhaustive_consistency():
    for q in range(2, 1000):
        try:
            p, m = prime_power_decomposition(q)
        except ValueError:
            # Must genuinely have two distinct prime factors.
            factors = set()
            t = q
            d = 2
            while d * d <= t:
                while t % d == 0:
                    factors.add(d)
                    t //= d
                d += 1
            if t > 1:
                factors.add(t)
            assert len(factors) > 1, q
        else:
            assert p**m == q
            # p must be prime.
            assert all(p % d for d in range(2, int(p**0.5) + 1))


def test_prime_power_decomposition_rejects():
    for bad in (0, 1, 6, 12, 100):
        with pytest.raises(ValueError):
            prime_power_decomposition(bad)


def test_in_G_clauses():
    # n = 3 with q > 2.
    assert in_G(3, 3)
    assert in_G(3, 4)
    assert not in_G(3, 2)
    # n > 3 odd.
    assert in_G(5, 2)
    assert in_G(7, 3)
    # n > 3 with q even.
    assert in_G(4, 2)
    assert in_G(6, 4)
    # n = 2 with q = 1 mod 4.
    assert in_G(2, 5)
    assert in_G(2, 13)
    assert not in_G(2, 7)
    assert not in_G(2, 3)
    # 0 < a < c with n > 2: n = 4 (a = 2), q = 17 (c = 4).
    assert in_G(4, 17)
    # a = c > 1: n = 4 (a = 2), q = 5 (c = 2).
    assert in_G(4, 5)
    assert not in_G(4, 3)  # a = 2, c = 1: no clause fires


def test_in_G_requires_prime_power_and_n_at_least_2():
    with pytest.raises(ValueError):
        in_G(1, 5)
    with pytest.raises(ValueError):
        in_G(3, 6)


def test_in_Gss_against_direct_recomputation():
    for n in range(3, 16):
        for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27, 32):
            a = two_adic_split(n).a
            c = two_adic_split(q - 1).a
            want = n % 2 == 1 or q % 2 == 0 or 0 < a < c or a == c > 1
            assert in_Gss(n, q) == want, (n, q)


def test_in_Gss_rejects_small_n():
    with pytest.raises(ValueError):
        in_Gss(2, 5)


def test_torus_order_odd_matches_direct():
    for n in range(2, 12):
        for q in (2, 3, 4, 5, 7, 8, 9, 11, 13):
            want = (qnum(n, q) // gcd(q - 1, n)) % 2 == 1
            assert torus_order_odd(n, q) == want, (n, q)


def test_lemma_arithmetic_exhaustive():
    # Every admissible pair in the declared box: odd 1 < l <= 11, q <= 200.
    pairs = 0
    for l in (3, 5, 7, 9, 11):
        for q in range(2, 201):
            if q % l != 1:
                continue
            assert lemma_arithmetic_check(l, q), (l, q)
            pairs += 1
    assert pairs > 100  # the box is not accidentally empty


def test_lemma_arithmetic_rejects_bad_arguments():
    with pytest.raises(ValueError):
        lemma_arithmetic_check(4, 5)
    with pytest.raises(ValueError):
        lemma_arithmetic_check(3, 5)  # 5 != 1 mod 3
