"""Arithmetic layer: sieves, g(k), C2, singular series, Ramanujan sums."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singseries import arith
from singseries.exceptions import (DomainError, PreconditionError,
                                   ResourceLimitError)

import oracles


# --- smallest prime factor table ------------------------------------------

def test_spf_small_table():
    t = arith.build_spf_table(10)
    assert t.spf[2:11].tolist() == [2, 3, 2, 5, 2, 7, 2, 3, 2]


def test_spf_minimal():
    assert arith.build_spf_table(2).spf[2] == 2


def test_spf_invariants_to_1e4():
    t = arith.build_spf_table(10**4)
    flags = oracles.bool_sieve(10**4)
    for k in range(2, 10**4 + 1):
        p = int(t.spf[k])
        assert k % p == 0
        assert p * p <= k or p == k
        assert (p == k) == bool(flags[k])


def test_spf_prime_count_1e7():
    t = arith.build_spf_table(10**7)
    ks = np.arange(2, 10**7 + 1, dtype=np.int32)
    n_primes = int(np.count_nonzero(t.spf[2:] == ks))
    assert n_primes == int(oracles.bool_sieve(10**7).sum()) == 664579


def test_spf_cap_is_enforced():
    with pytest.raises(ResourceLimitError):
        arith.build_spf_table(arith.SPF_TABLE_CAP + 1)
    with pytest.raises(DomainError):
        arith.build_spf_table(1)


def test_primes_against_oracle():
    assert np.array_equal(arith.primes(10**5), oracles.primes_oracle(10**5))


# --- the multiplicative factor g ------------------------------------------

def test_g_base_cases():
    assert arith.g_of(1) == 1.0
    assert arith.g_of(2) == 1.0


def test_g_two_factor_value():
    assert arith.g_of(15) == pytest.approx(8.0 / 3.0, rel=1e-15)


def test_g_primorial_against_rational_oracle():
    want = oracles.g_fraction(2310)  # 2*3*5*7*11
    assert want == Fraction(32, 9)
    assert arith.g_of(2310) == pytest.approx(float(want), rel=1e-13)


def test_g_rejects_zero():
    with pytest.raises(DomainError):
        arith.g_of(0)


@settings(max_examples=150)
@given(st.integers(1, 10**4), st.integers(1, 10**4))
def test_g_multiplicative_on_coprime_pairs(m, n):
    if math.gcd(m, n) != 1:
        return
    assert oracles.g_fraction(m * n) == oracles.g_fraction(m) * oracles.g_fraction(n)
    assert arith.g_of(m * n) == pytest.approx(arith.g_of(m) * arith.g_of(n),
                                              rel=1e-12)


@settings(max_examples=100)
@given(st.integers(1, 5 * 10**5))
def test_g_even_halving_and_prime_powers(k):
    assert arith.g_of(2 * k) == arith.g_of(k)


@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 6))
def test_g_prime_power_equals_prime(p, m):
    if p**m <= 10**6:
        assert arith.g_of(p**m) == arith.g_of(p)


def test_g_phi_bound_up_to_1e6():
    g = arith.g_range(1, 10**6 + 1)
    phi = arith.totient_table(10**6)[1:].astype(np.float64)
    ks = np.arange(1, 10**6 + 1, dtype=np.float64)
    assert float((g * phi / ks).max()) <= 2.0


# --- segmented sieve --------------------------------------------------------

def test_segmented_g_small_range():
    got = arith.g_range(2, 12)
    want = [arith.g_of(k) for k in range(2, 12)]
    assert got.tolist() == want  # bit-identical, same multiply order
    assert got[4] == 2.0  # g(6) = g(3) = 2
    assert got[8] == pytest.approx(4.0 / 3.0)  # g(10) = g(5)


def test_segmented_g_matches_spf_path_to_1e6():
    table = arith.build_spf_table(10**6)
    got = arith.g_range(1, 10**6 + 1)
    for k in (1, 2, 97, 1024, 30030, 999983, 10**6):
        factors = [p for p, _ in table.factorize(k) if p > 2]
        assert got[k - 1] == arith.g_of(k, factors)
    # dense spot-check on a window
    for k in range(50000, 50200):
        assert got[k - 1] == arith.g_of(k)


def test_segmented_g_beyond_table():
    lo = 10**6
    got = arith.g_range(lo, lo + 10)
    want = [arith.g_of(k) for k in range(lo, lo + 10)]
    assert got.tolist() == want


def test_segment_range_prime_list():
    seg = arith.segment_range(10**4, 2 * 10**4)
    assert np.array_equal(seg.prime_list,
                          oracles.primes_oracle(math.isqrt(2 * 10**4 - 1)))
    with pytest.raises(PreconditionError):
        arith.segment_range(5, 5)


def test_odd_k_have_zero_singular_series():
    vals = arith.singular_series_range(101, 301)
    ks = np.arange(101, 301)
    assert (vals[ks % 2 == 1] == 0.0).all()
    assert (vals[ks % 2 == 0] > 1.32).all()


# --- twin prime constant ----------------------------------------------------

C2_REFERENCE = 0.6601618158468696  # prod_{p>2} (1 - (p-1)^-2)


def test_c2_leading_decimals():
    assert f"{arith.twin_prime_constant(1e-5):.5f}" == "0.66016"


def test_c2_against_long_product_to_1e8():
    ps = oracles.primes_oracle(10**8)[1:].astype(np.float64)
    brute = math.exp(math.fsum(np.log1p(-1.0 / (ps - 1.0) ** 2).tolist()))
    ours = arith.twin_prime_constant(1e-10)
    assert ours == pytest.approx(brute, abs=1e-9)
    assert ours == pytest.approx(C2_REFERENCE, rel=1e-14)


def test_c2_cutoff_stability():
    a = arith.twin_prime_constant()
    b = arith.twin_prime_constant(prime_cutoff=2 * 10**5)
    assert abs(a - b) <= 1e-12


def test_c2_tolerance_range_enforced():
    with pytest.raises(PreconditionError):
        arith.twin_prime_constant(1e-13)
    with pytest.raises(PreconditionError):
        arith.twin_prime_constant(1e-3)


def test_singular_series_scale():
    c2 = arith.twin_prime_constant()
    assert arith.singular_series(6) == pytest.approx(4 * c2, rel=1e-14)
    assert arith.singular_series(7) == 0.0
    sv = arith.singular_value(10)
    assert sv.g == pytest.approx(4.0 / 3.0)
    assert sv.sing == pytest.approx(2 * c2 * 4.0 / 3.0, rel=1e-14)


# --- Ramanujan sums ---------------------------------------------------------

def test_ramanujan_closed_form_values():
    assert arith.ramanujan_sum(1, 5) == 1
    assert arith.ramanujan_sum(2, 1) == -1
    assert arith.ramanujan_sum(5, 1) == -1
    assert arith.ramanujan_sum(4, 2) == -2
    assert arith.ramanujan_sum(6, 0) == 2  # phi(6), gcd(0, 6) = 6
    assert arith.ramanujan_sum(9, 3) == arith.ramanujan_sum_bruteforce(9, 3)


def test_ramanujan_even_in_n():
    for q in (4, 9, 12, 30):
        for n in range(0, 15):
            assert arith.ramanujan_sum(q, n) == arith.ramanujan_sum(q, -n)


def test_ramanujan_bruteforce_examples():
    assert arith.ramanujan_sum_bruteforce(6, 0) == 2
    assert arith.ramanujan_sum_bruteforce(4, 2) == -2
    with pytest.raises(PreconditionError):
        arith.ramanujan_sum_bruteforce(10**5 + 1, 1)


def test_ramanujan_against_divisor_oracle():
    for q in range(1, 60):
        for n in range(-20, 21):
            assert arith.ramanujan_sum(q, n) == oracles.ramanujan_divisor_sum(q, n)


@settings(max_examples=200)
@given(st.integers(1, 100), st.integers(1, 100), st.integers(-100, 100))
def test_ramanujan_multiplicative_in_q(q1, q2, n):
    if math.gcd(q1, q2) != 1:
        return
    assert (arith.ramanujan_sum(q1 * q2, n)
            == arith.ramanujan_sum(q1, n) * arith.ramanujan_sum(q2, n))


# --- truncated Ramanujan series --------------------------------------------

def test_truncated_series_first_terms():
    assert arith.singular_series_truncated(4, 1) == 1.0
    assert arith.singular_series_truncated(3, 2) == 0.0


def test_truncated_series_converges_to_product_form():
    target = arith.singular_series(6)
    errs = [abs(arith.singular_series_truncated(6, 1000 * 2**j) - target)
            for j in range(11)]  # Q = 1e3 .. 1.024e6
    assert errs[-1] < 5e-7  # measured 3.9e-8 at Q = 1e5, keeps shrinking
    assert max(errs[5:]) < max(errs[:5])
    assert errs[-1] < errs[0]


def test_truncated_series_odd_k_tends_to_zero():
    assert abs(arith.singular_series_truncated(9, 10**5)) < 1e-5
