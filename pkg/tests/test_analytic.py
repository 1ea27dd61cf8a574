"""Closed forms, Euler products, and the main-term constants."""

import math
from fractions import Fraction

import numpy as np
import pytest

from singseries import analytic, arith
from singseries.exceptions import DomainError, IllConditionedError
from singseries.zetafuncs import LOG_TWO_PI

import oracles


C2 = arith.twin_prime_constant()


def _random_domain_points(n, rng):
    """Points of the evaluation strip away from poles and zeta zeros."""
    out = []
    while len(out) < n:
        s = complex(rng.uniform(-0.9, 3.0), rng.uniform(-50.0, 50.0))
        if abs(s) < 1e-3 or abs(s - 1) < 1e-3 or abs(s + 1) < 1e-3:
            continue
        try:
            analytic.g_dirichlet(s)
        except IllConditionedError:
            continue
        out.append(s)
    return out


# --- the 1/C2 product identities -------------------------------------------

def test_product_identity_at_one():
    lhs = 4 * analytic.zeta(2.0) * analytic.arithmetic_factor(1.0) \
        / (5 * analytic.zeta(4.0))
    assert abs(lhs - 1.0 / C2) < 1e-8


def test_product_identity_at_zero():
    lhs = 4 * analytic.arithmetic_factor(0.0) / (3 * analytic.zeta(2.0))
    assert abs(lhs - 1.0 / C2) < 1e-8


# --- arithmetic factor ------------------------------------------------------

def test_arithmetic_factor_cutoff_doubling():
    s = complex(-0.75, 7.0673625)
    a = analytic.arithmetic_factor(s)
    b = analytic.arithmetic_factor(s, prime_cutoff=2 * 10**5)
    assert abs(a - b) / abs(a) < 1e-9


def test_arithmetic_factor_domain():
    with pytest.raises(DomainError):
        analytic.arithmetic_factor(complex(-0.95, 0.0))
    with pytest.raises(DomainError):
        analytic.arithmetic_factor(complex(0.0, 50.5))


def test_conjugate_symmetry_of_products():
    rng = np.random.default_rng(7)
    for s in _random_domain_points(5, rng):
        for f in (analytic.arithmetic_factor, analytic.g_dirichlet,
                  analytic.singular_series_dirichlet,
                  analytic.pole_free_factor):
            z = f(s)
            assert abs(f(s.conjugate()) - z.conjugate()) <= 1e-12 * abs(z)


# --- closed forms vs partial sums and each other ----------------------------

def test_f_equals_scaled_g_at_random_points():
    rng = np.random.default_rng(11)
    for s in _random_domain_points(20, rng):
        f = analytic.singular_series_dirichlet(s)
        g = analytic.g_dirichlet(s)
        assert abs(f - 2 * C2 * 2.0 ** (-s) * g) / abs(f) < 1e-10


def test_g_closed_form_vs_partial_sum_at_three():
    g = arith.g_range(1, 10**6 + 1)
    ks = np.arange(1, 10**6 + 1, dtype=np.float64)
    partial = math.fsum((g * ks ** -3.0).tolist())
    assert abs(analytic.g_dirichlet(3.0).real - partial) < 1e-6


def test_f_closed_form_vs_partial_sum_at_two():
    sing = arith.singular_series_range(1, 10**6 + 1)
    ks = np.arange(1, 10**6 + 1, dtype=np.float64)
    partial = math.fsum((sing * ks ** -2.0).tolist())
    assert abs(analytic.singular_series_dirichlet(2.0).real - partial) < 1e-4


def test_pole_guards():
    for bad in (1.0 + 1e-8, 1e-9 + 0j):
        with pytest.raises(IllConditionedError):
            analytic.g_dirichlet(bad)
    with pytest.raises(IllConditionedError):
        analytic.pole_free_factor(-1.0 + 1e-8)


# --- cascade stages ---------------------------------------------------------

def test_cascade_stages_agree_at_sigma_15():
    s = complex(1.5, 0.0)
    v1 = analytic.g_dirichlet_stage(s, 1)
    v2 = analytic.g_dirichlet_stage(s, 2)
    v3 = analytic.g_dirichlet_stage(s, 3)
    assert abs(v1 - v2) < 1e-9
    assert abs(v2 - v3) < 1e-9
    assert abs(v1 - v3) < 1e-9


def test_cascade_stage2_vs_stage3_at_half():
    s = complex(0.5, 0.0)
    assert abs(analytic.g_dirichlet_stage(s, 2)
               - analytic.g_dirichlet_stage(s, 3)) < 1e-9


def test_cascade_stage_domains():
    with pytest.raises(DomainError):
        analytic.g_dirichlet_stage(0.5, 1)
    with pytest.raises(DomainError):
        analytic.g_dirichlet_stage(0.01, 2)
    with pytest.raises(DomainError):
        analytic.g_dirichlet_stage(1.5, 4)


def test_stage_factor_identities_in_exact_rationals():
    """The two per-prime algebra steps behind the cascade, done in
    Fractions: (1 - p^-s)(1 + ((p-1)/(p-2))/(p^s - 1)) = 1 + 1/((p-2)p^s)
    and (1 + p^-(s+1))^-1 (1 + 1/((p-2)p^s)) = 1 + 2/((p-2)(p^(s+1)+1))."""
    for p in (3, 5, 7):
        for s in (1, 2, 3):
            ps = Fraction(p) ** s
            lhs1 = (1 - 1 / ps) * (1 + Fraction(p - 1, p - 2) / (ps - 1))
            assert lhs1 == 1 + Fraction(1, p - 2) / ps
            ps1 = Fraction(p) ** (s + 1)
            lhs2 = (1 + Fraction(1, p - 2) / ps) / (1 + 1 / ps1)
            assert lhs2 == 1 + Fraction(2) / ((p - 2) * (ps1 + 1))


# --- insertion identities ---------------------------------------------------

def test_insertion_identities_residuals():
    r1, r2 = analytic.euler_product_identity_residuals(2.0)
    assert r1 < 1e-8 and r2 < 1e-8
    r1, r2 = analytic.euler_product_identity_residuals(3.0)
    assert r1 < 1e-10 and r2 < 1e-10
    r1, r2 = analytic.euler_product_identity_residuals(1.1)
    assert r1 < 1e-9 and r2 < 1e-9  # looser region, still tiny
    with pytest.raises(DomainError):
        analytic.euler_product_identity_residuals(1.01)


# --- constants --------------------------------------------------------------

def test_constants_bundle():
    cb = analytic.constants_bundle()
    assert abs(cb.a_const - 0.5) < 1e-6
    assert abs(cb.b_const + 0.5) < 1e-6
    assert abs(cb.u_logderiv_at_zero - (LOG_TWO_PI - 1)) < 1e-6
    assert abs(cb.c_const - 0.5 * (1 - cb.euler_gamma - cb.log_two_pi)) < 1e-12
    assert abs(cb.c_const_numeric - cb.c_const) < 1e-6
    assert cb.c2 == C2


def test_prime_sum_identity_is_termwise_zero():
    # the two summands cancel per prime: denominator simplifies to p(p^2-1)
    for p in (3, 5, 11, 101):
        den = (p - 2) * (p + 1) ** 2 * (1 + Fraction(2, (p - 2) * (p + 1)))
        assert Fraction(-2 * p, 1) / den + Fraction(2, p * p - 1) == 0


def test_prime_sum_identity_residual():
    assert analytic.prime_sum_identity_residual(10**6) < 1e-10
    assert analytic.prime_sum_identity_residual(10**7) < 1e-8
