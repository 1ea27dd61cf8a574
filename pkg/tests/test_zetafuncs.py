"""Euler-Maclaurin zeta engine against independent series oracles."""

import math

import pytest

from singseries import analytic
from singseries.exceptions import DomainError, PoleError
from singseries.zetafuncs import LOG_TWO_PI, euler_gamma

import oracles


def test_zeta_classical_values():
    assert abs(analytic.zeta(2.0) - math.pi**2 / 6) < 1e-12
    assert abs(analytic.zeta(4.0) - math.pi**4 / 90) < 1e-12
    assert analytic.zeta(0.0) == -0.5


def test_zeta_half_against_alternating_series():
    ours = analytic.zeta(0.5)
    ref = oracles.zeta_alternating(0.5)
    assert abs(ours - ref) < 1e-12
    assert ours.real == pytest.approx(-1.4603545, abs=1e-7)


@pytest.mark.parametrize("s", [0.25 + 3.7j, 2.0 - 11.0j, -0.75 + 7.1j,
                               1.5 + 14.0j])
def test_zeta_complex_against_alternating_series(s):
    assert abs(analytic.zeta(s) - oracles.zeta_alternating(s, 80)) < 1e-10


def test_zeta_pole_and_domain():
    with pytest.raises(PoleError):
        analytic.zeta(1.0)
    with pytest.raises(DomainError):
        analytic.zeta(-2.5)
    with pytest.raises(DomainError):
        analytic.zeta(0.5 + 101j)


def test_zeta_derivative_special_value():
    ratio = analytic.zeta_derivative(0.0) / analytic.zeta(0.0)
    assert abs(ratio - LOG_TWO_PI) < 1e-8


def test_zeta_derivative_matches_finite_difference():
    h = 1e-5
    fd = (analytic.zeta(2 + h) - analytic.zeta(2 - h)) / (2 * h)
    assert abs(analytic.zeta_derivative(2.0) - fd) < 1e-6


def test_zeta_derivative_at_first_zero():
    rho = complex(0.5, 14.134725141734694)
    assert abs(analytic.zeta(rho)) < 1e-8
    assert abs(analytic.zeta_derivative(rho)) > 0.5


def test_prime_zeta_at_two():
    ours = analytic.prime_zeta(2.0).real
    assert ours == pytest.approx(0.4522474200, abs=1e-9)
    assert ours == pytest.approx(oracles.prime_zeta_direct(2.0), abs=1e-9)


def test_prime_zeta_at_four_direct_sum():
    ps = oracles.primes_oracle(10**5).astype(float)
    direct = math.fsum((ps ** -4.0).tolist())
    assert abs(analytic.prime_zeta(4.0).real - direct) < 1e-12


def test_prime_zeta_complex_domain_membership():
    val = analytic.prime_zeta(1.25 + 7.067j)
    assert math.isfinite(val.real) and math.isfinite(val.imag)
    with pytest.raises(DomainError):
        analytic.prime_zeta(1.0)


def test_euler_gamma_value():
    assert euler_gamma() == pytest.approx(0.5772156649015329, abs=1e-15)
