"""Independent oracles the tests check the package against.

Everything here deliberately avoids the package's own code paths:
factorizations come from sympy, prime lists from a plain boolean sieve,
zeta values from an accelerated alternating series, prime zeta from a
direct prime sum with an integral tail, and Cesaro sums from an
exactly-rounded dot product.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import sympy
from scipy.integrate import quad

_SPLIT = 134217729.0  # 2^27 + 1


def bool_sieve(limit: int) -> np.ndarray:
    """Plain Eratosthenes: is_prime flags for 0..limit."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i::i] = False
    return flags


def primes_oracle(limit: int) -> np.ndarray:
    return np.flatnonzero(bool_sieve(limit)).astype(np.int64)


def g_fraction(k: int) -> Fraction:
    """Exact rational g(k) with factorization from sympy."""
    out = Fraction(1)
    for p in sympy.factorint(k):
        if p > 2:
            out *= Fraction(p - 1, p - 2)
    return out


def ramanujan_divisor_sum(q: int, n: int) -> int:
    """c_q(n) through the other classical form: sum over d | (n, q) of
    d * mu(q/d)."""
    total = 0
    for d in sympy.divisors(q):
        if n % d == 0:
            total += d * sympy.mobius(q // d)
    return int(total)


def zeta_alternating(s: complex, n_terms: int = 60) -> complex:
    """zeta via the eta function, accelerating the alternating series
    eta(s) = sum (-1)^k (k+1)^-s with the Chebyshev-weight scheme of
    Cohen, Rodriguez Villegas and Zagier; error ~ (3+sqrt 8)^-n for
    moderate |Im s|."""
    n = n_terms
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    eta = 0.0 + 0j
    for k in range(n):
        c = b - c
        eta += c * (k + 1.0) ** (-s)
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0))
    return (eta / d) / (1.0 - 2.0 ** (1.0 - s))


def prime_zeta_direct(w: float, cutoff: int = 10**6) -> float:
    """sum_p p^-w by direct summation plus an integral tail using the
    prime-density approximation 1/log t (adequate far beyond the digits
    the tail contributes)."""
    ps = primes_oracle(cutoff).astype(np.float64)
    head = math.fsum((ps ** -w).tolist())
    tail, _ = quad(lambda t: t ** -w / math.log(t), cutoff, np.inf)
    return head + tail


def exact_dot_dd(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    """Exactly-rounded dot product a.b as a double-double."""
    p = a * b
    ah = _SPLIT * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLIT * b
    bh = bh - (bh - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    terms = p.tolist() + err.tolist()
    hi = math.fsum(terms)
    terms.append(-hi)
    return hi, math.fsum(terms)


def cesaro_direct(x: float, sing: np.ndarray) -> float:
    """S(x) = sum (x - k) S(k), exactly rounded; sing[k-1] = S(k)."""
    n = math.floor(x)
    ks = np.arange(1, n + 1, dtype=np.float64)
    hi, lo = exact_dot_dd(float(x) - ks, sing[:n])
    return hi + lo


def error_term_direct(x: float, sing: np.ndarray, linear_coeff: float) -> float:
    """E(x) against the main term, all cancellation done in extended
    precision; linear_coeff is the package's own main-term x coefficient."""
    n = math.floor(x)
    ks = np.arange(1, n + 1, dtype=np.float64)
    s_hi, s_lo = exact_dot_dd(float(x) - ks, sing[:n])
    pieces = [s_hi, s_lo]
    for coeff in (-0.5 * x, 0.5 * math.log(x), -linear_coeff):
        p = coeff * x
        ah = _SPLIT * coeff
        ah = ah - (ah - coeff)
        al = coeff - ah
        bh = _SPLIT * x
        bh = bh - (bh - x)
        bl = x - bh
        err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
        pieces += [p, err]
    return math.fsum(pieces)
