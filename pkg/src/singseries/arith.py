"""Exact and near-exact arithmetic layer.

Implements the number-theoretic backbone:

* smallest-prime-factor sieve (``SpfTable``) and a segmented sieve for
  ranges beyond the table cap,
* the multiplicative factor g(k) = prod_{p | k, p > 2} (p-1)/(p-2)
  (empty product = 1, so g(1) = g(2) = 1, g(2k) = g(k), g(p^m) = g(p)),
* the twin prime constant C2 = prod_{p>2} (1 - 1/(p-1)^2) = 0.66016...,
* the prime-pair singular series S(k) = 2*C2*g(k) for even k, 0 for odd k,
* Ramanujan sums c_q(n), both the divisor/Mobius closed form and the
  defining exponential sum, and the truncated Ramanujan-series expansion
  of the singular series.

g(k) is carried in binary64 in the bulk paths: the product has at most
~15 factors for k below 1e18, so the relative error stays below 1e-13.
Exact-rational oracles live in the test suite.

All tables are immutable after construction and safe to share across
threads; range computations are pure functions of their arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import (DomainError, NumericalConsistencyError,
                         PreconditionError, ResourceLimitError)
from .zetafuncs import prime_zeta

# An SpfTable above this many entries would dominate memory (int32 entries:
# 4 bytes each, so the cap is a 400 MB table).  Larger ranges must use the
# segmented path.
SPF_TABLE_CAP = 10**8


@dataclass(frozen=True)
class SpfTable:
    """Smallest-prime-factor table for 2 <= k <= limit.

    ``spf[k]`` is the smallest prime factor of k; ``spf[k] == k`` exactly
    when k is prime.  Entries 0 and 1 are unused (set to 0).
    """

    limit: int
    spf: np.ndarray = field(repr=False)

    def factorize(self, k: int) -> list[tuple[int, int]]:
        """Prime factorization of k as [(p, exponent), ...], p ascending."""
        if not 1 <= k <= self.limit:
            raise DomainError(f"k={k} outside table range [1, {self.limit}]")
        out = []
        while k > 1:
            p = int(self.spf[k])
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            out.append((p, e))
        return out

    def distinct_odd_primes(self, k: int) -> list[int]:
        return [p for p, _ in self.factorize(k) if p > 2]


def build_spf_table(limit: int) -> SpfTable:
    """Sieve the smallest prime factor of every k in [2, limit].

    Raises ResourceLimitError above SPF_TABLE_CAP entries.
    """
    if limit < 2:
        raise DomainError("limit must be at least 2")
    if limit > SPF_TABLE_CAP:
        raise ResourceLimitError(
            f"SpfTable of {limit} entries exceeds the cap {SPF_TABLE_CAP}; "
            "use the segmented range functions instead")
    spf = np.zeros(limit + 1, dtype=np.int32)
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == 0:
            sl = spf[i * i::i]
            sl[sl == 0] = i
    # anything still unmarked at k >= 2 is prime
    rest = np.flatnonzero(spf[2:] == 0) + 2
    spf[rest] = rest
    spf.setflags(write=False)
    return SpfTable(limit=limit, spf=spf)


# ---------------------------------------------------------------------------
# prime lists (single factorization backbone: extracted from SpfTable)

_prime_cache: dict[int, np.ndarray] = {}


def primes(limit: int) -> np.ndarray:
    """Ascending array of all primes <= limit (cached)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    for cap, arr in _prime_cache.items():
        if cap >= limit:
            return arr[:np.searchsorted(arr, limit, side="right")]
    table = build_spf_table(limit)
    ks = np.arange(2, limit + 1, dtype=np.int32)
    arr = (np.flatnonzero(table.spf[2:] == ks) + 2).astype(np.int64)
    arr.setflags(write=False)
    # keep only the largest cache entry
    _prime_cache.clear()
    _prime_cache[limit] = arr
    return arr


_work_table: SpfTable | None = None


def factorize(k: int) -> list[tuple[int, int]]:
    """Prime factorization of any k >= 1, [(p, e), ...] with p ascending."""
    global _work_table
    if k < 1:
        raise DomainError("factorize requires k >= 1")
    if k <= 10**7:
        if _work_table is None or _work_table.limit < k:
            _work_table = build_spf_table(max(1 << 16, 1 << k.bit_length()))
        return _work_table.factorize(k)
    out = []
    for p in primes(math.isqrt(k)).tolist():
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            out.append((p, e))
    if k > 1:
        out.append((k, 1))
    return out


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def totient(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


@lru_cache(maxsize=4)
def mobius_table(limit: int) -> np.ndarray:
    """mu(q) for q = 0..limit (mu(0) set to 0)."""
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes(math.isqrt(limit)).tolist():
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    # account for a single prime factor > sqrt(limit): flip sign where the
    # remaining cofactor is that prime
    rem = np.arange(limit + 1, dtype=np.int64)
    for p in primes(math.isqrt(limit)).tolist():
        q = p
        while q <= limit:
            rem[q::q] //= p
            q *= p
    mu[rem > 1] *= -1
    mu.setflags(write=False)
    return mu


@lru_cache(maxsize=4)
def totient_table(limit: int) -> np.ndarray:
    """phi(q) for q = 0..limit (phi(0) set to 0)."""
    phi = np.arange(limit + 1, dtype=np.int64)
    is_comp = np.zeros(limit + 1, dtype=bool)
    for p in range(2, limit + 1):
        if not is_comp[p]:
            is_comp[p * p::p] = True
            phi[p::p] -= phi[p::p] // p
    phi[0] = 0
    phi.setflags(write=False)
    return phi


# ---------------------------------------------------------------------------
# the multiplicative factor g(k)


def g_of(k: int, odd_prime_factors: list[int] | None = None) -> float:
    """g(k) = prod over odd primes p | k of (p-1)/(p-2).

    ``odd_prime_factors`` may carry the distinct odd primes dividing k
    (ascending); when omitted they are computed here.  Factors multiply in
    ascending order so that every evaluation path of g is bit-identical.
    """
    if k < 1:
        raise DomainError("g(k) requires k >= 1")
    if odd_prime_factors is None:
        odd_prime_factors = [p for p, _ in factorize(k) if p > 2]
    val = 1.0
    for p in odd_prime_factors:
        val *= (p - 1) / (p - 2)
    return val


@dataclass(frozen=True)
class SegmentRange:
    """Half-open range [lo, hi) with the primes needed to sieve it."""

    lo: int
    hi: int
    prime_list: np.ndarray = field(repr=False)


def segment_range(lo: int, hi: int) -> SegmentRange:
    if not 1 <= lo < hi:
        raise PreconditionError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    return SegmentRange(lo=lo, hi=hi, prime_list=primes(math.isqrt(hi - 1)))


def segmented_g(seg: SegmentRange) -> np.ndarray:
    """g(k) for every k in [seg.lo, seg.hi), as a float64 array.

    Marks each prime p <= sqrt(hi-1) across the segment and tracks the
    unfactored cofactor; a cofactor > 1 after marking is a single prime
    above sqrt(hi-1).  Factor multiplications happen in ascending-p order,
    matching the SpfTable path bit for bit.
    """
    lo, hi = seg.lo, seg.hi
    val = np.ones(hi - lo, dtype=np.float64)
    rem = np.arange(lo, hi, dtype=np.int64)
    for p in seg.prime_list.tolist():
        start = (-lo) % p
        if p > 2:
            val[start::p] *= (p - 1) / (p - 2)
        q = p
        while q < hi:
            rem[(-lo) % q::q] //= p
            q *= p
    big = rem > 2  # leftover cofactor is an odd prime > sqrt(hi-1)
    val[big] *= (rem[big] - 1.0) / (rem[big] - 2.0)
    return val


def g_range(lo: int, hi: int) -> np.ndarray:
    """Convenience wrapper: segmented g(k) over [lo, hi)."""
    return segmented_g(segment_range(lo, hi))


# ---------------------------------------------------------------------------
# twin prime constant

# Expansion order for the tail of log C2 in powers of 1/p; remainder is
# below sum_{p>P} (order+1) p^-(order+1), i.e. ~1e-45 at P = 1e5.
_C2_TAIL_ORDER = 12


def _c2_tail_coeffs(order: int) -> list[float]:
    """Coefficients c_m with sum_{p} log(1 - (p-1)^-2) = -sum c_m p^-m.

    (p-1)^-2 = sum_{m>=2} (m-1) p^-m; compose with log(1-v) = -sum v^r / r.
    """
    v = [0.0] * (order + 1)
    for m in range(2, order + 1):
        v[m] = float(m - 1)
    total = [0.0] * (order + 1)
    power = v[:]
    r = 1
    while any(power):
        for m in range(order + 1):
            total[m] += power[m] / r
        # power <- power * v, truncated at `order`
        nxt = [0.0] * (order + 1)
        for a in range(2, order + 1):
            if power[a] == 0.0:
                continue
            for b in range(2, order + 1 - a):
                nxt[a + b] += power[a] * v[b]
        power = nxt
        r += 1
    return total


def twin_prime_constant(rel_tol: float = 1e-10, prime_cutoff: int = 10**5) -> float:
    """C2 = prod_{p>2} (1 - 1/(p-1)^2), the twin prime constant.

    Direct product over odd primes up to ``prime_cutoff`` plus a tail
    computed from prime zeta values: the log of the missing factors is
    expanded in powers of 1/p and each power summed exactly over p >
    prime_cutoff.  The achieved accuracy (~1e-14) far exceeds any
    ``rel_tol`` in the accepted range, and is stable under doubling of the
    cutoff; rel_tol is validated against its documented range only.
    """
    if not 1e-12 <= rel_tol <= 1e-4:
        raise PreconditionError("rel_tol must lie in [1e-12, 1e-4]")
    if prime_cutoff < 100:
        raise PreconditionError("prime_cutoff must be at least 100")
    ps = primes(prime_cutoff)[1:].astype(np.float64)  # odd primes
    log_c2 = math.fsum(np.log1p(-1.0 / ((ps - 1.0) ** 2)).tolist())
    tail = 0.0
    for m, c in enumerate(_c2_tail_coeffs(_C2_TAIL_ORDER)):
        if c == 0.0:
            continue
        # sum_{p>P} p^-m <= 2 P^(1-m) / ((m-1) log P); once a term's bound
        # is below the noise floor, computing prime_zeta(m) minus the
        # partial sum would only inject cancellation noise, so skip it.
        bound = 2.0 * prime_cutoff ** (1 - m) / ((m - 1) * math.log(prime_cutoff))
        if c * bound < 1e-17:
            continue
        pz_tail = prime_zeta(m).real - math.fsum((ps ** -m).tolist()) - 2.0 ** -m
        tail -= c * pz_tail
    return math.exp(log_c2 + tail)


@lru_cache(maxsize=1)
def _two_c2() -> float:
    """2*C2, the scale of the singular series (single cached authority)."""
    return 2.0 * twin_prime_constant()


# ---------------------------------------------------------------------------
# the singular series


@dataclass(frozen=True)
class SingularValue:
    """One evaluation of the singular series: k, g(k), and S(k)."""

    k: int
    g: float
    sing: float


def singular_series(k: int) -> float:
    """S(k): 2*C2*g(k) for even k != 0, and 0 for odd k."""
    if k < 1:
        raise DomainError("singular series defined for k >= 1")
    if k % 2:
        return 0.0
    return _two_c2() * g_of(k)


def singular_value(k: int) -> SingularValue:
    g = g_of(k)
    return SingularValue(k=k, g=g, sing=0.0 if k % 2 else _two_c2() * g)


def singular_series_range(lo: int, hi: int) -> np.ndarray:
    """S(k) for k in [lo, hi) as a float64 array."""
    g = g_range(lo, hi)
    vals = _two_c2() * g
    ks = np.arange(lo, hi, dtype=np.int64)
    vals[ks % 2 == 1] = 0.0
    return vals


def singular_series_segments(x_max: int, segment_size: int = 10**6,
                             start: int = 1):
    """Yield (k_array, S(k)_array) covering [start, x_max] in order."""
    lo = start
    while lo <= x_max:
        hi = min(lo + segment_size, x_max + 1)
        yield np.arange(lo, hi, dtype=np.int64), singular_series_range(lo, hi)
        lo = hi


# ---------------------------------------------------------------------------
# Ramanujan sums


def ramanujan_sum(q: int, n: int) -> int:
    """c_q(n) by the closed form mu(q/d) * phi(q) / phi(q/d), d = (n, q).

    gcd(0, q) is taken as q, which makes c_q(0) = phi(q); the sum is even
    in n.  Exact integer arithmetic throughout.
    """
    if q < 1:
        raise DomainError("ramanujan_sum requires q >= 1")
    d = math.gcd(n, q)
    m = q // d
    mu = mobius(m)
    if mu == 0:
        return 0
    return mu * (totient(q) // totient(m))


@lru_cache(maxsize=512)
def _coprime_residues(q: int) -> np.ndarray:
    a = np.arange(1, q + 1, dtype=np.int64)
    return a[np.gcd(a, q) == 1]


def ramanujan_sum_bruteforce(q: int, n: int) -> int:
    """c_q(n) straight from the defining exponential sum.

    Sums e(an/q) over residues a coprime to q and rounds to the nearest
    integer; the imaginary part and the rounding residual must both stay
    below 1e-8 * q or a NumericalConsistencyError signals a bug.  Cost is
    O(q), so q is capped at 1e5.
    """
    if q < 1:
        raise DomainError("ramanujan_sum_bruteforce requires q >= 1")
    if q > 10**5:
        raise PreconditionError("brute-force path capped at q <= 1e5")
    a = _coprime_residues(q)
    z = np.exp((2j * math.pi / q) * ((a * (n % q)) % q))
    total = complex(z.sum())
    nearest = round(total.real)
    if abs(total.imag) > 1e-8 * q or abs(total.real - nearest) > 1e-8 * q:
        raise NumericalConsistencyError(
            f"exponential sum for c_{q}({n}) did not round cleanly: {total}")
    return int(nearest)


def singular_series_truncated(k: int, q_max: int) -> float:
    """Partial Ramanujan series sum_{q <= q_max} mu(q)^2/phi(q)^2 * c_q(-k).

    Converges to S(k) as q_max grows: to 2*C2*g(k) for even k and to 0 for
    odd k.  The q = 1 term alone is 1, the average value of the series.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if q_max < 1:
        raise PreconditionError("q_max must be >= 1")
    mu = mobius_table(q_max)
    phi = totient_table(q_max)
    qs = np.arange(1, q_max + 1, dtype=np.int64)
    d = np.gcd(qs, k)
    m = qs // d
    # mu(q)^2/phi(q)^2 * c_q(-k) = mu(q)^2 * mu(m) / (phi(q) * phi(m))
    sel = mu[qs] != 0
    terms = (mu[m[sel]].astype(np.float64)
             / (phi[qs[sel]] * phi[m[sel]]).astype(np.float64))
    return math.fsum(terms.tolist())
