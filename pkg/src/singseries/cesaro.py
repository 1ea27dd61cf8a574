"""Streaming Cesaro mean of the singular series and its error term.

The central object is S(x) = sum_{k<=x} (x-k) S(k), which decomposes as

    S(x) = x*t0(floor x) - t1(floor x),
    t0(m) = sum_{k<=m} S(k),   t1(m) = sum_{k<=m} k*S(k),

so a single forward pass maintaining (t0, t1) serves every x.  The error
term is E(x) = S(x) - M(x) with main term

    M(x) = x^2/2 - (x log x)/2 + (1 - gamma - log 2pi)/2 * x,

and E(x)/x^(1/4) is the normalized quantity whose sign changes the
oscillation report counts.

Numerical hazard: at x = 1e9, t1 ~ 1e18 exceeds the binary64 integer
range while E(x) is O(x^(1/4)), so naive accumulation would drown the
error term.  The stream therefore commits fixed 65536-wide blocks (at
absolute k boundaries), each summed to a double-double through
``math.fsum`` (head plus recovered residual), and folds those into a
double-double accumulator.  Accumulated rounding is below
n_blocks * eps^2 * t1 (~1e-16 absolute at x = 1e8) and, because block
boundaries are fixed in k rather than tied to caller chunking, results
are bit-identical no matter how the input is segmented.  The
default scan cap stays at x_max = 1e8; wider runs only need more time,
not a different accumulator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import singular_series_segments
from .exceptions import PreconditionError, SequencingError
from .zetafuncs import LOG_TWO_PI, euler_gamma

# coefficient of x in the main term: (1 - gamma - log 2pi)/2
MAIN_TERM_LINEAR = 0.5 * (1.0 - euler_gamma() - LOG_TWO_PI)

DEFAULT_X_MIN = 100.0
DEFAULT_STEP_LOG = 0.02
MAX_STEP_LOG = 0.05  # >= ~17 samples per oscillation period 4pi/gamma_1
SCAN_X_CAP = 10**8

_BLOCK = 1 << 16
_SPLIT = 134217729.0  # 2^27 + 1, Dekker splitter


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah = _SPLIT * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLIT * b
    bh = bh - (bh - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _dd_add(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    s, e = _two_sum(x[0], y[0])
    e += x[1] + y[1]
    hi, lo = _two_sum(s, e)
    return hi, lo


def _dd_neg(x: tuple[float, float]) -> tuple[float, float]:
    return -x[0], -x[1]


def _dd_mul_d(x: tuple[float, float], d: float) -> tuple[float, float]:
    p, e = _two_prod(x[0], d)
    e += x[1] * d
    hi, lo = _two_sum(p, e)
    return hi, lo


def _two_prod_arrays(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized Dekker TwoProd: a*b = p + err exactly, elementwise."""
    p = a * b
    ah = _SPLIT * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLIT * b
    bh = bh - (bh - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


@dataclass(frozen=True)
class ErrorSample:
    """One sampled point: x, S(x), E(x) and E(x)/x^(1/4).

    Constructed so that s_of_x == main_term(x) + e_of_x holds exactly in
    binary64 (s_of_x is produced by that very addition).
    """

    x: float
    s_of_x: float
    e_of_x: float
    normalized: float


class PartialSumStream:
    """Forward accumulator of t0 = sum S(k) and t1 = sum k*S(k).

    Values must arrive as consecutive k continuing from ``upto`` + 1; the
    stream holds only its current frontier, so queries address exactly
    floor(x) == upto.  Immutable snapshots of (t0, t1) at the frontier
    are cheap; all heavy work is vectorized.
    """

    def __init__(self) -> None:
        self.upto = 0
        self._committed = 0  # multiple of the block width
        self._t0 = (0.0, 0.0)
        self._t1 = (0.0, 0.0)
        self._pend0: list[np.ndarray] = []  # S(k) since last commit
        self._pend1: list[np.ndarray] = []  # k*S(k) head since last commit
        self._pend1e: list[np.ndarray] = []  # k*S(k) TwoProd residuals

    def absorb(self, values) -> "PartialSumStream":
        """Fold in (k, S(k)) pairs continuing from upto + 1.

        ``values`` is either an iterable of (k, value) pairs or a tuple
        (k_array, value_array).  A gap or overlap in k raises
        SequencingError.  Returns self for chaining.
        """
        if (isinstance(values, tuple) and len(values) == 2
                and isinstance(values[0], np.ndarray)):
            ks, vals = values
            vals = np.asarray(vals, dtype=np.float64)
        else:
            pairs = list(values)
            if not pairs:
                return self
            ks = np.array([k for k, _ in pairs], dtype=np.int64)
            vals = np.array([v for _, v in pairs], dtype=np.float64)
        if ks.size == 0:
            return self
        if ks[0] != self.upto + 1 or ks[-1] != self.upto + ks.size or \
                (ks.size > 1 and not bool((np.diff(ks) == 1).all())):
            raise SequencingError(
                f"expected consecutive k starting at {self.upto + 1}, "
                f"got [{ks[0]}..{ks[-1]}] of size {ks.size}")
        self._pend0.append(vals)
        kv, kv_err = _two_prod_arrays(ks.astype(np.float64), vals)
        self._pend1.append(kv)
        self._pend1e.append(kv_err)
        self.upto += ks.size
        self._commit_full_blocks()
        return self

    @staticmethod
    def _fsum_dd(terms: list[float]) -> tuple[float, float]:
        """Sum as a double-double: fsum rounds correctly, a second fsum
        against the rounded head recovers the discarded residual."""
        hi = math.fsum(terms)
        terms.append(-hi)
        return hi, math.fsum(terms)

    def _commit_full_blocks(self) -> None:
        n_full = (self.upto - self._committed) // _BLOCK
        if n_full == 0:
            return
        take = n_full * _BLOCK
        buf0 = np.concatenate(self._pend0)
        buf1 = np.concatenate(self._pend1)
        buf1e = np.concatenate(self._pend1e)
        for i in range(n_full):
            blk = slice(i * _BLOCK, (i + 1) * _BLOCK)
            self._t0 = _dd_add(self._t0, self._fsum_dd(buf0[blk].tolist()))
            self._t1 = _dd_add(self._t1, self._fsum_dd(
                buf1[blk].tolist() + buf1e[blk].tolist()))
        self._pend0 = [buf0[take:]] if take < buf0.size else []
        self._pend1 = [buf1[take:]] if take < buf1.size else []
        self._pend1e = [buf1e[take:]] if take < buf1e.size else []
        self._committed += take

    def _totals_dd(self) -> tuple[tuple[float, float], tuple[float, float]]:
        t0, t1 = self._t0, self._t1
        if self._pend0:
            t0 = _dd_add(t0, self._fsum_dd(np.concatenate(self._pend0).tolist()))
            t1 = _dd_add(t1, self._fsum_dd(
                np.concatenate(self._pend1).tolist()
                + np.concatenate(self._pend1e).tolist()))
        return t0, t1

    @property
    def t0(self) -> float:
        """sum_{k<=upto} S(k)."""
        hi, lo = self._totals_dd()[0]
        return hi + lo

    @property
    def t1(self) -> float:
        """sum_{k<=upto} k*S(k)."""
        hi, lo = self._totals_dd()[1]
        return hi + lo

    def _require_frontier(self, x: float) -> int:
        m = math.floor(x)
        if m > self.upto:
            raise PreconditionError(
                f"stream advanced only to k = {self.upto}, need floor(x) = {m}")
        if m < self.upto:
            raise PreconditionError(
                f"stream already past floor(x) = {m} (at {self.upto}); "
                "the frontier-only stream cannot look back")
        return m

    def cesaro_mean(self, x: float) -> float:
        """S(x) = x*t0 - t1 at the current frontier (floor(x) == upto)."""
        self._require_frontier(x)
        t0, t1 = self._totals_dd()
        s = _dd_add(_dd_mul_d(t0, float(x)), _dd_neg(t1))
        return s[0] + s[1]

    def error_sample(self, x: float) -> ErrorSample:
        """E(x) = S(x) - M(x), carried in double-double to survive the
        cancellation of the ~x^2/2 leading parts."""
        self._require_frontier(x)
        x = float(x)
        t0, t1 = self._totals_dd()
        acc = _dd_add(_dd_mul_d(t0, x), _dd_neg(t1))      # S(x)
        acc = _dd_add(acc, _dd_neg(_two_prod(0.5 * x, x)))  # - x^2/2
        acc = _dd_add(acc, _two_prod(0.5 * math.log(x), x))  # + x log x / 2
        acc = _dd_add(acc, _dd_neg(_two_prod(MAIN_TERM_LINEAR, x)))
        e = acc[0] + acc[1]
        return ErrorSample(x=x, s_of_x=main_term(x) + e, e_of_x=e,
                           normalized=e / x ** 0.25)


def main_term(x: float) -> float:
    """x^2/2 - (x log x)/2 + (1 - gamma - log 2pi)/2 * x, for x >= 1."""
    if x < 1:
        raise PreconditionError("main_term defined for x >= 1")
    x = float(x)
    return 0.5 * x * x - 0.5 * x * math.log(x) + MAIN_TERM_LINEAR * x


def error_term(stream: PartialSumStream, x: float) -> ErrorSample:
    """Module-level alias of PartialSumStream.error_sample."""
    return stream.error_sample(x)


def first_moment_check(stream: PartialSumStream, x: float) -> float:
    """t0(floor x) - (x - log(x)/2); small relative to x when the
    first-moment asymptotics hold."""
    stream._require_frontier(x)
    return stream.t0 - (float(x) - 0.5 * math.log(x))


def geometric_grid(x_min: float, x_max: float, step_log: float) -> np.ndarray:
    """Strictly increasing grid x_min * exp(j*step_log), j = 0..J, with
    J = floor(log(x_max/x_min)/step_log); exact duplicates are dropped."""
    if not 0 < step_log <= MAX_STEP_LOG:
        raise PreconditionError(f"step_log must lie in (0, {MAX_STEP_LOG}]")
    if not 1 <= x_min <= x_max:
        raise PreconditionError("need 1 <= x_min <= x_max")
    count = int(math.floor(math.log(x_max / x_min) / step_log * (1 + 1e-12))) + 1
    xs = x_min * np.exp(step_log * np.arange(count))
    keep = np.ones(count, dtype=bool)
    keep[1:] = np.diff(xs) > 0
    return xs[keep]


class _SegmentFeeder:
    """Pulls (k_array, value_array) segments and doles out prefixes."""

    def __init__(self, segments):
        self._it = iter(segments)
        self._ks: np.ndarray | None = None
        self._vals: np.ndarray | None = None
        self._pos = 0

    def feed_to(self, stream: PartialSumStream, target: int) -> None:
        while stream.upto < target:
            if self._ks is None or self._pos == self._ks.size:
                try:
                    self._ks, self._vals = next(self._it)
                except StopIteration:
                    raise PreconditionError(
                        f"segment source exhausted at k = {stream.upto}, "
                        f"need {target}") from None
                self._pos = 0
            hi = min(self._ks.size, self._pos + (target - stream.upto))
            stream.absorb((self._ks[self._pos:hi], self._vals[self._pos:hi]))
            self._pos = hi


def sample_geometric(stream: PartialSumStream, x_min: float, x_max: float,
                     step_log: float = DEFAULT_STEP_LOG,
                     segments=None) -> list[ErrorSample]:
    """Error samples on the geometric grid, advancing the stream once.

    ``segments`` supplies further (k, S(k)) arrays when the stream has
    not yet reached floor(x_max); without it the whole grid must already
    lie at or behind the frontier.
    """
    xs = geometric_grid(x_min, x_max, step_log)
    feeder = _SegmentFeeder(segments) if segments is not None else None
    out = []
    for x in xs.tolist():
        target = math.floor(x)
        if stream.upto < target:
            if feeder is None:
                raise PreconditionError(
                    f"x = {x} exceeds the sieved range (upto = {stream.upto})")
            feeder.feed_to(stream, target)
        out.append(stream.error_sample(x))
    return out


def scan_error_samples(x_max: float, x_min: float = DEFAULT_X_MIN,
                       step_log: float = DEFAULT_STEP_LOG,
                       segment_size: int = 10**6) -> list[ErrorSample]:
    """One-pass scan over [x_min, x_max] fed by the segmented sieve."""
    if x_max > SCAN_X_CAP:
        raise PreconditionError(
            f"default scan capped at x_max = {SCAN_X_CAP}")
    stream = PartialSumStream()
    segs = singular_series_segments(math.floor(x_max), segment_size)
    return sample_geometric(stream, x_min, x_max, step_log, segments=segs)


@dataclass(frozen=True)
class OscillationReport:
    """Sign-change census of the normalized error term.

    ``sign_changes`` lists the bracketing sample intervals; ``ratios``
    holds the full-oscillation abscissa ratios c_{i+2}/c_i between
    same-direction crossings (c_i is the geometric midpoint of interval
    i), so a pure cosine in log x yields its full period, e^(4pi/gamma)
    for the model built on the zero at height gamma.
    """

    sign_changes: list[tuple[float, float]]
    running_max: float
    running_min: float
    ratios: list[float] = field(default_factory=list)

    @property
    def median_ratio(self) -> float:
        if not self.ratios:
            raise PreconditionError("no full-oscillation ratios available")
        return float(np.median(self.ratios))


def oscillation_report(samples: list[ErrorSample]) -> OscillationReport:
    """Count sign changes of E(x)/x^(1/4) over samples sorted by x."""
    if len(samples) < 2:
        raise PreconditionError("oscillation report needs at least 2 samples")
    changes: list[tuple[float, float]] = []
    prev_sign = 0
    prev_x = samples[0].x
    run_max = -math.inf
    run_min = math.inf
    for s in samples:
        v = s.normalized
        run_max = max(run_max, v)
        run_min = min(run_min, v)
        sign = (v > 0) - (v < 0)
        if sign != 0:
            if prev_sign != 0 and sign != prev_sign:
                changes.append((prev_x, s.x))
            prev_sign = sign
            prev_x = s.x
    mids = [math.sqrt(a * b) for a, b in changes]
    ratios = [mids[i + 2] / mids[i] for i in range(len(mids) - 2)]
    return OscillationReport(sign_changes=changes, running_max=run_max,
                             running_min=run_min, ratios=ratios)
