"""End-to-end verification checks behind ``singseries verify``.

Each check returns a CheckResult with the measured quantities in its
detail string; ``run_all`` executes every check and the CLI prints one
verdict line per check.  The same functions back tests/test_acceptance.py
so the command-line gate and the test suite cannot drift apart.

Expensive artifacts (the error-term scan to 1e7, sieved singular-series
values) are computed once per run through the shared context.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import analytic, arith, cesaro, oscillation
from .zetafuncs import LOG_TWO_PI

GAMMA_1_SEED = 14.134725
C1_TARGET = 0.085
C1_WINDOW = 0.005
RATIO_WINDOW = (1.8, 3.3)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


class AcceptanceContext:
    """Lazy shared data for the checks."""

    x_scan = 10**7
    step_log = cesaro.DEFAULT_STEP_LOG

    @cached_property
    def sing_small(self) -> np.ndarray:
        """S(k) for k = 1..2000."""
        return arith.singular_series_range(1, 2001)

    @cached_property
    def scan_samples(self) -> list[cesaro.ErrorSample]:
        return cesaro.scan_error_samples(self.x_scan, step_log=self.step_log)

    @cached_property
    def first_zero(self) -> oscillation.ZetaZero:
        return oscillation.refine_zero(GAMMA_1_SEED)


def check_c2_reproduction(ctx: AcceptanceContext) -> CheckResult:
    """Criterion 1: C2 = 0.66016... and cutoff-doubling stability."""
    t0 = time.perf_counter()
    c2 = arith.twin_prime_constant(1e-5)
    stable = abs(arith.twin_prime_constant(1e-5, prime_cutoff=2 * 10**5) - c2)
    elapsed = time.perf_counter() - t0
    first5 = f"{c2:.5f}"
    ok = first5 == "0.66016" and stable <= 1e-9 and elapsed < 5.0
    return CheckResult(
        "c2-reproduction", ok,
        f"C2 = {c2!r} (5 decimals {first5}, want 0.66016); "
        f"doubling shift {stable:.2e} (<= 1e-9); {elapsed:.2f}s (< 5s)",
        elapsed)


def check_ramanujan_equivalence(ctx: AcceptanceContext) -> CheckResult:
    """Criterion 2: closed form == exponential sum, q <= 200, |n| <= 200."""
    t0 = time.perf_counter()
    bad = 0
    first_bad = ""
    for q in range(1, 201):
        for n in range(-200, 201):
            a = arith.ramanujan_sum(q, n)
            b = arith.ramanujan_sum_bruteforce(q, n)
            if a != b:
                bad += 1
                if not first_bad:
                    first_bad = f" first mismatch c_{q}({n}): {a} vs {b};"
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 10.0
    return CheckResult(
        "ramanujan-oracle-equivalence", ok,
        f"{200 * 401} pairs, {bad} mismatches;{first_bad} "
        f"{elapsed:.2f}s (< 10s)", elapsed)


def check_section3_constants(ctx: AcceptanceContext) -> CheckResult:
    """Criterion 3: A, B, U'(0)/U(0), the 1/C2 identities, prime-sum 0."""
    t0 = time.perf_counter()
    cb = analytic.constants_bundle()
    err_a = abs(cb.a_const - 0.5)
    err_b = abs(cb.b_const + 0.5)
    err_u = abs(cb.u_logderiv_at_zero - (LOG_TWO_PI - 1.0))
    inv_c2 = 1.0 / cb.c2
    z2 = analytic.zeta(2.0).real
    id1 = abs(4.0 * z2 * analytic.arithmetic_factor(1.0).real
              / (5.0 * analytic.zeta(4.0).real) - inv_c2)
    id2 = abs(4.0 * analytic.arithmetic_factor(0.0).real / (3.0 * z2) - inv_c2)
    res = analytic.prime_sum_identity_residual()
    ok = (err_a <= 1e-6 and err_b <= 1e-6 and err_u <= 1e-6
          and id1 <= 1e-8 and id2 <= 1e-8 and res < 1e-8)
    elapsed = time.perf_counter() - t0
    return CheckResult(
        "section3-constants", ok,
        f"|A-1/2| = {err_a:.2e}, |B+1/2| = {err_b:.2e}, "
        f"|U'/U(0)-(log 2pi - 1)| = {err_u:.2e} (<= 1e-6); "
        f"1/C2 identities {id1:.2e}, {id2:.2e} (<= 1e-8); "
        f"prime-sum residual {res:.2e} (< 1e-8)", elapsed)


def check_oscillation_constant(ctx: AcceptanceContext) -> CheckResult:
    """Criterion 4: |c_1| = 0.085 +- 0.005 from refined gamma_1."""
    t0 = time.perf_counter()
    zero = ctx.first_zero
    seed_err = abs(zero.gamma - GAMMA_1_SEED)
    c1 = oscillation.oscillation_constant(zero).c_value
    ok = seed_err <= 1e-6 and abs(abs(c1) - C1_TARGET) <= C1_WINDOW
    elapsed = time.perf_counter() - t0
    return CheckResult(
        "oscillation-constant", ok,
        f"gamma_1 = {zero.gamma:.9f} (seed offset {seed_err:.2e} <= 1e-6, "
        f"residual {zero.residual:.1e}); |c_1| = {abs(c1):.6f} "
        f"(want {C1_TARGET} +- {C1_WINDOW})", elapsed)


def check_closed_form_cross_validation(ctx: AcceptanceContext) -> CheckResult:
    """Criterion 5: closed forms vs Dirichlet partial sumsics; cascades."""
    t0 = time.perf_counter()
    n = 10**6
    g = arith.g_range(1, n + 1)
    ks = np.arange(1, n + 1, dtype=np.float64)
    g3_err = abs(analytic.g_dirichlet(3.0).real
                 - math.fsum((g * ks**-3.0).tolist()))
    sing = arith.singular_series_range(1, n + 1)
    f2_err = abs(analytic.singular_series_dirichlet(2.0).real
                 - math.fsum((sing * ks**-2.0).tolist()))
    s = complex(1.5, 0.0)
    v1 = analytic.g_dirichlet_stage(s, 1)
    v2 = analytic.g_dirichlet_stage(s, 2)
    v3 = analytic.g_dirichlet_stage(s, 3)
    casc = max(abs(v1 - v2), abs(v2 - v3), abs(v1 - v3))
    ok = g3_err <= 1e-6 and f2_err <= 1e-4 and casc <= 1e-9
    elapsed = time.perf_counter() - t0
    return CheckResult(
        "closed-form-cross-validation", ok,
        f"G(3) vs partial sum {g3_err:.2e} (<= 1e-6); "
        f"F(2) vs partial sum {f2_err:.2e} (<= 1e-4); "
        f"cascade spread {casc:.2e} at sigma=1.5 (<= 1e-9)", elapsed)


def check_mean_pipeline(ctx: AcceptanceContext) -> CheckResult:
    """Criterion 6: streaming S(x) vs direct sums; chunking invariance."""
    t0 = time.perf_counter()
    sing = ctx.sing_small
    stream = cesaro.PartialSumStream()
    worst = 0.0
    ks_all = np.arange(1, 2001, dtype=np.float64)
    for x in range(1, 2001):
        stream.absorb((np.array([x], dtype=np.int64), sing[x - 1:x]))
        s_stream = stream.cesaro_mean(float(x))
        s_direct = float(np.dot(float(x) - ks_all[:x], sing[:x]))
        worst = max(worst, abs(s_stream - s_direct) / max(1.0, abs(s_direct)))

    def totals(chunk: int) -> tuple[float, float]:
        st = cesaro.PartialSumStream()
        for seg in arith.singular_series_segments(10**6, chunk):
            st.absorb(seg)
        return st.t0, st.t1

    a0, a1 = totals(10**5)
    b0, b1 = totals(77777)
    chunk_dev = max(abs(a0 - b0) / a0, abs(a1 - b1) / a1)
    ok = worst <= 1e-9 and chunk_dev <= 1e-10
    elapsed = time.perf_counter() - t0
    return CheckResult(
        "mean-pipeline", ok,
        f"worst streaming-vs-direct rel dev {worst:.2e} over x <= 2000 "
        f"(<= 1e-9); chunking deviation {chunk_dev:.2e} (<= 1e-10)", elapsed)


def check_oscillation_evidence(ctx: AcceptanceContext) -> CheckResult:
    """Criterion 7: sign-change census of E(x)/x^(1/4) on [1e2, 1e7].

    Requires >= 10 sign changes, both signs attained, and the median
    full-oscillation crossing ratio inside [1.8, 3.3] around the
    single-zero prediction e^(4pi/gamma_1) ~ 2.43.  The measured E(x)
    carries every zero's oscillation at comparable amplitude (|c_2|/|c_1|
    ~ 0.79, |c_3|/|c_1| ~ 0.69, ...), so crossings come much denser than
    the single-zero model predicts; the ratio clause records that
    discrepancy rather than hiding it.
    """
    t0 = time.perf_counter()
    rep = cesaro.oscillation_report(ctx.scan_samples)
    n_changes = len(rep.sign_changes)
    both = rep.running_max > 0 > rep.running_min
    median = rep.median_ratio if rep.ratios else math.nan
    elapsed = time.perf_counter() - t0
    ok = (n_changes >= 10 and both
          and RATIO_WINDOW[0] <= median <= RATIO_WINDOW[1]
          and elapsed < 300.0)
    return CheckResult(
        "oscillation-evidence", ok,
        f"{n_changes} sign changes (>= 10); extrema "
        f"[{rep.running_min:.3f}, {rep.running_max:.3f}] (both signs: {both}); "
        f"median crossing ratio {median:.3f} (want "
        f"[{RATIO_WINDOW[0]}, {RATIO_WINDOW[1]}], single-zero prediction "
        f"{math.exp(4 * math.pi / ctx.first_zero.gamma):.3f}); "
        f"{elapsed:.1f}s (< 300s)", elapsed)


def check_zeta_engine(ctx: AcceptanceContext) -> CheckResult:
    """Criterion 8: classical zeta values and conjugate symmetry."""
    t0 = time.perf_counter()
    e2 = abs(analytic.zeta(2.0) - math.pi**2 / 6.0)
    e4 = abs(analytic.zeta(4.0) - math.pi**4 / 90.0)
    e0 = abs(analytic.zeta(0.0) - (-0.5))
    ratio = analytic.zeta_derivative(0.0) / analytic.zeta(0.0)
    er = abs(ratio - LOG_TWO_PI)
    rng = np.random.default_rng(20260809)
    worst_sym = 0.0
    for _ in range(20):
        s = complex(rng.uniform(-2.0, 4.0), rng.uniform(-100.0, 100.0))
        z = analytic.zeta(s)
        worst_sym = max(worst_sym,
                        abs(analytic.zeta(s.conjugate()) - z.conjugate())
                        / max(1.0, abs(z)))
    ok = (e2 <= 1e-10 and e4 <= 1e-10 and e0 <= 1e-8 and er <= 1e-8
          and worst_sym <= 1e-12)
    elapsed = time.perf_counter() - t0
    return CheckResult(
        "zeta-engine", ok,
        f"zeta(2) err {e2:.1e}, zeta(4) err {e4:.1e} (<= 1e-10); "
        f"zeta(0) err {e0:.1e}, zeta'(0)/zeta(0) vs log 2pi {er:.1e} "
        f"(<= 1e-8); conj-symmetry {worst_sym:.1e} at 20 points (<= 1e-12)",
        elapsed)


def check_first_moment(ctx: AcceptanceContext) -> CheckResult:
    """Criterion 9: |sum_{k<=x} S(k) - (x - log(x)/2)| < 10 at powers of 10."""
    t0 = time.perf_counter()
    stream = cesaro.PartialSumStream()
    feeder = cesaro._SegmentFeeder(arith.singular_series_segments(10**6))
    resids = {}
    for x in (10**3, 10**4, 10**5, 10**6):
        feeder.feed_to(stream, x)
        resids[x] = cesaro.first_moment_check(stream, float(x))
    ok = all(abs(r) < 10.0 for r in resids.values())
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"x=1e{int(math.log10(x))}: {r:+.3f}"
                       for x, r in resids.items())
    return CheckResult("first-moment-average", ok,
                       f"residuals {detail} (|.| < 10)", elapsed)


ALL_CHECKS = (
    check_c2_reproduction,
    check_ramanujan_equivalence,
    check_section3_constants,
    check_oscillation_constant,
    check_closed_form_cross_validation,
    check_mean_pipeline,
    check_oscillation_evidence,
    check_zeta_engine,
    check_first_moment,
)


def run_all(ctx: AcceptanceContext | None = None) -> list[CheckResult]:
    ctx = ctx or AcceptanceContext()
    return [check(ctx) for check in ALL_CHECKS]
