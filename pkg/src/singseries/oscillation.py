"""Zeta zeros on the critical line and the oscillation they induce.

Each complex zero rho = 1/2 + i*gamma of the zeta function puts a pole of
the Mellin transform of the error term at s_rho = rho/2 - 1 =
-3/4 + i*gamma/2, whose residue

    c_rho = (4 C2/(2^(s+1)+1)) * zeta(s) zeta(s+1)
            / (2 zeta'(rho) s (s+1)) * A(s),   s = s_rho,

sets the amplitude of an x^(1/4)-scale oscillation in E(x).  The first
zero gives |c_1| ~ 0.085.  The heuristic (not proved; term-by-term
convergence is delicate) sampling model is

    E(x)/x^(1/4) ~ sum over zeros of 2 |c_rho| cos((gamma/2) log x
                                                   + arg c_rho),

log-periodic per zero with period 4 pi / gamma in log x.  ``compare``
reports purely descriptive statistics of measured data against that
model; nothing here carries pass/fail semantics beyond the zero
refinement contracts.

Zeros are seeded from an embedded 6-decimal table (10 entries, heights
below 50) and polished by Newton iteration; searching for zeros from
scratch is out of scope.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .analytic import arithmetic_factor, zeta, zeta_derivative
from .arith import twin_prime_constant
from .cesaro import ErrorSample
from .exceptions import MultiplicityWarning, PreconditionError, RefinementError

# 6-decimal seed ordinates of the first ten critical-line zeros; Newton
# refinement is what the rest of the module trusts.
ZERO_SEEDS = (14.134725, 21.022040, 25.010858, 30.424876, 32.935062,
              37.586178, 40.918719, 43.327073, 48.005151, 49.773832)

SIMPLE_ZERO_FLOOR = 1e-3  # |zeta'(rho)| below this trips the warning
RESIDUAL_TARGET = 1e-8


@dataclass(frozen=True)
class ZetaZero:
    """A critical-line ordinate gamma with refinement status."""

    gamma: float
    refined: bool
    residual: float  # |zeta(1/2 + i*gamma)| after refinement


@dataclass(frozen=True)
class OscillationConstant:
    """The pole s_rho = rho/2 - 1 and its residue-derived amplitude."""

    zero: ZetaZero
    s_pole: complex
    c_value: complex


def refine_zero(seed: float, max_steps: int = 20) -> ZetaZero:
    """Newton-polish a seed ordinate to |zeta(1/2 + i gamma)| < 1e-8.

    Iterates t <- t - zeta(1/2+it) / (i zeta'(1/2+it)); the seed must
    already be near a zero (|zeta| < 0.1 there).  Simplicity is asserted
    through |zeta'(rho)| > 1e-3, emitting MultiplicityWarning otherwise;
    behaviour for multiple zeros is undefined beyond the warning.
    """
    t = complex(seed, 0.0)
    if abs(zeta(0.5 + 1j * t)) >= 0.1:
        raise PreconditionError(
            f"seed {seed} is not near a zero: |zeta(1/2+it)| >= 0.1")
    for _ in range(max_steps):
        z = zeta(0.5 + 1j * t)
        if abs(z) < 1e-13:
            break
        dz = 1j * zeta_derivative(0.5 + 1j * t)
        t = t - z / dz
    gamma = t.real
    residual = abs(zeta(complex(0.5, gamma)))
    if residual >= RESIDUAL_TARGET or abs(t.imag) > 1e-9:
        raise RefinementError(
            f"Newton failed from seed {seed}: residual {residual}, "
            f"imaginary drift {t.imag}")
    if abs(zeta_derivative(complex(0.5, gamma))) <= SIMPLE_ZERO_FLOOR:
        warnings.warn(
            f"zero at gamma = {gamma} looks multiple: |zeta'| <= "
            f"{SIMPLE_ZERO_FLOOR}; downstream residue formulas assume a "
            "simple zero", MultiplicityWarning)
    return ZetaZero(gamma=gamma, refined=True, residual=residual)


def zero_table(count: int = len(ZERO_SEEDS), refine: bool = True) -> list[ZetaZero]:
    """The first ``count`` zeros, refined from the embedded seeds."""
    if not 1 <= count <= len(ZERO_SEEDS):
        raise PreconditionError(
            f"zero table holds {len(ZERO_SEEDS)} seeds, asked for {count}")
    if refine:
        return [refine_zero(seed) for seed in ZERO_SEEDS[:count]]
    return [ZetaZero(gamma=s, refined=False, residual=math.nan)
            for s in ZERO_SEEDS[:count]]


def oscillation_constant(zero: ZetaZero,
                         prime_cutoff: int | None = None) -> OscillationConstant:
    """Residue amplitude c_rho at s_rho = rho/2 - 1 for a refined zero.

    For the first zero this is exactly the constant bounding
    limsup |E(x)|/x^(1/4) from below.  Conjugating the zero conjugates
    the constant.
    """
    if not zero.refined:
        raise PreconditionError("oscillation_constant needs a refined zero")
    gamma = zero.gamma
    s = complex(-0.75, gamma / 2.0)  # Re(s_pole) = -3/4 exactly
    rho = complex(0.5, gamma)
    zp = zeta_derivative(rho)
    if abs(zp) <= SIMPLE_ZERO_FLOOR:
        warnings.warn(
            f"|zeta'(rho)| = {abs(zp)} at gamma = {gamma}: residue formula "
            "assumes a simple zero", MultiplicityWarning)
    kwargs = {} if prime_cutoff is None else {"prime_cutoff": prime_cutoff}
    c = (4.0 * twin_prime_constant() / (2.0 ** (s + 1) + 1.0)) \
        * zeta(s) * zeta(s + 1) / (2.0 * zp * s * (s + 1)) \
        * arithmetic_factor(s, **kwargs)
    return OscillationConstant(zero=zero, s_pole=s, c_value=c)


def predicted_normalized(x: float,
                         constants: list[OscillationConstant]) -> float:
    """Truncated cosine-sum model of E(x)/x^(1/4) (heuristic)."""
    if x < 2:
        raise PreconditionError("model defined for x >= 2")
    u = math.log(x)
    total = 0.0
    for oc in constants:
        total += 2.0 * (oc.c_value
                        * cmath.exp(1j * (oc.zero.gamma / 2.0) * u)).real
    return total


@dataclass(frozen=True)
class ComparisonReport:
    """Descriptive comparison of measured E(x)/x^(1/4) with the model.

    correlation: Pearson r between samples and model values;
    amplitude_ratio: empirical envelope (max |normalized|) over the model
    ceiling 2 sum |c_rho|; phase_lag: the global phase rotation of the
    model that maximizes correlation, in radians.  No pass/fail meaning.
    """

    correlation: float
    amplitude_ratio: float
    phase_lag: float
    n_samples: int
    periods_spanned: float


def compare(measured: list[ErrorSample],
            constants: list[OscillationConstant]) -> ComparisonReport:
    """Correlate measured normalized error samples with the zero model.

    Requires at least 50 samples spanning at least 3 periods of the
    slowest model oscillation (the smallest gamma).
    """
    if not constants:
        raise PreconditionError("model needs at least one zero constant")
    if len(measured) < 50:
        raise PreconditionError("need at least 50 samples")
    xs = np.array([s.x for s in measured])
    ys = np.array([s.normalized for s in measured])
    span = math.log(xs.max() / xs.min())
    gamma_min = min(oc.zero.gamma for oc in constants)
    periods = span / (4.0 * math.pi / gamma_min)
    if periods < 3.0:
        raise PreconditionError(
            f"samples span {periods:.2f} model periods, need >= 3")
    u = np.log(xs)
    # model values decomposed per zero so a global phase can be applied
    per_zero = np.array([
        2.0 * abs(oc.c_value)
        * np.cos((oc.zero.gamma / 2.0) * u + cmath.phase(oc.c_value))
        for oc in constants])
    per_zero_quad = np.array([
        -2.0 * abs(oc.c_value)
        * np.sin((oc.zero.gamma / 2.0) * u + cmath.phase(oc.c_value))
        for oc in constants])
    model = per_zero.sum(axis=0)

    def corr(a: np.ndarray, b: np.ndarray) -> float:
        a = a - a.mean()
        b = b - b.mean()
        denom = math.sqrt(float(a @ a) * float(b @ b))
        return float(a @ b) / denom if denom else 0.0

    base_corr = corr(ys, model)
    best_phi, best_corr = 0.0, base_corr
    for phi in np.linspace(-math.pi, math.pi, 721):
        shifted = math.cos(phi) * per_zero.sum(axis=0) \
            + math.sin(phi) * per_zero_quad.sum(axis=0)
        c = corr(ys, shifted)
        if c > best_corr:
            best_corr, best_phi = c, float(phi)
    ceiling = 2.0 * sum(abs(oc.c_value) for oc in constants)
    return ComparisonReport(
        correlation=base_corr,
        amplitude_ratio=float(np.abs(ys).max()) / ceiling,
        phase_lag=best_phi,
        n_samples=len(measured),
        periods_spanned=periods,
    )
