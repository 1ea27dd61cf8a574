"""Prime-pair singular series: values at scale, Cesaro mean, error term.

The package splits into:

* ``arith`` -- sieves, the multiplicative factor g(k), the twin prime
  constant, singular-series values, Ramanujan sums;
* ``zetafuncs`` -- Euler-Maclaurin zeta/zeta' and the prime zeta function;
* ``analytic`` -- Euler products with prime-zeta tails, the closed forms
  of the generating Dirichlet series, and the main-term constants;
* ``cesaro`` -- the streaming Cesaro mean S(x), error term E(x), sampling
  grids and the oscillation report;
* ``oscillation`` -- zeta zeros, the residue amplitudes c_rho, and the
  heuristic cosine-sum model of E(x)/x^(1/4);
* ``cli`` -- the ``singseries`` command-line tool.
"""

from .arith import (SegmentRange, SingularValue, SpfTable, build_spf_table,
                    g_of, g_range, primes, ramanujan_sum,
                    ramanujan_sum_bruteforce, segment_range, segmented_g,
                    singular_series, singular_series_range,
                    singular_series_segments, singular_series_truncated,
                    singular_value, twin_prime_constant)
from .analytic import (ConstantsBundle, EvalDomain, arithmetic_factor,
                       constants_bundle, euler_product_identity_residuals,
                       g_dirichlet, g_dirichlet_stage, pole_free_factor,
                       prime_sum_identity_residual, prime_zeta,
                       singular_series_dirichlet, zeta, zeta_derivative)
from .cesaro import (ErrorSample, OscillationReport, PartialSumStream,
                     error_term, first_moment_check, geometric_grid,
                     main_term, oscillation_report, sample_geometric,
                     scan_error_samples)
from .oscillation import (ComparisonReport, OscillationConstant, ZetaZero,
                          compare, oscillation_constant, predicted_normalized,
                          refine_zero, zero_table)
from .zetafuncs import euler_gamma

__version__ = "0.1.0"

__all__ = [
    "SegmentRange", "SingularValue", "SpfTable", "build_spf_table", "g_of",
    "g_range", "primes", "ramanujan_sum", "ramanujan_sum_bruteforce",
    "segment_range", "segmented_g", "singular_series",
    "singular_series_range", "singular_series_segments",
    "singular_series_truncated", "singular_value", "twin_prime_constant",
    "ConstantsBundle", "EvalDomain", "arithmetic_factor", "constants_bundle",
    "euler_product_identity_residuals", "g_dirichlet", "g_dirichlet_stage",
    "pole_free_factor", "prime_sum_identity_residual", "prime_zeta", "zeta",
    "zeta_derivative", "ErrorSample", "OscillationReport", "PartialSumStream",
    "error_term", "first_moment_check", "geometric_grid", "main_term",
    "oscillation_report", "sample_geometric", "scan_error_samples",
    "ComparisonReport", "OscillationConstant", "ZetaZero", "compare",
    "oscillation_constant", "predicted_normalized", "refine_zero",
    "zero_table", "euler_gamma",
]
