"""Command-line interface.

Subcommands:

* ``constants`` -- the analytic constants (C2, A, B, C, gamma, log 2pi,
  zeta(0), zeta'(0)/zeta(0), |c_1|, arg c_1, prime-sum residual);
* ``scan``      -- error-term scan: CSV of x, S(x), E(x), E(x)/x^(1/4)
  plus a JSON sidecar with the oscillation report;
* ``zeros``     -- refined zeta zeros and their residue amplitudes;
* ``compare``   -- measured normalized error vs the cosine-sum model;
* ``verify``    -- run the full acceptance gate, one verdict per check.

Exit codes: 0 success, 1 check failure (or I/O failure), 2 usage error.
All outputs are deterministic for a fixed configuration; numbers are
written with 12 significant digits.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import acceptance, analytic, arith, cesaro, oscillation
from .exceptions import PreconditionError
from .zetafuncs import LOG_TWO_PI, euler_gamma

X_MAX_CAP = cesaro.SCAN_X_CAP


@dataclass(frozen=True)
class RunConfig:
    """Validated scan configuration."""

    x_max: int = 10**7
    step_log: float = cesaro.DEFAULT_STEP_LOG
    segment_size: int = 10**6
    prime_cutoff: int = analytic.DEFAULT_PRIME_CUTOFF
    output_path: str = "error_scan.csv"
    format: str = "csv"

    def validate(self) -> None:
        if not 0 < self.step_log <= cesaro.MAX_STEP_LOG:
            raise PreconditionError(
                f"--step-log must lie in (0, {cesaro.MAX_STEP_LOG}]")
        if self.x_max > X_MAX_CAP:
            raise PreconditionError(f"--x-max capped at {X_MAX_CAP}")
        if self.x_max < cesaro.DEFAULT_X_MIN:
            raise PreconditionError(
                f"empty range: --x-max below the default x_min = "
                f"{cesaro.DEFAULT_X_MIN:g}")
        if self.segment_size < 1:
            raise PreconditionError("--segments must be positive")
        if self.format not in ("csv", "json"):
            raise PreconditionError("--format must be csv or json")


def _fmt(v: float) -> str:
    return f"{v:.11e}"


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _report_rows(samples: list[cesaro.ErrorSample]) -> str:
    lines = ["x,S,E,E_norm"]
    for s in samples:
        lines.append(",".join(
            (_fmt(s.x), _fmt(s.s_of_x), _fmt(s.e_of_x), _fmt(s.normalized))))
    return "\n".join(lines) + "\n"


def _osc_payload(rep: cesaro.OscillationReport) -> dict:
    return {
        "sign_changes": [[a, b] for a, b in rep.sign_changes],
        "n_sign_changes": len(rep.sign_changes),
        "running_max": rep.running_max,
        "running_min": rep.running_min,
        "ratios": rep.ratios,
        "median_ratio": rep.median_ratio if rep.ratios else None,
    }


def cmd_constants(args: argparse.Namespace) -> int:
    cb = analytic.constants_bundle(prime_cutoff=args.prime_cutoff)
    zero = oscillation.refine_zero(oscillation.ZERO_SEEDS[0])
    c1 = oscillation.oscillation_constant(
        zero, prime_cutoff=args.prime_cutoff).c_value
    values = {
        "C2": cb.c2,
        "A": cb.a_const,
        "B": cb.b_const,
        "C": cb.c_const,
        "C_numeric": cb.c_const_numeric,
        "euler_gamma": cb.euler_gamma,
        "log_two_pi": cb.log_two_pi,
        "zeta_0": analytic.zeta(0.0).real,
        "zeta_prime_over_zeta_0": (analytic.zeta_derivative(0.0)
                                   / analytic.zeta(0.0)).real,
        "U_logderiv_0": cb.u_logderiv_at_zero,
        "c1_abs": abs(c1),
        "c1_arg": cmath.phase(c1),
        "gamma_1": zero.gamma,
        "prime_sum_residual": analytic.prime_sum_identity_residual(),
    }
    for name, val in values.items():
        print(f"{name} = {_fmt(val)}")
    if args.out:
        if args.format == "json":
            _write_text(args.out, json.dumps(values, indent=2) + "\n")
        else:
            rows = "\n".join(f"{k},{_fmt(v)}" for k, v in values.items())
            _write_text(args.out, "name,value\n" + rows + "\n")
        print(f"wrote {args.out}")
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    cfg = RunConfig(x_max=args.x_max, step_log=args.step_log,
                    segment_size=args.segments,
                    prime_cutoff=args.prime_cutoff,
                    output_path=args.out or "error_scan.csv",
                    format=args.format)
    cfg.validate()
    samples = cesaro.scan_error_samples(cfg.x_max,
                                        step_log=cfg.step_log,
                                        segment_size=cfg.segment_size)
    rep = cesaro.oscillation_report(samples)
    if cfg.format == "json":
        payload = {
            "config": {"x_min": cesaro.DEFAULT_X_MIN, "x_max": cfg.x_max,
                       "step_log": cfg.step_log},
            "samples": [{"x": s.x, "S": s.s_of_x, "E": s.e_of_x,
                         "E_norm": s.normalized} for s in samples],
            "oscillation": _osc_payload(rep),
        }
        _write_text(cfg.output_path, json.dumps(payload, indent=2) + "\n")
        print(f"wrote {cfg.output_path} ({len(samples)} samples)")
    else:
        _write_text(cfg.output_path, _report_rows(samples))
        sidecar = str(Path(cfg.output_path).with_suffix(".osc.json"))
        _write_text(sidecar, json.dumps(_osc_payload(rep), indent=2) + "\n")
        print(f"wrote {cfg.output_path} ({len(samples)} rows) and {sidecar}")
    print(f"sign changes: {len(rep.sign_changes)}, "
          f"extrema [{rep.running_min:.4f}, {rep.running_max:.4f}]")
    return 0


def cmd_zeros(args: argparse.Namespace) -> int:
    rows = []
    for seed in oscillation.ZERO_SEEDS:
        zero = oscillation.refine_zero(seed)
        oc = oscillation.oscillation_constant(
            zero, prime_cutoff=args.prime_cutoff)
        zp = abs(analytic.zeta_derivative(complex(0.5, zero.gamma)))
        rows.append({
            "seed": seed,
            "gamma": zero.gamma,
            "residual": zero.residual,
            "zeta_prime_abs": zp,
            "c_abs": abs(oc.c_value),
            "c_arg": cmath.phase(oc.c_value),
        })
        print(f"gamma = {zero.gamma:.12f}  residual = {zero.residual:.2e}  "
              f"|zeta'| = {zp:.6f}  |c| = {abs(oc.c_value):.6f}")
    if args.out:
        if args.format == "json":
            _write_text(args.out, json.dumps(rows, indent=2) + "\n")
        else:
            head = "seed,gamma,residual,zeta_prime_abs,c_abs,c_arg"
            body = "\n".join(",".join(_fmt(r[k]) for k in head.split(","))
                             for r in rows)
            _write_text(args.out, head + "\n" + body + "\n")
        print(f"wrote {args.out}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = RunConfig(x_max=args.x_max, step_log=args.step_log,
                    segment_size=args.segments,
                    prime_cutoff=args.prime_cutoff,
                    output_path=args.out or "compare.json", format="json")
    cfg.validate()
    samples = cesaro.scan_error_samples(cfg.x_max, step_log=cfg.step_log,
                                        segment_size=cfg.segment_size)
    zeros = oscillation.zero_table()
    consts = [oscillation.oscillation_constant(z, prime_cutoff=cfg.prime_cutoff)
              for z in zeros]
    payload = {"models": []}
    for n_zeros in (1, len(consts)):
        rep = oscillation.compare(samples, consts[:n_zeros])
        entry = {
            "zeros": n_zeros,
            "correlation": rep.correlation,
            "amplitude_ratio": rep.amplitude_ratio,
            "phase_lag": rep.phase_lag,
            "n_samples": rep.n_samples,
            "periods_spanned": rep.periods_spanned,
        }
        payload["models"].append(entry)
        print(f"{n_zeros}-zero model: correlation {rep.correlation:+.4f}, "
              f"amplitude ratio {rep.amplitude_ratio:.3f}, "
              f"phase lag {rep.phase_lag:+.3f}")
    if args.out:
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")
        print(f"wrote {args.out}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = acceptance.run_all()
    failures = 0
    for r in results:
        verdict = "PASS" if r.passed else "FAIL"
        print(f"[{verdict}] {r.name}: {r.detail}")
        failures += 0 if r.passed else 1
    total = sum(r.elapsed for r in results)
    print(f"{len(results) - failures}/{len(results)} checks passed "
          f"in {total:.1f}s")
    return 1 if failures else 0


def _add_scan_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x-max", type=int, default=10**7,
                   help="upper end of the sample range (default 1e7)")
    p.add_argument("--step-log", type=float, default=cesaro.DEFAULT_STEP_LOG,
                   help="grid spacing in log x (default 0.02, max 0.05)")
    p.add_argument("--segments", type=int, default=10**6,
                   help="sieve segment size (default 1e6)")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prime-cutoff", type=int,
                   default=analytic.DEFAULT_PRIME_CUTOFF,
                   help="direct-product prime cutoff for Euler products")
    p.add_argument("--out", type=str, default=None, help="output file path")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default csv)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singseries",
        description="Prime-pair singular series, its Cesaro mean, and the "
                    "oscillation of the error term.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="analytic constants report")
    _add_common_flags(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("scan", help="error-term scan to CSV/JSON")
    _add_scan_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("zeros", help="refined zeta zeros and amplitudes")
    _add_common_flags(p)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("compare", help="measured error term vs zero model")
    _add_scan_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
