"""Batch command-line front end.

Subcommands: derive, evolve, distance, nonmark, sweep, mc-verify, spectrum.
Exit codes: 0 success, 2 usage/config error, 3 numerical divergence or
quadrature failure, 4 acceptance-band violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import blp, dynamics, stochastic
from .model import ConfigError, SystemParams, derive_params, nondimensionalize, read_params

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_ACCEPTANCE = 4

#: weak-coupling guard for mc-verify: closure accuracy and counter-rotating
#: lobe are both under control when these hold
GUARD_MAX_WEIGHT_RATIO = 0.25   # pi*i0*kappa^2 <= 0.25 * beta
GUARD_MIN_OMEGA_RATIO = 5.0     # omega >= 5 * beta


@dataclass(frozen=True)
class SweepSpec:
    """Axis ranges and output destination of a dimensionless sweep."""

    lambda_range: tuple[float, float, int]
    omega_range: tuple[float, float, int]
    t_range: tuple[float, float, int]
    mode: str
    out: Path
    fmt: str

    def axis(self, which: str) -> np.ndarray:
        lo, hi, n = getattr(self, f"{which}_range")
        return np.linspace(lo, hi, n)


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:N, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: {exc}") from exc
    if n < 1 or not (lo <= hi) or not (math.isfinite(lo) and math.isfinite(hi)):
        raise argparse.ArgumentTypeError(f"bad range {text!r}: need finite MIN<=MAX, N>=1")
    return lo, hi, n


def _add_common(sub: argparse.ArgumentParser, config: bool = True) -> None:
    if config:
        sub.add_argument("--config", required=True, help="key=value parameter file")
    sub.add_argument("--mode", choices=dynamics.MODES, default="derived")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dipolefield",
        description="Ensemble dynamics and information backflow of a dipole-coupled "
        "two-level system in a fluctuating classical field.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="print the derived closed-form constants")
    _add_common(p)

    p = sub.add_parser("evolve", help="emit the closed-form evolution as CSV")
    _add_common(p)
    p.add_argument("--m0", type=float, default=0.0)
    p.add_argument("--w0", type=float, default=1.0)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--out", required=True)

    p = sub.add_parser("distance", help="trace distance of an antipodal pair vs time")
    _add_common(p)
    p.add_argument("--theta", type=float, default=0.0, help="pair mixing angle in [0, pi/2]")
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--out", required=True)

    p = sub.add_parser("nonmark", help="backflow measure maximized over pair angles")
    _add_common(p)
    p.add_argument("--tmax", type=float, required=True, help="physical horizon")
    p.add_argument("--theta-grid", type=int, default=65)
    p.add_argument("--literal-eq-nt", action="store_true",
                   help="also report the pointwise-max single-integral variant")
    p.add_argument("--out", help="write the result as JSON")
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("sweep", help="branch integrals over a dimensionless grid")
    p.add_argument("--mode", choices=dynamics.MODES, default="derived")
    p.add_argument("--lambda", dest="lam", type=_parse_range, required=True,
                   metavar="MIN:MAX:N")
    p.add_argument("--omega", type=_parse_range, required=True, metavar="MIN:MAX:N")
    p.add_argument("--tmax", type=_parse_range, required=True, metavar="MIN:MAX:N")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("mc-verify", help="Monte Carlo check of the closed forms")
    _add_common(p)
    p.add_argument("--n", type=int, default=10000, help="number of trajectories")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m0", type=float, default=0.0)
    p.add_argument("--w0", type=float, default=1.0)
    p.add_argument("--dt", type=float, help="integration step (default: finest allowed)")
    p.add_argument("--horizon", type=float, help="default: 5 / gamma")
    p.add_argument("--out", default="mc_report.json")
    p.add_argument("--force", action="store_true",
                   help="run outside the weak-coupling guard")

    p = sub.add_parser("spectrum", help="periodogram and Lorentzian fit of the field")
    _add_common(p)
    p.add_argument("--n", type=int, default=200, help="number of realizations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--duration", type=float, help="record length (default: 200/beta)")
    p.add_argument("--out", help="write the averaged spectrum as CSV omega,power")
    p.add_argument("--dump-field", help="write realization 0 as CSV t,E")
    return ap


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_derive(args) -> int:
    p = read_params(args.config)
    d = derive_params(p)
    print(f"gamma = {d.gamma:.12g}")
    print(f"lambda_sq = {d.lambda_sq:.12g}")
    if d.oscillatory:
        print(f"lambda = {d.lambda_value:.12g}")
    print(f"oscillatory = {'true' if d.oscillatory else 'false'}")
    print(f"A = {d.a_const:.12g}")
    print(f"B = {'undefined' if d.b_const is None else format(d.b_const, '.12g')}")
    print(f"c_sine = {d.c_sine:.12g}")
    return EXIT_OK


def _cmd_evolve(args) -> int:
    p = read_params(args.config)
    d = derive_params(p)
    ic = dynamics.InitialCondition(m0=args.m0, w0=args.w0)
    times = np.linspace(0.0, args.tmax, args.steps + 1)
    dynamics.write_timeseries(args.out, ic, d, p, times, mode=args.mode)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_distance(args) -> int:
    p = read_params(args.config)
    d = derive_params(p)
    pair = dynamics.StatePair(theta=args.theta)
    times = np.linspace(0.0, args.tmax, args.steps + 1)
    dist = np.asarray(dynamics.trace_distance(pair, d, p, times, mode=args.mode))
    with open(args.out, "w") as fh:
        fh.write("t,distance\n")
        for t, v in zip(times, dist):
            fh.write(f"{t:.12g},{v:.12g}\n")
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_nonmark(args) -> int:
    p = read_params(args.config)
    cfg = nondimensionalize(p, args.tmax)
    result = blp.n_measure(cfg, cfg.t_max, mode=args.mode,
                           theta_grid_size=args.theta_grid)
    payload = {
        "lambda_hat": cfg.lambda_hat,
        "omega_hat": cfg.omega_hat,
        "T": cfg.t_max,
        "mode": args.mode,
        "n_value": result.n_value,
        "theta_star": result.theta_star,
        "winning_branch": result.winning_branch.value,
        "n_omega_branch": result.n_omega_branch,
        "n_lambda_branch": result.n_lambda_branch,
        "intervals": [list(iv) for iv in result.intervals],
    }
    if args.literal_eq_nt:
        payload["literal_pointwise_max"] = blp.literal_pointwise_max(
            cfg, cfg.t_max, mode=args.mode
        )
    for key in ("lambda_hat", "omega_hat", "T", "n_value", "theta_star"):
        print(f"{key} = {payload[key]:.12g}")
    print(f"winning_branch = {payload['winning_branch']}")
    print(f"n_omega_branch = {payload['n_omega_branch']:.12g}")
    print(f"n_lambda_branch = {payload['n_lambda_branch']:.12g}")
    if args.literal_eq_nt:
        print(f"literal_pointwise_max = {payload['literal_pointwise_max']:.12g}")
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    spec = SweepSpec(
        lambda_range=args.lam,
        omega_range=args.omega,
        t_range=args.tmax,
        mode=args.mode,
        out=Path(args.out),
        fmt=args.format,
    )
    rows = blp.sweep_grid(spec.axis("lambda"), spec.axis("omega"), spec.axis("t"),
                          mode=spec.mode)
    if spec.fmt == "csv":
        blp.write_sweep_csv(rows, spec.out)
    else:
        blp.write_sweep_json(rows, spec.out)
    failures = sum(1 for r in rows if r.winning_branch == "quadrature_failure")
    print(f"wrote {spec.out} ({len(rows)} rows, {failures} quadrature failures)")
    return EXIT_OK


def _weak_coupling(p: SystemParams) -> bool:
    return (
        p.coupling_weight <= GUARD_MAX_WEIGHT_RATIO * p.beta
        and p.omega >= GUARD_MIN_OMEGA_RATIO * p.beta
    )


def _cmd_mc_verify(args) -> int:
    p = read_params(args.config)
    if not _weak_coupling(p) and not args.force:
        print(
            "refusing to run outside the weak-coupling regime "
            f"(need pi*i0*kappa^2 <= {GUARD_MAX_WEIGHT_RATIO}*beta and "
            f"omega >= {GUARD_MIN_OMEGA_RATIO}*beta); use --force to override",
            file=sys.stderr,
        )
        return EXIT_USAGE
    d = derive_params(p)
    dt = args.dt if args.dt is not None else stochastic.max_field_dt(p)
    horizon = args.horizon if args.horizon is not None else 5.0 / d.gamma
    ic = dynamics.InitialCondition(m0=args.m0, w0=args.w0)
    try:
        report = stochastic.ensemble_average(ic, p, args.n, dt, horizon, args.seed)
    except stochastic.TrajectoryDivergenceError as exc:
        print(f"divergent trajectory: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    report.write_json(args.out)

    def band(se: np.ndarray, closed: np.ndarray) -> np.ndarray:
        span = float(np.max(closed) - np.min(closed))
        return np.maximum(3.0 * se, np.maximum(0.05 * span, 1e-9))

    closed_w = report.mean_w - report.residual_w
    closed_m = report.mean_m - report.residual_m
    ok_w = np.all(np.abs(report.residual_w) <= band(report.se_w, closed_w))
    ok_m = np.all(np.abs(report.residual_m) <= band(report.se_m, closed_m))
    print(f"wrote {args.out}")
    print(f"max |residual w| = {np.max(np.abs(report.residual_w)):.6g}")
    print(f"max |residual m| = {np.max(np.abs(report.residual_m)):.6g}")
    if ok_w and ok_m:
        print("acceptance bands: PASS")
        return EXIT_OK
    print("acceptance bands: FAIL", file=sys.stderr)
    return EXIT_ACCEPTANCE


def _cmd_spectrum(args) -> int:
    p = read_params(args.config)
    duration = args.duration if args.duration is not None else 200.0 / p.beta
    dt = stochastic.max_field_dt(p)
    n_steps = max(2, int(round(duration / dt)))
    fields = [
        stochastic.sample_field(p, dt, n_steps, stochastic.derive_seed(args.seed, i))
        for i in range(args.n)
    ]
    if args.dump_field:
        stochastic.write_field_csv(fields[0], args.dump_field)
        print(f"wrote {args.dump_field}")
    try:
        est = stochastic.estimate_spectrum(fields)
    except stochastic.SpectrumFitError as exc:
        print(f"spectrum fit failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("omega,power\n")
            for w_val, p_val in zip(est.omega, est.power):
                fh.write(f"{w_val:.12g},{p_val:.12g}\n")
        print(f"wrote {args.out}")
    if est.fit is None:
        print(f"no fit: {est.message}")
    else:
        print(f"peak_omega = {est.fit.peak_omega:.6g} (target {p.omega:.6g})")
        print(f"hwhm = {est.fit.hwhm:.6g} (target {p.beta:.6g})")
        print(f"peak_height = {est.fit.peak_height:.6g} "
              f"(implied i0 = {est.fit.peak_height / math.pi:.6g})")
    return EXIT_OK


_COMMANDS = {
    "derive": _cmd_derive,
    "evolve": _cmd_evolve,
    "distance": _cmd_distance,
    "nonmark": _cmd_nonmark,
    "sweep": _cmd_sweep,
    "mc-verify": _cmd_mc_verify,
    "spectrum": _cmd_spectrum,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except blp.QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
