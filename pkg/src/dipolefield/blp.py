"""Backflow-of-information engine (BLP non-Markovianity measure).

Everything here is dimensionless: rates are measured in units of the
inversion damping rate and times as tau = gamma * t. The distinguishability
of an antipodal pure pair evolves as

    D(tau) = sqrt(cos^2(theta) * env(tau)^2 * cos^2(lambda_hat * tau)
                  + sin^2(theta) * cos^2(omega_hat * tau)),

with env = exp(-tau) in "derived" mode and exp(-tau/2) in "as-printed"
mode. Whenever D increases, distinguishability flows back; the measure
integrates the positive part of dD/dtau and maximizes over theta. The
maximum splits into two physical branches:

* omega branch  -- coherence pair: D = |cos(omega_hat tau)|, undamped;
* lambda branch -- inversion pair: D = env(tau) * |cos(lambda_hat tau)|.

The "as-printed" expressions keep the original theta labels, which attach
theta = 0 to the coherence integrand; branch identity is therefore tracked
by ``BranchKind`` (physical pair), never by theta.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Sequence, Union

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .dynamics import FormulaSource, _check_mode
from .model import DimensionlessConfig, SystemParams, nondimensionalize

__all__ = [
    "BranchKind",
    "BackflowResult",
    "QuadratureError",
    "KinkWarning",
    "sigma_rate",
    "branch_integrand_omega",
    "branch_integrand_lambda",
    "backflow_integral",
    "analytic_n_omega",
    "n_measure",
    "n_measure_physical",
    "literal_pointwise_max",
    "dominant_regime",
    "SweepPoint",
    "sweep_grid",
    "write_sweep_csv",
    "write_sweep_json",
]

#: absolute tolerance of each per-interval quadrature
QUAD_ABS_TOL = 1e-8
#: ties between branch integrals within this margin resolve to the omega branch
TIE_TOL = 1e-10
#: distances below this are treated as exact zeros (kinks) of D
_KINK_TOL = 1e-12

ArrayLike = Union[float, np.ndarray]


class BranchKind(str, Enum):
    """Physical branch of the backflow: coherence (omega) or inversion (lambda)."""

    OMEGA = "omega"
    LAMBDA = "lambda"


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class KinkWarning(UserWarning):
    """The trace distance has a kink (exact zero) at the requested time."""


@dataclass(frozen=True)
class BackflowResult:
    """Backflow integral with its positivity intervals.

    ``n_omega_branch``/``n_lambda_branch`` carry the two endpoint-branch
    surfaces when produced by ``n_measure``; single-target calls leave
    them None. ``winning_branch`` is None for an interior-theta target.
    """

    n_value: float
    winning_branch: BranchKind | None
    theta_star: float
    intervals: tuple[tuple[float, float], ...]
    n_omega_branch: float | None = None
    n_lambda_branch: float | None = None


def _envelope_decay(mode: str) -> float:
    return 1.0 if mode == "derived" else 0.5


# ---------------------------------------------------------------------------
# rate of change of the trace distance
# ---------------------------------------------------------------------------

def sigma_rate(
    theta: float,
    cfg: DimensionlessConfig,
    tau: float,
    mode: FormulaSource = "derived",
    side: str = "+",
) -> float:
    """dD/dtau of the pair distance at mixing angle theta (units of gamma).

    At isolated zeros of D, which occur only along the endpoint branches,
    the two-sided derivative does not exist; the one-sided limit chosen by
    ``side`` ("+" right, "-" left) is returned and a ``KinkWarning`` is
    issued. In "as-printed" mode the rate expression is evaluated verbatim
    (including its swapped theta labels), and its kink limits can be
    infinite because numerator and denominator vanish at different points.
    """
    _check_mode(mode)
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    lam, om = cfg.lambda_hat, cfg.omega_hat
    u = math.cos(theta) ** 2
    cl = math.cos(lam * tau)
    co = math.cos(om * tau)
    if mode == "derived":
        e2 = math.exp(-2.0 * tau)
        d2 = u * e2 * cl * cl + (1.0 - u) * co * co
        if d2 > _KINK_TOL**2:
            dist = math.sqrt(d2)
            da = -e2 * (2.0 * cl * cl + lam * math.sin(2.0 * lam * tau))
            db = -om * math.sin(2.0 * om * tau)
            return (u * da + (1.0 - u) * db) / (2.0 * dist)
        warnings.warn(
            f"trace distance vanishes at tau={tau}; returning {side} one-sided rate",
            KinkWarning,
            stacklevel=2,
        )
        slope = math.sqrt(
            u * e2 * lam**2 * math.sin(lam * tau) ** 2
            + (1.0 - u) * om**2 * math.sin(om * tau) ** 2
        )
        return slope if side == "+" else -slope
    # as-printed: sigma = -bracket / (2 S), evaluated verbatim with gamma = 1
    s2 = math.exp(tau) * u * co * co + (1.0 - u) * cl * cl
    bracket = math.exp(0.5 * tau) * u * om * math.sin(2.0 * om * tau) + math.exp(
        -0.5 * tau
    ) * u * (math.sin(lam * tau) ** 2 + lam * math.sin(2.0 * lam * tau))
    if s2 > _KINK_TOL**2:
        return -bracket / (2.0 * math.sqrt(s2))
    warnings.warn(
        f"rate denominator vanishes at tau={tau}; returning {side} one-sided limit",
        KinkWarning,
        stacklevel=2,
    )
    if bracket == 0.0:
        return 0.0
    return math.copysign(math.inf, -bracket)


# ---------------------------------------------------------------------------
# branch integrands (positive parts of the endpoint-branch rates)
# ---------------------------------------------------------------------------

def branch_integrand_omega(tau: ArrayLike, omega_hat: float) -> ArrayLike:
    """Positive part of d|cos(omega_hat tau)|/dtau.

    Equals (omega_hat/4)(|sin 2x| - sin 2x)/|cos x| with x = omega_hat*tau
    away from the zeros of the cosine; at those zeros the jump is resolved
    one-sidedly to the rising-onset value omega_hat*|sin x|.
    """
    tau = np.asarray(tau, dtype=float)
    x = omega_hat * tau
    s, c = np.sin(x), np.cos(x)
    rising = s * c < 0.0
    out = np.where(rising | (c == 0.0), omega_hat * np.abs(s), 0.0)
    return out if out.ndim else float(out)


def branch_integrand_lambda(
    tau: ArrayLike, lambda_hat: float, mode: FormulaSource = "derived"
) -> ArrayLike:
    """Positive part of the inversion-branch distance rate.

    The distance envelope is exp(-c tau)*|cos(lambda_hat tau)| with c = 1
    in "derived" mode and c = 1/2 in "as-printed" mode (whose published
    quotient form, with the corrected |cos(lambda tau)| denominator, this
    reproduces). The value at an envelope zero is the right-sided onset
    exp(-c tau)*lambda_hat*|sin|. Identically zero when lambda_hat == 0:
    a monotone envelope carries no backflow.
    """
    _check_mode(mode)
    c_decay = _envelope_decay(mode)
    tau = np.asarray(tau, dtype=float)
    x = lambda_hat * tau
    s, c = np.sin(x), np.cos(x)
    body = np.maximum(0.0, -lambda_hat * s * np.sign(c) - c_decay * np.abs(c))
    body = np.where(c == 0.0, lambda_hat * np.abs(s), body)
    out = np.exp(-c_decay * tau) * body
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# positivity-interval location
# ---------------------------------------------------------------------------

def _omega_rise_intervals(omega_hat: float, t_max: float) -> list[tuple[float, float]]:
    """Rising stretches of |cos(omega_hat tau)|: ((2k+1)h, (2k+2)h), h = pi/(2 om)."""
    if omega_hat <= 0.0 or t_max <= 0.0:
        return []
    h = math.pi / (2.0 * omega_hat)
    out = []
    k = 0
    while (2 * k + 1) * h < t_max:
        out.append(((2 * k + 1) * h, min((2 * k + 2) * h, t_max)))
        k += 1
    return out


def _lambda_rise_intervals(
    lambda_hat: float, t_max: float, c_decay: float
) -> list[tuple[float, float]]:
    """Rising stretches of exp(-c tau)|cos(lambda tau)|.

    Each starts exactly at a zero of the cosine; the end is the root of
    lam*cos(lam (tau-z)) - c*sin(lam (tau-z)) on the following quarter
    period, refined by Brent root-finding.
    """
    if lambda_hat <= 0.0 or t_max <= 0.0:
        return []
    quarter = math.pi / (2.0 * lambda_hat)
    out = []
    k = 0
    while True:
        z = (2 * k + 1) * quarter
        if z >= t_max:
            break

        def crit(tau: float, z0: float = z) -> float:
            phase = lambda_hat * (tau - z0)
            return lambda_hat * math.cos(phase) - c_decay * math.sin(phase)

        end = brentq(crit, z, z + quarter, xtol=1e-13, rtol=8.9e-16)
        out.append((z, min(end, t_max)))
        k += 1
    return out


def _breakpoints(lam: float, om: float, t_max: float) -> list[float]:
    """Quarter-period grid of both frequencies, bounding every sign change."""
    pts = {0.0, t_max}
    for f in (lam, om):
        if f > 0.0:
            step = math.pi / (2.0 * f)
            k = 1
            while k * step < t_max:
                pts.add(k * step)
                k += 1
    return sorted(pts)


def _sign_intervals(
    h: Callable[[float], float], lam: float, om: float, t_max: float, samples: int = 9
) -> list[tuple[float, float]]:
    """Intervals of [0, t_max] where the smooth sign function h is positive."""
    grid = _breakpoints(lam, om, t_max)
    roots: list[float] = []
    for lo, hi in zip(grid[:-1], grid[1:]):
        xs = np.linspace(lo, hi, samples)
        hs = [h(x) for x in xs]
        for x0, x1, h0, h1 in zip(xs[:-1], xs[1:], hs[:-1], hs[1:]):
            if h0 == 0.0:
                roots.append(float(x0))
            elif h0 * h1 < 0.0:
                roots.append(float(brentq(h, x0, x1, xtol=1e-13, rtol=8.9e-16)))
    pts = sorted({0.0, t_max, *roots})
    out = []
    for a, b in zip(pts[:-1], pts[1:]):
        if b - a > 1e-14 and h(0.5 * (a + b)) > 0.0:
            out.append((a, b))
    return out


def _interior_intervals(
    u: float, lam: float, om: float, t_max: float, mode: str
) -> list[tuple[float, float]]:
    """Positivity intervals of the interior-theta rate (smooth, no kinks)."""
    if mode == "derived":

        def h(tau: float) -> float:
            cl = math.cos(lam * tau)
            da = -math.exp(-2.0 * tau) * (2.0 * cl * cl + lam * math.sin(2.0 * lam * tau))
            db = -om * math.sin(2.0 * om * tau)
            return u * da + (1.0 - u) * db

    else:
        if u <= 0.0:
            return []  # the verbatim rate vanishes identically at theta = pi/2

        def h(tau: float) -> float:
            return -(
                math.exp(0.5 * tau) * om * math.sin(2.0 * om * tau)
                + math.exp(-0.5 * tau)
                * (math.sin(lam * tau) ** 2 + lam * math.sin(2.0 * lam * tau))
            )

    return _sign_intervals(h, lam, om, t_max)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _quad_interval(f: Callable[[float], float], a: float, b: float) -> float:
    value, _abserr, info, *rest = quad(
        f, a, b, epsabs=QUAD_ABS_TOL, epsrel=1e-10, limit=200, full_output=1
    )
    if rest:
        raise QuadratureError(
            f"quadrature on [{a:.6g}, {b:.6g}] did not converge: {rest[-1]}"
        )
    return value


def _integrate_intervals(
    f: Callable[[float], float], intervals: Sequence[tuple[float, float]]
) -> float:
    total = 0.0
    for a, b in intervals:
        total += _quad_interval(f, a, b)
    return max(total, 0.0)


def _branch_result(
    branch: BranchKind, cfg: DimensionlessConfig, t_max: float, mode: str
) -> BackflowResult:
    lam, om = cfg.lambda_hat, cfg.omega_hat
    if branch is BranchKind.OMEGA:
        intervals = _omega_rise_intervals(om, t_max)

        def f(tau: float) -> float:
            return om * abs(math.sin(om * tau))

        theta_star = math.pi / 2 if mode == "derived" else 0.0
    else:
        c_decay = _envelope_decay(mode)
        intervals = _lambda_rise_intervals(lam, t_max, c_decay)

        def f(tau: float) -> float:
            return math.exp(-c_decay * tau) * (
                lam * abs(math.sin(lam * tau)) - c_decay * abs(math.cos(lam * tau))
            )

        theta_star = 0.0 if mode == "derived" else math.pi / 2
    value = _integrate_intervals(f, intervals)
    return BackflowResult(
        n_value=value,
        winning_branch=branch,
        theta_star=theta_star,
        intervals=tuple(intervals),
    )


def _interior_result(
    theta: float, cfg: DimensionlessConfig, t_max: float, mode: str
) -> BackflowResult:
    lam, om = cfg.lambda_hat, cfg.omega_hat
    u = math.cos(theta) ** 2
    intervals = _interior_intervals(u, lam, om, t_max, mode)
    if mode == "derived":

        def f(tau: float) -> float:
            cl = math.cos(lam * tau)
            co = math.cos(om * tau)
            e2 = math.exp(-2.0 * tau)
            dist = math.sqrt(u * e2 * cl * cl + (1.0 - u) * co * co)
            da = -e2 * (2.0 * cl * cl + lam * math.sin(2.0 * lam * tau))
            db = -om * math.sin(2.0 * om * tau)
            return (u * da + (1.0 - u) * db) / (2.0 * dist)

    else:

        def f(tau: float) -> float:
            cl = math.cos(lam * tau)
            co = math.cos(om * tau)
            s = math.sqrt(math.exp(tau) * u * co * co + (1.0 - u) * cl * cl)
            bracket = math.exp(0.5 * tau) * u * om * math.sin(2.0 * om * tau) + math.exp(
                -0.5 * tau
            ) * u * (math.sin(lam * tau) ** 2 + lam * math.sin(2.0 * lam * tau))
            return -bracket / (2.0 * s)

    value = _integrate_intervals(f, intervals)
    return BackflowResult(
        n_value=value, winning_branch=None, theta_star=theta, intervals=tuple(intervals)
    )


def backflow_integral(
    target: Union[BranchKind, float],
    cfg: DimensionlessConfig,
    t_max: float,
    mode: FormulaSource = "derived",
) -> BackflowResult:
    """Integral of the positive part of the distance rate over [0, t_max].

    ``target`` selects a physical branch (``BranchKind``) or a mixing angle
    theta in [0, pi/2]. Positivity intervals are bracketed on the
    quarter-period grid of both cosines, refined by root-finding, and each
    interval is integrated adaptively to 1e-8 absolute tolerance.

    Endpoint angles are routed to the branch integrands: in "derived" mode
    theta = 0 is the inversion (lambda) pair and theta = pi/2 the coherence
    (omega) pair; "as-printed" mode keeps the original swapped labels
    (theta = 0 -> omega integrand, theta = pi/2 -> lambda integrand).
    """
    _check_mode(mode)
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    if isinstance(target, BranchKind):
        return _branch_result(target, cfg, t_max, mode)
    theta = float(target)
    if not (0.0 <= theta <= math.pi / 2):
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    eps = 1e-12
    if theta < eps:
        branch = BranchKind.LAMBDA if mode == "derived" else BranchKind.OMEGA
        res = _branch_result(branch, cfg, t_max, mode)
        return BackflowResult(res.n_value, res.winning_branch, 0.0, res.intervals)
    if theta > math.pi / 2 - eps:
        branch = BranchKind.OMEGA if mode == "derived" else BranchKind.LAMBDA
        res = _branch_result(branch, cfg, t_max, mode)
        return BackflowResult(res.n_value, res.winning_branch, math.pi / 2, res.intervals)
    return _interior_result(theta, cfg, t_max, mode)


# ---------------------------------------------------------------------------
# analytic coherence-branch measure
# ---------------------------------------------------------------------------

def analytic_n_omega(omega_hat: float, t_max: float) -> float:
    """Closed form of the coherence-branch backflow.

    Counts the completed half-periods of |cos| plus the current partial
    rise: floor(x/pi) + |cos x| if x mod pi > pi/2 else floor(x/pi), with
    x = omega_hat * t_max. This equals
    floor(x/pi) + (|cos x| - |sin x| cot x)/2 away from the removable
    singularities, with exact limits taken at multiples of pi/2.
    """
    x = omega_hat * t_max
    if x <= 0.0:
        return 0.0
    k = math.floor(x / math.pi)
    r = x - k * math.pi
    if r > math.pi / 2:
        return k + abs(math.cos(x))
    return float(k)


# ---------------------------------------------------------------------------
# full measure, pointwise-max variant, regime classification
# ---------------------------------------------------------------------------

def n_measure(
    cfg: DimensionlessConfig,
    t_max: float,
    mode: FormulaSource = "derived",
    theta_grid_size: int = 65,
) -> BackflowResult:
    """Backflow measure maximized over the pair angle theta.

    theta runs over a uniform grid of [0, pi/2] including both endpoints
    (which reduce to the two branch integrands). The result carries the
    grid maximum, the maximizing angle, both endpoint-branch values, and
    the positivity intervals of the winner. ``winning_branch`` compares the
    two branch surfaces, resolving ties within 1e-10 to the omega branch.
    """
    _check_mode(mode)
    if theta_grid_size < 2:
        raise ValueError("theta_grid_size must be at least 2")
    res_omega = _branch_result(BranchKind.OMEGA, cfg, t_max, mode)
    res_lambda = _branch_result(BranchKind.LAMBDA, cfg, t_max, mode)
    endpoint = {
        0.0: res_lambda if mode == "derived" else res_omega,
        math.pi / 2: res_omega if mode == "derived" else res_lambda,
    }
    thetas = np.linspace(0.0, math.pi / 2, theta_grid_size)
    best: BackflowResult | None = None
    best_theta = 0.0
    for theta in thetas:
        if theta == 0.0 or theta == thetas[-1]:
            res = endpoint[0.0 if theta == 0.0 else math.pi / 2]
        else:
            res = _interior_result(float(theta), cfg, t_max, mode)
        if best is None or res.n_value > best.n_value:
            best = res
            best_theta = float(theta)
    assert best is not None
    if res_lambda.n_value > res_omega.n_value + TIE_TOL:
        winner = BranchKind.LAMBDA
    else:
        winner = BranchKind.OMEGA
    return BackflowResult(
        n_value=best.n_value,
        winning_branch=winner,
        theta_star=best_theta,
        intervals=best.intervals,
        n_omega_branch=res_omega.n_value,
        n_lambda_branch=res_lambda.n_value,
    )


def n_measure_physical(
    p: SystemParams,
    t_max: float,
    mode: FormulaSource = "derived",
    theta_grid_size: int = 65,
) -> BackflowResult:
    """``n_measure`` for dimensionful inputs: rescale, then run dimensionless."""
    cfg = nondimensionalize(p, t_max)
    return n_measure(cfg, cfg.t_max, mode=mode, theta_grid_size=theta_grid_size)


def literal_pointwise_max(
    cfg: DimensionlessConfig, t_max: float, mode: FormulaSource = "derived"
) -> float:
    """Integral of the pointwise maximum of the two branch integrands.

    This is the literal reading of the single-integral form of the
    measure; the max-of-integrals semantics of ``n_measure`` is the one
    matching the two-surface figures. Both are exposed so they can be
    compared; this one is always >= max of the branch integrals.
    """
    _check_mode(mode)
    lam, om = cfg.lambda_hat, cfg.omega_hat
    c_decay = _envelope_decay(mode)

    def f(tau: float) -> float:
        x = om * tau
        s, c = math.sin(x), math.cos(x)
        g_om = om * abs(s) if s * c < 0.0 else 0.0
        xl = lam * tau
        sl, cl = math.sin(xl), math.cos(xl)
        sgn = (cl > 0.0) - (cl < 0.0)
        g_lam = math.exp(-c_decay * tau) * max(
            0.0, -lam * sl * sgn - c_decay * abs(cl)
        )
        return max(g_om, g_lam)

    total = 0.0
    grid = _breakpoints(lam, om, t_max)
    for a, b in zip(grid[:-1], grid[1:]):
        total += _quad_interval(f, a, b)
    return max(total, 0.0)


def dominant_regime(
    lambda_hat: float,
    omega_hat: float,
    t_max: float,
    mode: FormulaSource = "derived",
) -> BranchKind:
    """Which branch dominates the backflow over [0, t_max].

    Returns the lambda branch iff its integral strictly exceeds the omega
    branch by more than 1e-10; ties resolve to the omega branch.
    """
    cfg = DimensionlessConfig(lambda_hat=lambda_hat, omega_hat=omega_hat, t_max=t_max)
    n_om = _branch_result(BranchKind.OMEGA, cfg, t_max, mode).n_value
    n_lam = _branch_result(BranchKind.LAMBDA, cfg, t_max, mode).n_value
    return BranchKind.LAMBDA if n_lam > n_om + TIE_TOL else BranchKind.OMEGA


# ---------------------------------------------------------------------------
# parameter sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepPoint:
    """One grid point of a (lambda_hat, omega_hat, t_max) sweep."""

    lambda_hat: float
    omega_hat: float
    t_max: float
    n_omega_branch: float
    n_lambda_branch: float
    n_max: float
    winning_branch: str
    intervals_omega: tuple[tuple[float, float], ...] = ()
    intervals_lambda: tuple[tuple[float, float], ...] = ()


def sweep_grid(
    lambdas: Sequence[float],
    omegas: Sequence[float],
    ts: Sequence[float],
    mode: FormulaSource = "derived",
) -> list[SweepPoint]:
    """Evaluate both branch integrals on the full grid, lambda outermost.

    A quadrature failure at a grid point is recorded in-row (NaN values,
    winning_branch = "quadrature_failure") and the sweep continues.
    """
    _check_mode(mode)
    rows: list[SweepPoint] = []
    for lam in lambdas:
        for om in omegas:
            for t_max in ts:
                cfg = DimensionlessConfig(
                    lambda_hat=float(lam), omega_hat=float(om), t_max=float(t_max)
                )
                try:
                    r_om = _branch_result(BranchKind.OMEGA, cfg, float(t_max), mode)
                    r_lam = _branch_result(BranchKind.LAMBDA, cfg, float(t_max), mode)
                except QuadratureError:
                    rows.append(
                        SweepPoint(
                            float(lam), float(om), float(t_max),
                            math.nan, math.nan, math.nan, "quadrature_failure",
                        )
                    )
                    continue
                n_max = max(r_om.n_value, r_lam.n_value)
                winner = (
                    BranchKind.LAMBDA
                    if r_lam.n_value > r_om.n_value + TIE_TOL
                    else BranchKind.OMEGA
                )
                rows.append(
                    SweepPoint(
                        float(lam), float(om), float(t_max),
                        r_om.n_value, r_lam.n_value, n_max, winner.value,
                        r_om.intervals, r_lam.intervals,
                    )
                )
    return rows


def write_sweep_csv(rows: Sequence[SweepPoint], path: str | Path) -> None:
    """CSV with header lambda,omega,T,n_omega_branch,n_lambda_branch,n_max,winning_branch."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["lambda", "omega", "T", "n_omega_branch", "n_lambda_branch", "n_max",
             "winning_branch"]
        )
        for r in rows:
            writer.writerow(
                [f"{r.lambda_hat:.12g}", f"{r.omega_hat:.12g}", f"{r.t_max:.12g}",
                 f"{r.n_omega_branch:.12g}", f"{r.n_lambda_branch:.12g}",
                 f"{r.n_max:.12g}", r.winning_branch]
            )


def write_sweep_json(rows: Sequence[SweepPoint], path: str | Path) -> None:
    """JSON variant of the sweep: same fields plus the positivity intervals."""
    payload = [
        {
            "lambda": r.lambda_hat,
            "omega": r.omega_hat,
            "T": r.t_max,
            "n_omega_branch": r.n_omega_branch,
            "n_lambda_branch": r.n_lambda_branch,
            "n_max": r.n_max,
            "winning_branch": r.winning_branch,
            "intervals_omega": [list(iv) for iv in r.intervals_omega],
            "intervals_lambda": [list(iv) for iv in r.intervals_lambda],
        }
        for r in rows
    ]
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
