"""Brute-force stochastic oracle for the ensemble closed forms.

Field realizations are quadrature-modulated colored noise: two independent
stationary Gaussian processes with exponential autocorrelation ride the
cosine and sine of the carrier, so the field autocorrelation is

    C(tau) = C(0) * exp(-beta |tau|) * cos(omega tau),   C(0) = pi*beta*i0.

That variance normalization makes the second-order closure of the
trajectory equations reproduce the closed-form constants exactly, which is
what the ensemble comparison validates. The counter-rotating spectral lobe
at -omega is an O(beta/omega) artifact of any real stationary field;
validation regimes therefore keep omega well above beta.

Per-realization dynamics integrate, in dimensionless variables
(m = dipole / max dipole, w = inversion in units of half the splitting):

    m'' + omega^2 m = -kappa*omega * w * E(t)
    w' + beta_s (w + 1) = (kappa/omega) * m' * E(t)

with classic fixed-step fourth-order steps on the field grid; the two
couplings multiply to kappa^2, and ensemble observables depend on the
coupling only through that product.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.optimize import curve_fit

from .dynamics import InitialCondition, mean_dipole, mean_inversion
from .model import DerivedParams, SystemParams, derive_params

__all__ = [
    "FieldRealization",
    "TrajectoryState",
    "EnsembleReport",
    "LorentzianFit",
    "SpectrumEstimate",
    "TrajectoryDivergenceError",
    "SpectrumFitError",
    "field_variance",
    "max_field_dt",
    "sample_field",
    "simulate_trajectory",
    "ensemble_average",
    "estimate_spectrum",
    "write_field_csv",
]

#: state magnitude beyond which a trajectory is declared divergent
DIVERGENCE_LIMIT = 1e3


class TrajectoryDivergenceError(RuntimeError):
    """A trajectory left the admissible state region (too-coarse step or bug)."""

    def __init__(self, message: str, seed: int | None = None, time: float | None = None):
        super().__init__(message)
        self.seed = seed
        self.time = time


class SpectrumFitError(RuntimeError):
    """The Lorentzian fit of the averaged periodogram did not converge."""


@dataclass(frozen=True)
class FieldRealization:
    """One sampled realization of the classical field on a uniform grid."""

    dt: float
    values: np.ndarray
    seed: int

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.values.ndim != 1 or self.values.size < 2:
            raise ValueError("values must be a 1-D array with at least 2 samples")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field samples must be finite")
        self.values.flags.writeable = False

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.values.size)


@dataclass(frozen=True)
class TrajectoryState:
    """Time series of one integrated trajectory (dimensionless components)."""

    t: np.ndarray
    m: np.ndarray
    mdot: np.ndarray
    w: np.ndarray


@dataclass(frozen=True)
class EnsembleReport:
    """Ensemble averages with standard errors and closed-form residuals."""

    t: np.ndarray
    mean_m: np.ndarray
    mean_w: np.ndarray
    se_m: np.ndarray
    se_w: np.ndarray
    residual_m: np.ndarray
    residual_w: np.ndarray
    n_realizations: int
    dt: float
    master_seed: int
    seeds: tuple[int, ...]
    params: SystemParams
    ic: InitialCondition

    def to_dict(self) -> dict:
        return {
            "t": self.t.tolist(),
            "mean_m": self.mean_m.tolist(),
            "mean_w": self.mean_w.tolist(),
            "se_m": self.se_m.tolist(),
            "se_w": self.se_w.tolist(),
            "residual_m": self.residual_m.tolist(),
            "residual_w": self.residual_w.tolist(),
            "n_realizations": self.n_realizations,
            "dt": self.dt,
            "master_seed": self.master_seed,
            "seeds": [int(s) for s in self.seeds],
            "params": {
                "omega": self.params.omega,
                "kappa": self.params.kappa,
                "beta_s": self.params.beta_s,
                "i0": self.params.i0,
                "beta": self.params.beta,
            },
            "initial_condition": {
                "m0": self.ic.m0,
                "w0": self.ic.w0,
                "mdot0": self.ic.mdot0,
            },
        }

    def write_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")


@dataclass(frozen=True)
class LorentzianFit:
    peak_omega: float
    peak_height: float
    hwhm: float


@dataclass(frozen=True)
class SpectrumEstimate:
    """Averaged periodogram with an optional fitted Lorentzian peak."""

    omega: np.ndarray
    power: np.ndarray
    fit: LorentzianFit | None
    message: str = ""


# ---------------------------------------------------------------------------
# field generation
# ---------------------------------------------------------------------------

def field_variance(p: SystemParams) -> float:
    """Stationary field variance C(0) = pi * beta * i0."""
    return math.pi * p.beta * p.i0


def max_field_dt(p: SystemParams) -> float:
    """Largest step resolving both the noise envelope and the carrier."""
    return min(0.05 / p.beta, 0.05 * 2.0 * math.pi / p.omega)


def derive_seed(master_seed: int, index: int) -> int:
    """Deterministic per-trajectory seed from (master seed, counter)."""
    return int(np.random.SeedSequence([master_seed, index]).generate_state(1, np.uint64)[0])


def _draw_normals(seed: int, n_steps: int) -> np.ndarray:
    """Standard-normal draws for one realization, shape (2, n_steps + 1)."""
    rng = np.random.default_rng(seed)
    return rng.standard_normal((2, n_steps + 1))


def _quadrature_paths(normals: np.ndarray, rho: float, sigma_st: float) -> np.ndarray:
    """Exact-discretization AR(1) paths from unit normals.

    ``normals[..., 0]`` seeds the stationary initial value; subsequent
    columns are the innovations. Works batched over leading axes.
    """
    s_inn = sigma_st * math.sqrt(max(0.0, 1.0 - rho * rho))
    paths = np.empty_like(normals)
    paths[..., 0] = sigma_st * normals[..., 0]
    for k in range(normals.shape[-1] - 1):
        paths[..., k + 1] = rho * paths[..., k] + s_inn * normals[..., k + 1]
    return paths


def _field_from_normals(
    p: SystemParams, dt: float, normals: np.ndarray
) -> np.ndarray:
    """Field samples E(k dt) from unit normals of shape (..., 2, K+1)."""
    sigma_st = math.sqrt(field_variance(p))
    rho = math.exp(-p.beta * dt)
    paths = _quadrature_paths(normals, rho, sigma_st)
    k = np.arange(normals.shape[-1])
    t = dt * k
    return paths[..., 0, :] * np.cos(p.omega * t) + paths[..., 1, :] * np.sin(p.omega * t)


def sample_field(p: SystemParams, dt: float, n_steps: int, seed: int) -> FieldRealization:
    """Sample one field realization on a grid of n_steps + 1 points.

    Rejects steps too coarse to resolve the envelope or the carrier
    (dt must not exceed ``max_field_dt``).
    """
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    limit = max_field_dt(p)
    if dt > limit * (1.0 + 1e-12):
        raise ValueError(
            f"dt={dt} too coarse: must be <= min(0.05/beta, 0.05*2*pi/omega) = {limit:.6g}"
        )
    values = _field_from_normals(p, dt, _draw_normals(seed, n_steps))
    return FieldRealization(dt=dt, values=values, seed=seed)


def write_field_csv(field: FieldRealization, path: str | Path) -> None:
    """Dump a realization as CSV with header ``t,E`` for spectral audits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "E"])
        for t, e in zip(field.times, field.values):
            writer.writerow([f"{t:.12g}", f"{e:.12g}"])


# ---------------------------------------------------------------------------
# trajectory integration
# ---------------------------------------------------------------------------

def _rk4_paths(
    ic: InitialCondition,
    p: SystemParams,
    field: np.ndarray,
    dt: float,
    seeds: Sequence[int] | None = None,
):
    """Fixed-step RK4 of (m, mdot, w) driven by sampled fields.

    ``field`` has shape (..., K+1); leading axes are independent
    trajectories. Field values at half-steps are linear interpolants.
    Returns (m, mdot, w) arrays of the same shape as ``field``.
    """
    om, kap, bs = p.omega, p.kappa, p.beta_s
    k_fast = kap * om
    k_slow = kap / om
    om2 = om * om

    shape = field.shape
    n_steps = shape[-1] - 1
    m = np.full(shape[:-1], float(ic.m0))
    md = np.full(shape[:-1], float(ic.mdot0))
    w = np.full(shape[:-1], float(ic.w0))
    out_m = np.empty(shape)
    out_md = np.empty(shape)
    out_w = np.empty(shape)
    out_m[..., 0], out_md[..., 0], out_w[..., 0] = m, md, w

    for k in range(n_steps):
        e0 = field[..., k]
        e1 = field[..., k + 1]
        eh = 0.5 * (e0 + e1)

        def rhs(mm, pp, ww, ee):
            return pp, -om2 * mm - k_fast * ww * ee, -bs * (ww + 1.0) + k_slow * pp * ee

        a1, b1, c1 = rhs(m, md, w, e0)
        a2, b2, c2 = rhs(m + 0.5 * dt * a1, md + 0.5 * dt * b1, w + 0.5 * dt * c1, eh)
        a3, b3, c3 = rhs(m + 0.5 * dt * a2, md + 0.5 * dt * b2, w + 0.5 * dt * c2, eh)
        a4, b4, c4 = rhs(m + dt * a3, md + dt * b3, w + dt * c3, e1)
        m = m + (dt / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        md = md + (dt / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        w = w + (dt / 6.0) * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        out_m[..., k + 1], out_md[..., k + 1], out_w[..., k + 1] = m, md, w

        peak = max(np.max(np.abs(m)), np.max(np.abs(md)), np.max(np.abs(w)))
        if not (peak <= DIVERGENCE_LIMIT):
            t_bad = dt * (k + 1)
            seed = None
            if field.ndim > 1 and seeds is not None:
                flat = np.nanmax(
                    np.stack([np.abs(m), np.abs(md), np.abs(w)]), axis=0
                ).reshape(-1)
                seed = int(seeds[int(np.argmax(flat))])
            elif seeds is not None:
                seed = int(seeds[0])
            raise TrajectoryDivergenceError(
                f"trajectory diverged at t={t_bad:.6g} (|state| > {DIVERGENCE_LIMIT:g}, "
                f"seed={seed})",
                seed=seed,
                time=t_bad,
            )
    return out_m, out_md, out_w


def simulate_trajectory(
    ic: InitialCondition, p: SystemParams, field: FieldRealization
) -> TrajectoryState:
    """Integrate one realization over the full field grid.

    With a zero field the dipole reduces to free oscillation and the
    inversion to pure exponential relaxation toward the ground state;
    with kappa = 0 the dipole decouples from the field entirely.
    """
    m, md, w = _rk4_paths(ic, p, field.values, field.dt, seeds=[field.seed])
    return TrajectoryState(t=field.times, m=m, mdot=md, w=w)


def ensemble_average(
    ic: InitialCondition,
    p: SystemParams,
    n_realizations: int,
    dt: float,
    horizon: float,
    master_seed: int,
) -> EnsembleReport:
    """Average n independent trajectories and compare to the closed forms.

    Per-trajectory seeds derive deterministically from (master_seed,
    index), so the report is bit-identical across runs and independent of
    any execution interleaving; the reduction is a fixed index-ordered
    mean. Residuals are taken against the closed-form dipole and
    inversion on the same grid.
    """
    if n_realizations < 2:
        raise ValueError("n_realizations must be at least 2")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    n_steps = max(1, math.ceil(horizon / dt - 1e-12))
    limit = max_field_dt(p)
    if dt > limit * (1.0 + 1e-12):
        raise ValueError(
            f"dt={dt} too coarse: must be <= {limit:.6g} for these parameters"
        )

    seeds = tuple(derive_seed(master_seed, i) for i in range(n_realizations))
    normals = np.empty((n_realizations, 2, n_steps + 1))
    for i, seed in enumerate(seeds):
        normals[i] = _draw_normals(seed, n_steps)
    fields = _field_from_normals(p, dt, normals)
    m, _md, w = _rk4_paths(ic, p, fields, dt, seeds=seeds)

    t = dt * np.arange(n_steps + 1)
    mean_m = m.mean(axis=0)
    mean_w = w.mean(axis=0)
    se_m = m.std(axis=0, ddof=1) / math.sqrt(n_realizations)
    se_w = w.std(axis=0, ddof=1) / math.sqrt(n_realizations)
    d = derive_params(p)
    residual_m = mean_m - np.asarray(mean_dipole(ic, p, t))
    residual_w = mean_w - np.asarray(mean_inversion(ic, d, p, t))
    return EnsembleReport(
        t=t,
        mean_m=mean_m,
        mean_w=mean_w,
        se_m=se_m,
        se_w=se_w,
        residual_m=residual_m,
        residual_w=residual_w,
        n_realizations=n_realizations,
        dt=dt,
        master_seed=master_seed,
        seeds=seeds,
        params=p,
        ic=ic,
    )


# ---------------------------------------------------------------------------
# spectrum estimation
# ---------------------------------------------------------------------------

def _lorentzian(omega, height, center, hwhm):
    return height * hwhm**2 / ((omega - center) ** 2 + hwhm**2)


def estimate_spectrum(realizations: Sequence[FieldRealization]) -> SpectrumEstimate:
    """Averaged two-sided periodogram with a least-squares Lorentzian fit.

    All realizations must share the grid. The reported power density uses
    the convention P(omega) = dt |FFT|^2 / N, under which the expected
    peak height is C(0)/beta = pi * i0. Fit non-convergence raises
    ``SpectrumFitError``; an identically zero field yields a zero spectrum
    with no fit.
    """
    if len(realizations) < 2:
        raise ValueError("need at least 2 realizations")
    dt = realizations[0].dt
    n = realizations[0].values.size
    for r in realizations[1:]:
        if r.dt != dt or r.values.size != n:
            raise ValueError("realizations must share a common grid")

    power = np.zeros(n // 2 + 1)
    for r in realizations:
        spec = np.fft.rfft(r.values)
        power += (dt / n) * np.abs(spec) ** 2
    power /= len(realizations)
    omega = 2.0 * math.pi * np.fft.rfftfreq(n, d=dt)

    if np.max(power) <= 0.0:
        return SpectrumEstimate(omega=omega, power=power, fit=None,
                                message="zero spectrum; no peak to fit")

    # fit window around the positive-frequency peak (skip the DC bin)
    ipk = 1 + int(np.argmax(power[1:]))
    half = power[ipk] / 2.0
    width_bins = max(3, int(np.sum(power[1:] >= half) / 2))
    lo = max(1, ipk - 8 * width_bins)
    hi = min(omega.size, ipk + 8 * width_bins + 1)
    w_win, p_win = omega[lo:hi], power[lo:hi]
    hwhm_guess = max(width_bins * (omega[1] - omega[0]), omega[1] - omega[0])
    try:
        popt, _ = curve_fit(
            _lorentzian,
            w_win,
            p_win,
            p0=[power[ipk], omega[ipk], hwhm_guess],
            bounds=([0.0, 0.0, 0.0], [np.inf, np.inf, np.inf]),
            maxfev=10000,
        )
    except (RuntimeError, ValueError) as exc:
        raise SpectrumFitError(f"Lorentzian fit failed: {exc}") from exc
    fit = LorentzianFit(peak_omega=float(popt[1]), peak_height=float(popt[0]),
                        hwhm=float(popt[2]))
    return SpectrumEstimate(omega=omega, power=power, fit=fit)
