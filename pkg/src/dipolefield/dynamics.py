"""Closed-form ensemble evolution of the dipole-coupled two-level system.

The ensemble dipole oscillates undamped at the transition frequency; the
ensemble inversion relaxes through a damped (co)sine transient toward a
noise-dependent steady state. Trace distances between evolved antipodal
pure pairs come in two formula variants (see ``FormulaSource`` below).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Union

import numpy as np

from .model import BALL_ATOL, BlochState, DerivedParams, SystemParams

__all__ = [
    "FormulaSource",
    "MODES",
    "InitialCondition",
    "StatePair",
    "mean_dipole",
    "mean_inversion",
    "evolved_state",
    "purity",
    "trace_distance",
    "write_timeseries",
]

#: Formula variant selector.
#:
#: "derived"    -- self-consistent closed forms: the inversion is the exact
#:                 second-order-closure solution and the trace distance is
#:                 the damped-cosine difference with envelope exp(-gamma*t)
#:                 inside the square (i.e. exp(-2*gamma*t) on the squared
#:                 term).
#: "as-printed" -- the alternative fixed expressions, kept verbatim for
#:                 cross-checking: the inversion drops the initial-value
#:                 sine term and the squared distance carries a single
#:                 exp(-gamma*t) envelope.
FormulaSource = Literal["derived", "as-printed"]
MODES: tuple[str, ...] = ("derived", "as-printed")

ArrayLike = Union[float, np.ndarray]


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


@dataclass(frozen=True)
class InitialCondition:
    """Initial Bloch data: dipole m0, inversion w0, and the dipole rate.

    ``mdot0`` only matters to the stochastic integrator; the ensemble
    closed forms assume a stationary initial dipole (mdot0 = 0).
    """

    m0: float
    w0: float
    mdot0: float = 0.0

    def __post_init__(self):
        r2 = self.m0 * self.m0 + self.w0 * self.w0
        if r2 > 1.0 + BALL_ATOL:
            raise ValueError(
                f"initial condition (m0={self.m0}, w0={self.w0}) outside the "
                f"Bloch ball by {r2 - 1.0:.3e}"
            )


@dataclass(frozen=True)
class StatePair:
    """Antipodal pure pair parameterized by the mixing angle theta.

    The initial Bloch vectors are (sin(theta), +/-...): member one is
    (m, w) = (sin theta, cos theta) and member two its antipode, so the
    squared initial differences are (dw)^2 = 4 cos^2(theta) and
    (dm)^2 = 4 sin^2(theta) and the initial trace distance is 1.
    """

    theta: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi / 2):
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")


# ---------------------------------------------------------------------------
# damped envelopes with hyperbolic continuation
# ---------------------------------------------------------------------------

def _damped_cos(gamma: float, lambda_sq: float, t: ArrayLike) -> ArrayLike:
    """exp(-gamma t) * cos(lambda t), continued to cosh for lambda_sq <= 0.

    The overdamped branch is evaluated as a sum of two decaying
    exponentials (gamma >= sqrt(-lambda_sq) always holds for parameters
    coming from ``derive_params``), which cannot overflow.
    """
    t = np.asarray(t, dtype=float)
    if lambda_sq > 0:
        out = np.exp(-gamma * t) * np.cos(math.sqrt(lambda_sq) * t)
    else:
        nu = math.sqrt(-lambda_sq)
        out = 0.5 * (np.exp(-(gamma - nu) * t) + np.exp(-(gamma + nu) * t))
    return out if out.ndim else float(out)


def _damped_sinc(gamma: float, lambda_sq: float, t: ArrayLike) -> ArrayLike:
    """exp(-gamma t) * sin(lambda t)/lambda, continued through lambda -> 0."""
    t = np.asarray(t, dtype=float)
    if lambda_sq > 1e-300:
        lam = math.sqrt(lambda_sq)
        out = np.exp(-gamma * t) * np.sin(lam * t) / lam
    elif lambda_sq < -1e-300:
        nu = math.sqrt(-lambda_sq)
        out = (np.exp(-(gamma - nu) * t) - np.exp(-(gamma + nu) * t)) / (2.0 * nu)
    else:
        out = t * np.exp(-gamma * t)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# ensemble observables
# ---------------------------------------------------------------------------

def mean_dipole(ic: InitialCondition, p: SystemParams, t: ArrayLike) -> ArrayLike:
    """Ensemble dipole m0*cos(omega t).

    Depends only on the initial dipole and the level splitting; the noise
    and the emission rate never enter. The initial dipole rate is taken as
    zero, matching the ensemble closed form.
    """
    t = np.asarray(t, dtype=float)
    out = ic.m0 * np.cos(p.omega * t)
    return out if out.ndim else float(out)


def mean_inversion(
    ic: InitialCondition,
    d: DerivedParams,
    p: SystemParams,
    t: ArrayLike,
    mode: FormulaSource = "derived",
) -> ArrayLike:
    """Ensemble inversion (dimensionless, in [-1, 1] for valid inputs).

    In "derived" mode this is the exact solution of the second-order
    closure: with W0 = omega*w0/2,

        W(t) = a*(-1 + Ec(t)) + W0*Ec(t) + (c_sine + (beta-beta_s)/2 * W0)*Es(t)

    where Ec, Es are the damped cosine and sine envelopes. The
    "as-printed" variant omits the W0-proportional sine contribution; the
    two coincide when beta == beta_s or w0 == 0. Both continue smoothly
    through the overdamped regime.
    """
    _check_mode(mode)
    w_big0 = 0.5 * p.omega * ic.w0
    ec = _damped_cos(d.gamma, d.lambda_sq, t)
    es = _damped_sinc(d.gamma, d.lambda_sq, t)
    sine_coeff = d.c_sine
    if mode == "derived":
        sine_coeff = d.c_sine + 0.5 * (p.beta - p.beta_s) * w_big0
    w_big = d.a_const * (ec - 1.0) + w_big0 * ec + sine_coeff * es
    out = 2.0 * np.asarray(w_big) / p.omega
    return out if out.ndim else float(out)


def evolved_state(
    ic: InitialCondition,
    d: DerivedParams,
    p: SystemParams,
    t: float,
    mode: FormulaSource = "derived",
) -> BlochState:
    """Evolved Bloch state at time t.

    Raises ValueError if the resulting point leaves the Bloch ball by more
    than 1e-9. Note the model damps the inversion while leaving the dipole
    amplitude untouched, so initial states carrying coherence (m0 != 0)
    with beta_s > 0 genuinely exit the ball at late times; the error is
    then a property of the model, not of the caller.
    """
    m = mean_dipole(ic, p, float(t))
    w = mean_inversion(ic, d, p, float(t), mode=mode)
    return BlochState(m=m, w=w)


def purity(s: BlochState) -> float:
    """Tr[rho^2] = (1 + m^2 + w^2)/2; 1/2 for maximally mixed, 1 for pure."""
    return 0.5 * (1.0 + s.m * s.m + s.w * s.w)


def trace_distance(
    pair: StatePair,
    d: DerivedParams,
    p: SystemParams,
    t: ArrayLike,
    mode: FormulaSource = "derived",
) -> ArrayLike:
    """Trace distance between the evolved members of an antipodal pure pair.

    derived:    sqrt(cos^2(theta) e^{-2 gamma t} cos^2(lambda t)
                     + sin^2(theta) cos^2(omega t))
    as-printed: sqrt(cos^2(theta) e^{-gamma t} cos^2(lambda t)
                     + sin^2(theta) cos^2(omega t))

    Both variants start at 1, never exceed 1, and continue hyperbolically
    for lambda_sq <= 0. Only the initial-value differences survive the
    subtraction, so the steady-state offset and sine coefficient drop out.
    """
    _check_mode(mode)
    u = math.cos(pair.theta) ** 2
    t = np.asarray(t, dtype=float)
    if mode == "derived":
        damped = _damped_cos(d.gamma, d.lambda_sq, t)
    else:
        # single e^{-gamma t} on the squared cosine == squared half-rate envelope
        damped = _damped_cos(0.5 * d.gamma, d.lambda_sq, t)
    out = np.sqrt(u * np.square(damped) + (1.0 - u) * np.square(np.cos(p.omega * t)))
    return out if out.ndim else float(out)


def write_timeseries(
    path: str | Path,
    ic: InitialCondition,
    d: DerivedParams,
    p: SystemParams,
    times: np.ndarray,
    mode: FormulaSource = "derived",
) -> None:
    """Emit the closed-form evolution as CSV with header ``t,m,w,purity``.

    Values are written as raw model output without ball validation, so the
    file is usable even in the coherence-plus-relaxation regime where the
    model's purity transiently exceeds 1.
    """
    _check_mode(mode)
    times = np.asarray(times, dtype=float)
    m = np.asarray(mean_dipole(ic, p, times))
    w = np.asarray(mean_inversion(ic, d, p, times, mode=mode))
    pur = 0.5 * (1.0 + m * m + w * w)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "m", "w", "purity"])
        for row in zip(times, m, w, pur):
            writer.writerow([f"{v:.12g}" for v in row])
