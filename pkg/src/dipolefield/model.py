"""Physical parameters, derived constants, and nondimensionalization.

Natural units with hbar = 1 throughout: frequencies and decay rates carry
dimension 1/time, the inversion observable carries the units of the level
splitting, and the dipole observable is normalized to its maximum value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "CONFIG_KEYS",
    "ConfigError",
    "SystemParams",
    "DerivedParams",
    "BlochState",
    "DimensionlessConfig",
    "derive_params",
    "nondimensionalize",
    "read_params",
]

#: keys accepted in a flat key=value parameter file
CONFIG_KEYS = ("omega", "kappa", "beta_s", "i0", "beta")

#: tolerance on Bloch-ball membership; larger violations are hard errors
BALL_ATOL = 1e-9


class ConfigError(ValueError):
    """Malformed or incomplete parameter configuration."""


@dataclass(frozen=True)
class SystemParams:
    """Physical inputs of the model.

    Parameters
    ----------
    omega : float
        Angular transition frequency of the two-level system, rad/time.
    kappa : float
        Effective dipole coupling (twice the projected dipole moment);
        kappa * field has dimension rad/time. Enters only as kappa**2,
        so the sign is irrelevant.
    beta_s : float
        Spontaneous-emission (Einstein) rate, 1/time.
    i0 : float
        Height of the Lorentzian field spectrum at resonance.
    beta : float
        Half-width of the Lorentzian field spectrum, 1/time.
    """

    omega: float
    kappa: float
    beta_s: float
    i0: float
    beta: float

    def __post_init__(self):
        if not (self.omega > 0):
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not (self.beta > 0):
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.beta_s < 0:
            raise ValueError(f"beta_s must be nonnegative, got {self.beta_s}")
        if self.i0 < 0:
            raise ValueError(f"i0 must be nonnegative, got {self.i0}")
        for name in ("omega", "kappa", "beta_s", "i0", "beta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def coupling_weight(self) -> float:
        """pi * i0 * kappa**2, the combination entering all derived constants."""
        return math.pi * self.i0 * self.kappa**2


@dataclass(frozen=True)
class DerivedParams:
    """Constants of the closed-form ensemble inversion.

    ``a_const`` is the magnitude of the steady-state inversion offset,
    ``gamma`` the damping rate of the transient, and ``lambda_sq`` the
    squared oscillation frequency (negative in the overdamped regime).
    ``c_sine`` is the cancellation-free coefficient of the sine transient;
    it stays finite for every valid parameter set, including the limit in
    which ``b_const`` is undefined (0/0) and stored as None.
    """

    a_const: float
    b_const: float | None
    gamma: float
    lambda_sq: float
    c_sine: float
    oscillatory: bool

    @property
    def lambda_value(self) -> float:
        """Oscillation frequency sqrt(lambda_sq); 0 in the overdamped regime."""
        return math.sqrt(self.lambda_sq) if self.lambda_sq > 0 else 0.0


@dataclass(frozen=True)
class BlochState:
    """Dimensionless Bloch components (dipole m along x, inversion w along z).

    The associated density matrix is (I + w*sigma_3 + m*sigma_1)/2, so
    membership in the Bloch ball, m**2 + w**2 <= 1, is required.
    """

    m: float
    w: float

    def __post_init__(self):
        r2 = self.m * self.m + self.w * self.w
        if r2 > 1.0 + BALL_ATOL:
            raise ValueError(
                f"Bloch vector (m={self.m}, w={self.w}) outside the unit ball "
                f"by {r2 - 1.0:.3e}"
            )


@dataclass(frozen=True)
class DimensionlessConfig:
    """Rates in units of the damping rate, times in units of its inverse."""

    lambda_hat: float
    omega_hat: float
    t_max: float
    oscillatory: bool = True

    def __post_init__(self):
        for name in ("lambda_hat", "omega_hat", "t_max"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.t_max < 0:
            raise ValueError("t_max must be nonnegative")


def derive_params(p: SystemParams) -> DerivedParams:
    """Compute the closed-form constants from the physical inputs.

    The denominators involve ``2*beta_s + pi*i0*kappa**2``; when that sum
    vanishes the offset constant is exactly 0 and the ratio constant is
    undefined (returned as None). The combined sine coefficient is computed
    in a single fraction so it never suffers the 0/0 of its factors.
    """
    weight = p.coupling_weight
    den = 2.0 * p.beta_s + weight
    if p.beta_s == 0.0:
        a_const = 0.0
        c_sine = 0.0
    else:
        a_const = p.omega * p.beta_s / den
        c_sine = p.beta_s * p.omega * (p.beta - weight - p.beta_s) / (2.0 * den)
    b_const = None if den == 0.0 else p.omega * (p.beta - weight) / den
    gamma = 0.5 * (p.beta + p.beta_s)
    lambda_sq = 0.5 * p.kappa**2 * math.pi * p.beta * p.i0 - 0.25 * (p.beta - p.beta_s) ** 2
    return DerivedParams(
        a_const=a_const,
        b_const=b_const,
        gamma=gamma,
        lambda_sq=lambda_sq,
        c_sine=c_sine,
        oscillatory=lambda_sq > 0,
    )


def nondimensionalize(p: SystemParams, t_max: float) -> DimensionlessConfig:
    """Express (lambda, omega, horizon) in units of the damping rate.

    In the overdamped regime the oscillation frequency is reported as 0 and
    the flag is cleared; the damped envelope is then monotone and carries no
    backflow, so the dimensionless engine may treat it as frequency zero.
    """
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    d = derive_params(p)
    return DimensionlessConfig(
        lambda_hat=d.lambda_value / d.gamma,
        omega_hat=p.omega / d.gamma,
        t_max=d.gamma * t_max,
        oscillatory=d.oscillatory,
    )


def read_params(path: str | Path) -> SystemParams:
    """Read SystemParams from a flat key=value file.

    Blank lines and lines starting with '#' are ignored. Unknown keys,
    duplicates, non-numeric values, and missing keys raise ConfigError
    with the offending line number where applicable.
    """
    path = Path(path)
    values: dict[str, float] = {}
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = float(value.strip())
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: invalid number for {key!r}") from exc
    missing = [k for k in CONFIG_KEYS if k not in values]
    if missing:
        raise ConfigError(f"{path}: missing key(s): {', '.join(missing)}")
    try:
        return SystemParams(**values)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
