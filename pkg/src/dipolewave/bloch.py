"""Optical Bloch equations of a coherently driven two-level atom (frame rotating at the laser frequency).

    d<s->/dt = (i Delta - Gamma/2) <s->  + sqrt(Gamma) beta <sz>
    d<sz>/dt = -Gamma (1 + <sz>) - 2 sqrt(Gamma) (beta <s+> + beta* <s->)

``beta`` is the coherent amplitude of the dipole-wave input, normalized so that
|beta|^2 is a photon flux.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dipolewave.errors import DomainError, NumericalError

BLOCH_BALL_TOL = 1e-9
DEFAULT_DT = 0.01  # in units of 1/Gamma
MAX_DT = 0.05


@dataclass(frozen=True)
class AtomParams:
    gamma: float = 1.0
    detuning: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.gamma) and self.gamma > 0):
            raise DomainError(f"gamma must be > 0, got {self.gamma!r}")
        if not np.isfinite(self.detuning):
            raise DomainError("detuning must be finite")

    @property
    def delta(self) -> float:
        """Dimensionless detuning 2 Delta / Gamma."""
        return 2.0 * self.detuning / self.gamma

    @classmethod
    def from_delta(cls, delta: float, gamma: float = 1.0) -> "AtomParams":
        return cls(gamma, 0.5 * delta * gamma)


@dataclass(frozen=True)
class DriveAmplitude:
    beta: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "beta", complex(self.beta))
        if not np.isfinite(self.beta):
            raise DomainError("drive amplitude must be finite")

    def saturation(self, gamma: float) -> float:
        """s = 8 |beta|^2 / Gamma."""
        return 8.0 * abs(self.beta) ** 2 / gamma

    @classmethod
    def from_saturation(cls, s: float, gamma: float = 1.0, phase: float = 0.0) -> "DriveAmplitude":
        if not (np.isfinite(s) and s >= 0):
            raise DomainError(f"saturation must be >= 0, got {s!r}")
        return cls(math.sqrt(s * gamma / 8.0) * np.exp(1j * phase))


@dataclass(frozen=True)
class BlochState:
    sm: complex
    sz: float

    @property
    def population(self) -> float:
        """Excited-state population <s+ s-> = (1 + <sz>)/2."""
        return 0.5 * (1.0 + self.sz)

    @property
    def ball_radius2(self) -> float:
        return 4.0 * abs(self.sm) ** 2 + self.sz ** 2

    @classmethod
    def ground(cls) -> "BlochState":
        return cls(0j, -1.0)

    @classmethod
    def excited(cls) -> "BlochState":
        return cls(0j, 1.0)


def bloch_rhs(sm: complex, sz: float, params: AtomParams, drive: DriveAmplitude) -> tuple[complex, float]:
    g, b = params.gamma, drive.beta
    rg = math.sqrt(g)
    dsm = (1j * params.detuning - 0.5 * g) * sm + rg * b * sz
    dsz = -g * (1.0 + sz) - 4.0 * rg * (b.conjugate() * sm).real
    return dsm, dsz


def steady_state(params: AtomParams, drive: DriveAmplitude) -> BlochState:
    d = params.delta
    s = drive.saturation(params.gamma)
    denom = 1.0 + d * d + s
    sm = -2.0 * drive.beta * (1.0 + 1j * d) / (denom * math.sqrt(params.gamma))
    return BlochState(complex(sm), -(1.0 + d * d) / denom)


@dataclass(frozen=True, eq=False)
class Trajectory:
    t: np.ndarray
    sm: np.ndarray
    sz: np.ndarray

    @property
    def final(self) -> BlochState:
        return BlochState(complex(self.sm[-1]), float(self.sz[-1]))


def evolve(state0: BlochState | None, params: AtomParams, drive: DriveAmplitude, T: float,
           dt: float | None = None) -> Trajectory:
    """Fixed-step RK4 integration over [0, T]; ``dt`` defaults to 0.01/Gamma.

    The step is shrunk slightly so that an integer number of steps lands on T.
    """
    g = params.gamma
    dt = DEFAULT_DT / g if dt is None else float(dt)
    if not (dt > 0 and dt <= MAX_DT / g * (1 + 1e-12)):
        raise DomainError(f"dt must lie in (0, {MAX_DT}/Gamma], got {dt!r}")
    if not (T >= 0):
        raise DomainError("horizon T must be >= 0")
    state0 = state0 or BlochState.ground()
    n = max(1, math.ceil(T / dt - 1e-9)) if T > 0 else 0
    h = T / n if n else 0.0

    t = np.linspace(0.0, T, n + 1)
    sm = np.empty(n + 1, dtype=complex)
    sz = np.empty(n + 1)
    y_sm, y_sz = complex(state0.sm), float(state0.sz)
    sm[0], sz[0] = y_sm, y_sz
    for i in range(1, n + 1):
        k1 = bloch_rhs(y_sm, y_sz, params, drive)
        k2 = bloch_rhs(y_sm + 0.5 * h * k1[0], y_sz + 0.5 * h * k1[1], params, drive)
        k3 = bloch_rhs(y_sm + 0.5 * h * k2[0], y_sz + 0.5 * h * k2[1], params, drive)
        k4 = bloch_rhs(y_sm + h * k3[0], y_sz + h * k3[1], params, drive)
        y_sm += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y_sz += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        r2 = 4.0 * abs(y_sm) ** 2 + y_sz ** 2
        if not np.isfinite(r2) or r2 > 1.0 + 1e-6:
            raise NumericalError(f"Bloch vector left the unit ball (|r|^2 = {r2}) at t = {t[i]}")
        sm[i], sz[i] = y_sm, y_sz
    return Trajectory(t, sm, sz)


def flux_balance_residual(state: BlochState, params: AtomParams, drive: DriveAmplitude) -> float:
    """sqrt(Gamma) 2 Re(beta* <s->) + Gamma <s+ s->; vanishes in the steady state."""
    g = params.gamma
    return float(2.0 * math.sqrt(g) * (drive.beta.conjugate() * state.sm).real + g * state.population)
