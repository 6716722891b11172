"""Detection geometry, the eta parameter, and weak-driving closed forms for flux and g2(0).

The free field at the detector is a coherent amplitude D*eta*beta, where
D eta beta = P alpha + D beta combines the dipole-channel input (beta) with the
aggregate of all other multipole inputs (alpha, weighted by P).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dipolewave.errors import ContractViolation, DivergenceError, DomainError
from dipolewave.spectra import circular_unit_vector

UNIT_TOL = 1e-12


def dipole_projection(K: int, r_hat, eps_hat) -> complex:
    """D = u_K . eps - (u_K . R)(R . eps): dipole radiation amplitude seen through polarizer eps at R."""
    r_hat = np.asarray(r_hat, dtype=float)
    eps_hat = np.asarray(eps_hat, dtype=complex)
    if r_hat.shape != (3,) or eps_hat.shape != (3,):
        raise ContractViolation("R and eps must be 3-vectors")
    if abs(np.linalg.norm(r_hat) - 1.0) > UNIT_TOL or abs(np.linalg.norm(eps_hat) - 1.0) > UNIT_TOL:
        raise ContractViolation("R and eps must be unit vectors")
    if abs(eps_hat @ r_hat) > UNIT_TOL:
        raise ContractViolation("analyzed polarization must be transverse to the detector direction")
    u = circular_unit_vector(K)
    return complex(u @ eps_hat - (u @ r_hat) * (r_hat @ eps_hat))


@dataclass(frozen=True)
class DetectionChannel:
    """Detector direction, analyzed polarization, atomic dipole index K, and the non-dipole factor P >= 0."""

    r_hat: tuple = (1.0, 0.0, 0.0)
    eps_hat: tuple = (0.0, 0.0, 1.0)
    K: int = 0
    p_factor: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "r_hat", tuple(float(x) for x in self.r_hat))
        object.__setattr__(self, "eps_hat", tuple(complex(x) for x in self.eps_hat))
        if not (np.isfinite(self.p_factor) and self.p_factor >= 0):
            raise ContractViolation(f"P must be >= 0, got {self.p_factor!r}")
        # validates geometry and K
        dipole_projection(self.K, self.r_hat, self.eps_hat)

    @property
    def d_factor(self) -> complex:
        return dipole_projection(self.K, self.r_hat, self.eps_hat)


def eta_from_amplitudes(channel: DetectionChannel, alpha_amp: complex, beta: complex) -> complex:
    """eta = (P alpha + D beta) / (D beta)."""
    db = channel.d_factor * complex(beta)
    if db == 0:
        raise DomainError("eta undefined: detector does not see the dipole channel (D beta = 0)")
    return complex((channel.p_factor * complex(alpha_amp) + db) / db)


@dataclass(frozen=True)
class WeakFlux:
    flux: float
    ratio: float  # F / F0 with F0 = |D beta|^2, the flux without the atom


def weak_drive_flux(channel: DetectionChannel, beta: complex, eta: complex) -> WeakFlux:
    """F = |D|^2 |beta|^2 |eta - 2|^2 for weak resonant driving."""
    ratio = abs(complex(eta) - 2.0) ** 2
    return WeakFlux(abs(channel.d_factor) ** 2 * abs(beta) ** 2 * ratio, ratio)


def weak_drive_g2(eta: complex, strict: bool = True) -> float:
    """g2(0) = |eta|^2 |eta - 4|^2 / |eta - 2|^4 for weak resonant driving.

    At eta = 2 the detected flux vanishes; raises unless ``strict`` is False,
    in which case ``inf`` is returned (used by sweeps).
    """
    eta = complex(eta)
    den = abs(eta - 2.0) ** 4
    if den == 0:
        if strict:
            raise DivergenceError("g2(0) diverges at eta = 2 (detected flux vanishes)")
        return math.inf
    return abs(eta) ** 2 * abs(eta - 4.0) ** 2 / den


def resonant_flux_ratio(abs_eta: float, s: float) -> float:
    """((1 - 2/|eta|)^2 + s) / (1 + s); multiply by |D beta eta|^2 to get the resonant flux."""
    if not (abs_eta > 0):
        raise DomainError(f"|eta| must be > 0, got {abs_eta!r}")
    if not (s >= 0):
        raise DomainError(f"saturation must be >= 0, got {s!r}")
    if math.isinf(s):
        return 1.0
    return ((1.0 - 2.0 / abs_eta) ** 2 + s) / (1.0 + s)


@dataclass(frozen=True)
class CarmichaelParams:
    """Parameters of the one-dimensional scattering model matched to (eta, beta).

    The match is faithful only for real eta >= 1, since the one-dimensional
    model requires 0 <= 2 gamma_S/gamma <= 2 while eta is an arbitrary complex number.
    """

    incident_flux: float
    coupling_ratio: float  # gamma_S / gamma


def carmichael_map(eta: complex, beta: complex) -> CarmichaelParams:
    a = abs(complex(eta))
    if a == 0:
        raise DomainError("eta = 0 has no counterpart in the one-dimensional model")
    if math.isinf(a):
        return CarmichaelParams(math.inf, 0.0)
    return CarmichaelParams(a * abs(beta) ** 2, 1.0 / a)
