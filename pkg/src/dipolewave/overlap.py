"""Overlaps of beam spectra with dipole waves and the maximal achievable overlaps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dipolewave.errors import ContractViolation, DivergenceError, DomainError
from dipolewave.quadrature import QuadratureGrid, _check_theta, cap_integrate, default_grid, polar_integrate
from dipolewave.spectra import DIPOLE_NORM, AngularSpectrum, dipole_target


@dataclass(frozen=True)
class OverlapResult:
    overlap: complex
    content: float

    @classmethod
    def from_overlap(cls, overlap: complex) -> "OverlapResult":
        return cls(complex(overlap), float(abs(overlap) ** 2))


def dipole_overlap(spectrum: AngularSpectrum, M=0, grid: QuadratureGrid | None = None,
                   method: str = "auto") -> OverlapResult:
    """O_d = int_cap chi . conj(Phi_M) dOmega.

    ``M`` is a dipole index (-1, 0, 1) or a linear axis ('x', 'y').  For the
    longitudinal family against M = 0 the integrand does not depend on beta and
    ``method='auto'`` uses the 1-D polar rule; ``method='2d'`` forces the full
    product rule.
    """
    if not spectrum.normalized:
        raise ContractViolation("dipole_overlap needs a normalized spectrum")
    if method not in ("auto", "1d", "2d"):
        raise DomainError(f"unknown method {method!r}")
    theta = spectrum.theta_cap
    if grid is None:
        grid = default_grid(theta)
    axial = spectrum.profile is not None and isinstance(M, (int, np.integer)) and M == 0
    if method == "1d" and not axial:
        raise DomainError("the 1-D rule applies only to longitudinal spectra against M = 0")

    if axial and method != "2d":
        prof, norm = spectrum.profile, np.sqrt(spectrum.norm_const)
        overlap = polar_integrate(lambda a: prof(a) * DIPOLE_NORM * np.sin(a) / norm, theta, grid)
    else:
        target = dipole_target(M)
        overlap = cap_integrate(lambda a, b: np.sum(spectrum(a, b) * np.conj(target(a, b)), axis=-1),
                                theta, grid)
    return OverlapResult.from_overlap(overlap)


def max_overlap_longitudinal(theta: float) -> float:
    """1/2 + cos^3/4 - 3 cos/4, evaluated as (1 - c)^2 (2 + c) / 4 to keep small-theta accuracy."""
    theta = _check_theta(theta, allow_zero=True)
    one_minus_c = 2.0 * np.sin(theta / 2) ** 2
    return float(one_minus_c ** 2 * (3.0 - one_minus_c) / 4.0)


def max_overlap_transverse(theta: float) -> float:
    """(3/8)(1 - cos) + (1/8)(1 - cos^3), the cap energy of an x-oriented dipole wave."""
    theta = _check_theta(theta, allow_zero=True)
    one_minus_c = 2.0 * np.sin(theta / 2) ** 2
    c = np.cos(theta)
    return float(one_minus_c * (4.0 + c + c * c) / 8.0)


@dataclass(frozen=True, eq=False)
class OptimalProfile:
    """Cauchy-Schwarz optimal longitudinal profile sampled on the polar nodes.

    ``amplitude`` has unit cap energy: 2 pi sum(w_alpha * amplitude**2) = 1.
    """

    theta: float
    alpha: np.ndarray
    amplitude: np.ndarray
    content: float


def longitudinal_content(profile, theta: float, grid: QuadratureGrid | None = None) -> float:
    """Dipole content of A(alpha) p(alpha, beta) without building a spectrum object."""
    overlap = polar_integrate(lambda a: DIPOLE_NORM * np.sin(a) * profile(a), theta, grid)
    energy = polar_integrate(lambda a: np.abs(profile(a)) ** 2, theta, grid).real
    if not energy > 0:
        raise DomainError("profile carries no energy on the cap")
    return float(abs(overlap) ** 2 / energy)


def optimal_profile(theta: float, grid: QuadratureGrid | None = None) -> OptimalProfile:
    """A*(alpha) proportional to sin(alpha), the maximizer of the overlap at fixed aperture."""
    theta = _check_theta(theta)
    grid = grid or default_grid(theta)
    energy = polar_integrate(lambda a: np.sin(a) ** 2, theta, grid).real
    amplitude = np.sin(grid.alpha) / np.sqrt(energy)
    content = longitudinal_content(np.sin, theta, grid)
    return OptimalProfile(theta, grid.alpha, amplitude, content)


def eta_gap_from_overlap(content: float, P_over_D: float) -> float:
    """|eta - 1| = (P/D) sqrt((1 - p)/p).  Only the magnitude is fixed by the overlap."""
    if not (np.isfinite(content) and 0.0 <= content <= 1.0):
        raise DomainError(f"dipole content must lie in [0, 1], got {content!r}")
    if not (np.isfinite(P_over_D) and P_over_D >= 0):
        raise DomainError(f"P/D must be >= 0, got {P_over_D!r}")
    if content == 0:
        raise DivergenceError("no dipole content: eta is unbounded")
    return float(P_over_D * np.sqrt((1.0 - content) / content))
