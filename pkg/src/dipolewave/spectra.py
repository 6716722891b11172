"""Angular spectra (reciprocal-space amplitudes) of dipole waves and focused beams.

Directions on the unit sphere are labelled by a polar angle ``alpha`` measured
from the optical axis and an azimuth ``beta``.  A ray leaving the lens pupil at
azimuth ``beta`` travels towards the focus, so the propagation direction is

    kappa(alpha, beta) = (-sin(alpha) cos(beta), -sin(alpha) sin(beta), cos(alpha)).

With this labelling the longitudinal polarization vector
(cos a cos b, cos a sin b, sin a) is exactly transverse to ``kappa`` and the
M = 0 dipole spectrum is sqrt(3/8pi) sin(alpha) times that vector.

Spectra are closed-form evaluators; sampling only happens inside quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from dipolewave.errors import ContractViolation, DomainError
from dipolewave.quadrature import QuadratureGrid, _check_theta, cap_integrate, polar_integrate

DIPOLE_NORM = np.sqrt(3.0 / (8.0 * np.pi))

FieldFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
ProfileFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Direction:
    alpha: float
    beta: float

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (np.isfinite(a) and 0.0 <= a <= np.pi):
            raise DomainError(f"alpha must lie in [0, pi], got {a!r}")
        if not (np.isfinite(b) and 0.0 <= b < 2 * np.pi):
            raise DomainError(f"beta must lie in [0, 2pi), got {b!r}")

    @property
    def unit_vector(self) -> np.ndarray:
        return propagation_vector(self.alpha, self.beta)

    @classmethod
    def from_vector(cls, k) -> "Direction":
        """Inverse of ``unit_vector`` (beta is set to 0 on the axis)."""
        k = np.asarray(k, dtype=float)
        k = k / np.linalg.norm(k)
        alpha = float(np.arccos(np.clip(k[2], -1.0, 1.0)))
        beta = float(np.arctan2(-k[1], -k[0])) % (2 * np.pi) if np.hypot(k[0], k[1]) > 0 else 0.0
        return cls(alpha, beta)


def propagation_vector(alpha, beta) -> np.ndarray:
    """kappa(alpha, beta), shape (..., 3)."""
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
    s = np.sin(alpha)
    return np.stack([-s * np.cos(beta), -s * np.sin(beta), np.cos(alpha)], axis=-1)


def circular_unit_vector(M: int) -> np.ndarray:
    """u_0 = z, u_{+-1} = (-+x - i y)/sqrt(2)."""
    if M == 0:
        return np.array([0.0, 0.0, 1.0], dtype=complex)
    if M in (1, -1):
        return np.array([-M, -1j, 0.0], dtype=complex) / np.sqrt(2.0)
    raise DomainError(f"dipole index M must be -1, 0 or +1, got {M!r}")


def dipole_orientation(target) -> np.ndarray:
    """Unit (possibly complex) dipole vector for an index M or a linear axis 'x'/'y'/'z'."""
    if isinstance(target, str):
        axes = {"x": 0, "y": 1, "z": 2}
        if target not in axes:
            raise DomainError(f"unknown dipole axis {target!r}")
        u = np.zeros(3, dtype=complex)
        u[axes[target]] = 1.0
        return u
    if isinstance(target, (int, np.integer)) and not isinstance(target, bool):
        return circular_unit_vector(int(target))
    u = np.asarray(target, dtype=complex)
    if u.shape != (3,) or not np.isclose(np.vdot(u, u).real, 1.0, atol=1e-12):
        raise DomainError("dipole orientation must be a unit 3-vector")
    return u


def longitudinal_pol_vector(d: Direction | float, beta: float | None = None) -> np.ndarray:
    """(cos a cos b, cos a sin b, sin a); accepts a Direction or arrays (alpha, beta)."""
    if isinstance(d, Direction):
        alpha, beta = d.alpha, d.beta
    else:
        alpha = d
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
    ca = np.cos(alpha)
    return np.stack([ca * np.cos(beta), ca * np.sin(beta), np.sin(alpha)], axis=-1)


def _dipole_field(u: np.ndarray) -> FieldFn:
    # -k x (k x u) equals u - (u.k)k but keeps full relative accuracy near the poles
    def field_fn(alpha, beta):
        k = propagation_vector(alpha, beta).astype(complex)
        return -DIPOLE_NORM * np.cross(k, np.cross(k, u))

    return field_fn


@dataclass(frozen=True, eq=False)
class AngularSpectrum:
    """Transverse vector amplitude on a cap of half-angle ``theta_cap``.

    ``evaluator`` is the unnormalized amplitude; calling the spectrum returns
    ``evaluator / sqrt(norm_const)`` and zero outside the cap.  ``profile`` is set
    for the longitudinal family A(alpha) p(alpha, beta), which admits a 1-D
    polar treatment.
    """

    theta_cap: float
    family: str
    evaluator: FieldFn = field(repr=False)
    params: dict = field(default_factory=dict)
    norm_const: float | None = None
    profile: ProfileFn | None = field(default=None, repr=False)

    @property
    def normalized(self) -> bool:
        return self.norm_const is not None

    def __call__(self, alpha, beta) -> np.ndarray:
        if not self.normalized:
            raise ContractViolation(f"{self.family} spectrum has not been normalized")
        alpha, beta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(beta, float))
        inside = alpha <= self.theta_cap
        values = np.asarray(self.evaluator(np.where(inside, alpha, 0.0), beta), dtype=complex)
        values = values / np.sqrt(self.norm_const)
        return np.where(inside[..., None], values, 0.0)

    def value(self, d: Direction) -> np.ndarray:
        return self(d.alpha, d.beta)

    def energy(self, grid: QuadratureGrid | None = None) -> float:
        """Cap integral of |evaluator|^2 (unnormalized)."""
        if self.profile is not None:
            prof = self.profile
            return polar_integrate(lambda a: np.abs(prof(a)) ** 2, self.theta_cap, grid).real
        fn = self.evaluator
        return cap_integrate(lambda a, b: np.sum(np.abs(fn(a, b)) ** 2, axis=-1), self.theta_cap, grid).real

    def normalize(self, grid: QuadratureGrid | None = None) -> "AngularSpectrum":
        norm = self.energy(grid)
        if not norm > 0:
            raise DomainError(f"{self.family} spectrum carries no energy on the cap")
        return AngularSpectrum(self.theta_cap, self.family, self.evaluator, dict(self.params), norm, self.profile)


def custom_spectrum(field_fn: FieldFn, theta: float, family: str = "tabulated", params: dict | None = None,
                    grid: QuadratureGrid | None = None) -> AngularSpectrum:
    """Wrap an arbitrary vectorized field ``field_fn(alpha, beta) -> (..., 3)`` and normalize it."""
    theta = _check_theta(theta)
    return AngularSpectrum(theta, family, field_fn, params or {}).normalize(grid)


def longitudinal_spectrum(profile: ProfileFn, theta: float, family: str = "longitudinal",
                          params: dict | None = None, grid: QuadratureGrid | None = None) -> AngularSpectrum:
    """A(alpha) p(alpha, beta) on the cap, normalized by 2 pi int sin(a) |A|^2 da."""
    theta = _check_theta(theta)

    def field_fn(alpha, beta):
        return np.asarray(profile(alpha))[..., None] * longitudinal_pol_vector(alpha, beta)

    return AngularSpectrum(theta, family, field_fn, params or {}, profile=profile).normalize(grid)


def tabulated_spectrum(alpha_samples, amplitude_samples, theta: float,
                       grid: QuadratureGrid | None = None) -> AngularSpectrum:
    """Longitudinal spectrum whose profile A(alpha) is a cubic spline through samples."""
    from scipy.interpolate import CubicSpline

    spline = CubicSpline(np.asarray(alpha_samples, float), np.asarray(amplitude_samples, float))
    return longitudinal_spectrum(spline, theta, family="tabulated",
                                 params={"n_samples": len(alpha_samples)}, grid=grid)


def dipole_spectrum(M: int) -> AngularSpectrum:
    """Full-sphere spectrum sqrt(3/8pi) [u_M - (u_M . kappa) kappa]; unit norm exactly."""
    u = circular_unit_vector(M)
    return AngularSpectrum(np.pi, "dipole", _dipole_field(u), {"M": M}, norm_const=1.0)


def dipole_target(target) -> AngularSpectrum:
    """Full-sphere dipole spectrum for an index M or a linear axis such as 'x'."""
    u = dipole_orientation(target)
    return AngularSpectrum(np.pi, "dipole", _dipole_field(u), {"target": target}, norm_const=1.0)


def quabis_profile(a: float) -> ProfileFn:
    a2 = float(a) ** 2

    def profile(alpha):
        s = np.sin(alpha)
        return s * np.sqrt(np.abs(np.cos(alpha))) * np.exp(-a2 * s * s)

    return profile


def quabis_spectrum(a: float, theta: float, grid: QuadratureGrid | None = None) -> AngularSpectrum:
    """Radially polarized Gaussian input through an aplanatic lens, a = f / w0."""
    if not (np.isfinite(a) and a >= 0):
        raise DomainError(f"a = f/w0 must be >= 0, got {a!r}")
    theta = _check_theta(theta)
    return longitudinal_spectrum(quabis_profile(a), theta, "quabis", {"a": float(a)}, grid)


def sine_spectrum(theta: float, grid: QuadratureGrid | None = None) -> AngularSpectrum:
    """Uniformly illuminated aplanatic lens, x-polarized input."""
    theta = _check_theta(theta)
    if theta > np.pi / 2:
        raise DomainError("Sine wave is only defined for theta <= pi/2 (aplanatic lens, light from one side)")

    def field_fn(alpha, beta):
        ca, sa = np.cos(alpha), np.sin(alpha)
        cb, sb = np.cos(beta), np.sin(beta)
        pol = np.stack([ca * cb * cb + sb * sb, (ca - 1.0) * cb * sb, sa * cb], axis=-1)
        return np.sqrt(np.abs(ca))[..., None] * pol

    return custom_spectrum(field_fn, theta, "sine", {}, grid)


def truncated_dipole_spectrum(pol: Literal["longitudinal", "transverse"], theta: float,
                              grid: QuadratureGrid | None = None) -> AngularSpectrum:
    """Dipole wave (z-oriented, or x-oriented for ``transverse``) cut to the cap and renormalized."""
    theta = _check_theta(theta)
    if pol == "longitudinal":
        profile = lambda alpha: DIPOLE_NORM * np.sin(alpha)
        return longitudinal_spectrum(profile, theta, "truncated-dipole", {"pol": pol}, grid)
    if pol == "transverse":
        return custom_spectrum(_dipole_field(dipole_orientation("x")), theta, "truncated-dipole", {"pol": pol}, grid)
    raise DomainError(f"polarization must be 'longitudinal' or 'transverse', got {pol!r}")
