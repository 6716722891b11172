"""Product quadrature over spherical caps.

Polar direction: Gauss-Legendre on each of [0, min(theta, pi/2)] and
[pi/2, theta], composed with the endpoint-clustering map
alpha = a + (b - a)(3t^2 - 2t^3).  The map has zero derivative at both ends,
which turns the sqrt|cos(alpha)| branch point of aplanatic apodizations into an
analytic integrand, so the rule converges exponentially for every beam family
in this package.  Azimuthal direction: the periodic trapezoidal rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from dipolewave.errors import ContractViolation, DomainError, NumericalError

DEFAULT_N_ALPHA = 128
DEFAULT_N_BETA = 256


def _check_theta(theta: float, allow_zero: bool = False) -> float:
    theta = float(theta)
    lo_ok = theta >= 0 if allow_zero else theta > 0
    if not (np.isfinite(theta) and lo_ok and theta <= np.pi):
        raise DomainError(f"cap half-angle must lie in (0, pi], got {theta!r}")
    return theta


@lru_cache(maxsize=64)
def _clustered_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1] for the clustered Gauss-Legendre rule."""
    x, w = np.polynomial.legendre.leggauss(n)
    t = 0.5 * (x + 1.0)
    phi = t * t * (3.0 - 2.0 * t)
    dphi = 6.0 * t * (1.0 - t)
    return phi, 0.5 * w * dphi


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Immutable cap grid; polar weights already contain the sin(alpha) Jacobian."""

    theta: float
    n_alpha: int = DEFAULT_N_ALPHA
    n_beta: int = DEFAULT_N_BETA
    alpha: np.ndarray = field(init=False, repr=False)
    w_alpha: np.ndarray = field(init=False, repr=False)
    beta: np.ndarray = field(init=False, repr=False)
    w_beta: float = field(init=False, repr=False)

    def __post_init__(self):
        theta = _check_theta(self.theta)
        if self.n_alpha < 2 or self.n_beta < 1:
            raise DomainError("need n_alpha >= 2 and n_beta >= 1")
        phi, wphi = _clustered_legendre(int(self.n_alpha))
        edges = [0.0, theta] if theta <= np.pi / 2 else [0.0, np.pi / 2, theta]
        nodes, weights = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            nodes.append(a + (b - a) * phi)
            weights.append((b - a) * wphi)
        alpha = np.concatenate(nodes)
        w_alpha = np.concatenate(weights) * np.sin(alpha)
        beta = 2.0 * np.pi * np.arange(self.n_beta) / self.n_beta
        for arr in (alpha, w_alpha, beta):
            arr.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "w_alpha", w_alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "w_beta", 2.0 * np.pi / self.n_beta)

    @property
    def area(self) -> float:
        return float(self.w_beta * self.n_beta * np.sum(self.w_alpha))

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.alpha, self.beta, indexing="ij")


@lru_cache(maxsize=256)
def default_grid(theta: float, n_alpha: int = DEFAULT_N_ALPHA, n_beta: int = DEFAULT_N_BETA) -> QuadratureGrid:
    return QuadratureGrid(theta, n_alpha, n_beta)


def _resolve(theta: float, grid: QuadratureGrid | None) -> QuadratureGrid:
    if grid is None:
        return default_grid(_check_theta(theta))
    if not np.isclose(grid.theta, theta, rtol=0, atol=1e-15):
        raise ContractViolation(f"grid built for theta={grid.theta}, integrating over theta={theta}")
    return grid


def _check_finite(values: np.ndarray, alpha: np.ndarray, beta: np.ndarray | None = None) -> None:
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = np.unravel_index(np.argmax(bad), values.shape)
        a = np.broadcast_to(alpha, values.shape)[idx]
        where = f"alpha={a!r}"
        if beta is not None:
            where += f", beta={np.broadcast_to(beta, values.shape)[idx]!r}"
        raise NumericalError(f"non-finite integrand value {values[idx]!r} at node {where}")


def cap_integrate(integrand: Callable[[np.ndarray, np.ndarray], np.ndarray], theta: float,
                  grid: QuadratureGrid | None = None) -> complex:
    """Integral of ``integrand(alpha, beta)`` over the cap, dOmega = sin(alpha) dalpha dbeta.

    ``integrand`` is called once with broadcastable (n_alpha_total, n_beta) arrays.
    """
    grid = _resolve(theta, grid)
    aa, bb = grid.mesh()
    values = np.asarray(integrand(aa, bb))
    values = np.broadcast_to(values, aa.shape)
    _check_finite(values, aa, bb)
    per_alpha = values.sum(axis=1) * grid.w_beta
    return complex(np.dot(grid.w_alpha, per_alpha))


def polar_integrate(integrand: Callable[[np.ndarray], np.ndarray], theta: float,
                    grid: QuadratureGrid | None = None) -> complex:
    """2*pi times the polar integral, for integrands that do not depend on beta."""
    grid = _resolve(theta, grid)
    values = np.asarray(integrand(grid.alpha))
    values = np.broadcast_to(values, grid.alpha.shape)
    _check_finite(values, grid.alpha)
    return complex(2.0 * np.pi * np.dot(grid.w_alpha, values))
