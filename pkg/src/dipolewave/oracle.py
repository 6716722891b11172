"""Exact two-level master-equation solution and quantum-regression correlations.

Basis {|g>, |e>}; s- = |g><e|.  Row-major vectorization, vec(A X B) = (A kron B^T) vec(X).
The detected field operator, with all free-field inputs replaced by their
coherent amplitudes (they stand to the right of atomic operators in normally
ordered products), is c = f + D sqrt(Gamma) s- with f = D eta beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from dipolewave.bloch import AtomParams, BlochState, DriveAmplitude
from dipolewave.errors import DomainError, NumericalError, UndefinedCorrelationError
from dipolewave.stats import DetectionChannel, weak_drive_g2

SM = np.array([[0, 1], [0, 0]], dtype=complex)
SP = SM.conj().T
SZ = np.diag([-1.0, 1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)
VEC_ID = I2.reshape(-1)

FLUX_FLOOR = 1e-8  # F/F0 below this: correlation reported as undefined


@dataclass(frozen=True, eq=False)
class DensityMatrix2:
    entries: np.ndarray

    def check(self, tol: float = 1e-12, pos_tol: float = 1e-10) -> None:
        r = self.entries
        if not np.all(np.isfinite(r)):
            raise NumericalError("density matrix has non-finite entries")
        if np.max(np.abs(r - r.conj().T)) > tol:
            raise NumericalError("density matrix is not Hermitian")
        if abs(np.trace(r) - 1.0) > tol:
            raise NumericalError("density matrix trace differs from 1")
        if np.min(np.linalg.eigvalsh(0.5 * (r + r.conj().T))) < -pos_tol:
            raise NumericalError("density matrix has a negative eigenvalue")

    def expect(self, op: np.ndarray) -> complex:
        return complex(np.trace(op @ self.entries))

    def to_bloch(self) -> BlochState:
        return BlochState(self.expect(SM), self.expect(SZ).real)

    @classmethod
    def from_bloch(cls, state: BlochState) -> "DensityMatrix2":
        pe = state.population
        rho = np.array([[1 - pe, np.conj(state.sm)], [state.sm, pe]], dtype=complex)
        return cls(rho)


@dataclass(frozen=True, eq=False)
class LiouvillianMap:
    matrix: np.ndarray
    params: AtomParams
    drive: DriveAmplitude

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return (self.matrix @ np.asarray(rho, complex).reshape(-1)).reshape(2, 2)

    def propagate(self, rho: np.ndarray, tau: float) -> np.ndarray:
        out = expm(self.matrix * tau) @ np.asarray(rho, complex).reshape(-1)
        if not np.all(np.isfinite(out)):
            raise NumericalError(f"propagation over tau={tau!r} produced non-finite values")
        return out.reshape(2, 2)


def _superop(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix of X -> A X B."""
    return np.kron(A, B.T)


def build_liouvillian(params: AtomParams, drive: DriveAmplitude) -> LiouvillianMap:
    """H = -Delta s+s- + i sqrt(Gamma) (beta* s- - beta s+), collapse sqrt(Gamma) s-."""
    g = params.gamma
    b = drive.beta
    H = -params.detuning * (SP @ SM) + 1j * math.sqrt(g) * (np.conj(b) * SM - b * SP)
    n = SP @ SM
    L = -1j * (_superop(H, I2) - _superop(I2, H))
    L += g * (_superop(SM, SP) - 0.5 * _superop(n, I2) - 0.5 * _superop(I2, n))
    return LiouvillianMap(L, params, drive)


def steady_density(L: LiouvillianMap) -> DensityMatrix2:
    _, sv, vh = np.linalg.svd(L.matrix)
    if sv[-2] < 1e-10 * max(sv[0], 1.0):
        raise NumericalError(f"steady state is not unique (second-smallest singular value {sv[-2]:.3e})")
    v = vh[-1].conj()
    rho = v.reshape(2, 2) / (VEC_ID @ v)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix2(rho)


def _detection_operator(channel: DetectionChannel, eta: complex, beta: complex, gamma: float) -> np.ndarray:
    D = channel.d_factor
    return D * complex(eta) * complex(beta) * I2 + D * math.sqrt(gamma) * SM


def _drive(beta) -> DriveAmplitude:
    return beta if isinstance(beta, DriveAmplitude) else DriveAmplitude(beta)


def flux_exact(channel: DetectionChannel, eta: complex, beta, params: AtomParams) -> float:
    """<c+ c> in the steady state, for any drive strength and detuning."""
    drive = _drive(beta)
    rho = steady_density(build_liouvillian(params, drive))
    c = _detection_operator(channel, eta, drive.beta, params.gamma)
    return float(rho.expect(c.conj().T @ c).real)


def g2_exact(channel: DetectionChannel, eta: complex, beta, params: AtomParams, tau=0.0):
    """Normalized G2(tau) = Tr[c+c e^{L tau}(c rho c+)] / F^2; ``tau`` scalar or array (>= 0)."""
    drive = _drive(beta)
    L = build_liouvillian(params, drive)
    rho = steady_density(L).entries
    c = _detection_operator(channel, eta, drive.beta, params.gamma)
    n_op = c.conj().T @ c
    F = float(np.trace(n_op @ rho).real)
    F0 = abs(channel.d_factor * drive.beta) ** 2
    if F0 == 0 or F / F0 < FLUX_FLOOR:
        raise UndefinedCorrelationError(f"detected flux too small for g2 (F = {F:.3e}, F0 = {F0:.3e})")
    taus = np.atleast_1d(np.asarray(tau, dtype=float))
    if np.any(taus < 0) or not np.all(np.isfinite(taus)):
        raise DomainError("delays must be finite and >= 0")
    collapsed = c @ rho @ c.conj().T
    out = np.empty(taus.shape)
    for i, t in enumerate(taus):
        evolved = collapsed if t == 0 else L.propagate(collapsed, t)
        out[i] = np.trace(n_op @ evolved).real / F**2
    return float(out[0]) if np.ndim(tau) == 0 else out


def g2_weak_limit_check(eta_grid, s: float = 1e-4, channel: DetectionChannel | None = None) -> float:
    """max |g2_exact(tau=0) - g2_closed| / max(g2_closed, 1) over real or complex ``eta_grid`` at resonance."""
    channel = channel or DetectionChannel()
    params = AtomParams(1.0, 0.0)
    drive = DriveAmplitude.from_saturation(s, params.gamma)
    worst = 0.0
    for eta in eta_grid:
        if abs(complex(eta) - 2.0) < 0.1:
            raise DomainError("grid must exclude |eta - 2| < 0.1")
        closed = weak_drive_g2(eta)
        exact = g2_exact(channel, eta, drive, params, 0.0)
        worst = max(worst, abs(exact - closed) / max(closed, 1.0))
    return worst
