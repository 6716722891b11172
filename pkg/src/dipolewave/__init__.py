"""Dipole-wave content of focused beams and photon statistics of a driven two-level atom."""

from dipolewave.errors import (
    ContractViolation,
    DivergenceError,
    DomainError,
    NumericalError,
    UndefinedCorrelationError,
)
from dipolewave.spectra import (
    AngularSpectrum,
    Direction,
    circular_unit_vector,
    dipole_spectrum,
    longitudinal_pol_vector,
    quabis_spectrum,
    sine_spectrum,
    truncated_dipole_spectrum,
)
from dipolewave.quadrature import QuadratureGrid, cap_integrate, polar_integrate
from dipolewave.overlap import (
    OverlapResult,
    dipole_overlap,
    eta_gap_from_overlap,
    max_overlap_longitudinal,
    max_overlap_transverse,
    optimal_profile,
)
from dipolewave.bloch import AtomParams, BlochState, DriveAmplitude, evolve, flux_balance_residual, steady_state
from dipolewave.stats import (
    DetectionChannel,
    carmichael_map,
    dipole_projection,
    eta_from_amplitudes,
    resonant_flux_ratio,
    weak_drive_flux,
    weak_drive_g2,
)
from dipolewave.oracle import (
    DensityMatrix2,
    LiouvillianMap,
    build_liouvillian,
    flux_exact,
    g2_exact,
    g2_weak_limit_check,
    steady_density,
)

__version__ = "0.1.0"
