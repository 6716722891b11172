import numpy as np
import pytest
from hypothesis import given, strategies as st

from dipolewave.bloch import (
    AtomParams,
    BlochState,
    DriveAmplitude,
    bloch_rhs,
    evolve,
    flux_balance_residual,
    steady_state,
)
from dipolewave.errors import DomainError

deltas = st.floats(min_value=-20, max_value=20)
sats = st.floats(min_value=0.0, max_value=1e3)
phases = st.floats(min_value=0, max_value=2 * np.pi)


def test_params():
    p = AtomParams(gamma=2.0, detuning=3.0)
    assert p.delta == 3.0
    assert AtomParams.from_delta(1.5, gamma=4.0).detuning == 3.0
    with pytest.raises(DomainError):
        AtomParams(gamma=0.0)


def test_drive_saturation():
    d = DriveAmplitude.from_saturation(2.0, gamma=3.0, phase=0.4)
    assert d.saturation(3.0) == pytest.approx(2.0)
    assert np.angle(d.beta) == pytest.approx(0.4)


def test_undriven_steady_state_is_ground():
    st_ = steady_state(AtomParams(), DriveAmplitude(0))
    assert st_.sm == 0 and st_.sz == -1.0


def test_resonant_unit_saturation():
    p = AtomParams(gamma=1.7)
    d = DriveAmplitude.from_saturation(1.0, p.gamma, phase=0.3)
    st_ = steady_state(p, d)
    assert np.sqrt(p.gamma) * st_.sm == pytest.approx(-d.beta, abs=1e-15)
    assert st_.sz == pytest.approx(-0.5)


def test_far_detuned_limit():
    st_ = steady_state(AtomParams.from_delta(1e8), DriveAmplitude(0.5))
    assert abs(st_.sm) < 1e-7 and st_.sz == pytest.approx(-1.0, abs=1e-12)


@given(deltas, sats, phases, st.floats(min_value=0.1, max_value=10))
def test_steady_state_is_fixed_point(delta, s, phase, gamma):
    p = AtomParams.from_delta(delta, gamma)
    d = DriveAmplitude.from_saturation(s, gamma, phase)
    st_ = steady_state(p, d)
    dsm, dsz = bloch_rhs(st_.sm, st_.sz, p, d)
    assert np.hypot(abs(dsm), dsz) <= 1e-12 * gamma * max(1.0, np.sqrt(s))
    assert st_.ball_radius2 <= 1 + 1e-9
    assert 0 <= st_.population <= 1
    assert abs(flux_balance_residual(st_, p, d)) <= 1e-12 * gamma * max(1.0, s)


def test_saturation_monotone():
    p = AtomParams()
    s = np.logspace(-3, 6, 60)
    pop = [steady_state(p, DriveAmplitude.from_saturation(x)).population for x in s]
    sz = [steady_state(p, DriveAmplitude.from_saturation(x)).sz for x in s]
    assert np.all(np.diff(pop) > 0)
    assert pop[-1] == pytest.approx(0.5, abs=1e-6) and pop[-1] < 0.5
    assert sz[-1] < 0


@given(deltas, st.floats(min_value=0.0, max_value=1e-4), phases)
def test_weak_drive_linearity(delta, s, phase):
    p = AtomParams.from_delta(delta)
    d = DriveAmplitude.from_saturation(s, phase=phase)
    lin = -2 * d.beta * (1 + 1j * delta) / (1 + delta ** 2)
    got = np.sqrt(p.gamma) * steady_state(p, d).sm
    assert abs(got - lin) <= 2e-4 * abs(lin) + 1e-300


def test_flux_balance_examples():
    p = AtomParams()
    d = DriveAmplitude.from_saturation(1.0)
    assert abs(flux_balance_residual(steady_state(p, d), p, d)) <= 1e-12
    assert flux_balance_residual(BlochState.ground(), p, DriveAmplitude(0)) == 0
    assert flux_balance_residual(BlochState.excited(), AtomParams(gamma=2.5), DriveAmplitude(0)) == 2.5


def test_evolve_ground_fixed_point():
    tr = evolve(BlochState.ground(), AtomParams(), DriveAmplitude(0), T=5.0)
    assert np.all(tr.sm == 0) and np.all(tr.sz == -1.0)


def test_evolve_spontaneous_decay():
    g = 2.0
    tr = evolve(BlochState.excited(), AtomParams(gamma=g), DriveAmplitude(0), T=1 / g)
    assert tr.t[-1] == pytest.approx(1 / g)
    assert tr.sz[-1] == pytest.approx(-1 + 2 * np.exp(-1), abs=1e-8)


def test_evolve_converges_to_closed_form():
    p = AtomParams()
    d = DriveAmplitude.from_saturation(1.0)
    final = evolve(None, p, d, T=30.0).final
    ss = steady_state(p, d)
    assert abs(final.sm - ss.sm) < 1e-6 and abs(final.sz - ss.sz) < 1e-6


@given(deltas, st.floats(min_value=0, max_value=200), phases)
def test_trajectory_stays_in_bloch_ball(delta, s, phase):
    tr = evolve(BlochState.excited(), AtomParams.from_delta(delta), DriveAmplitude.from_saturation(s, phase=phase),
                T=3.0)
    assert np.all(4 * np.abs(tr.sm) ** 2 + tr.sz ** 2 <= 1 + 1e-9)


def test_evolve_rejects_large_step():
    with pytest.raises(DomainError):
        evolve(None, AtomParams(gamma=1.0), DriveAmplitude(0.1), T=1.0, dt=0.1)
