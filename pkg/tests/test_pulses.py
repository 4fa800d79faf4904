"""Pulse sampling and cavity filtering of the drive envelope."""

import math

import numpy as np
import pytest

from cavsps.pulses import (
    CavityFilter,
    DriveEnvelope,
    LaserPulse,
    default_grid_step,
    filter_through_cavity,
    gaussian_envelope,
)
from cavsps.units import GHZ_PS

PAPER_PULSE = LaserPulse(t_p=5.2, delta_l=32.0)
PAPER_FILTER = CavityFilter(delta_c=-50.0, kappa=25.0)


def measured_fwhm(times, values):
    half = values.max() / 2.0
    above = values >= half
    i = int(np.argmax(above))
    j = len(values) - int(np.argmax(above[::-1])) - 1
    # linear interpolation at both crossings
    t_lo = np.interp(half, [values[i - 1], values[i]], [times[i - 1], times[i]])
    t_hi = np.interp(half, [values[j + 1], values[j]], [times[j + 1], times[j]])
    return t_hi - t_lo


def test_intensity_fwhm_matches_t_p():
    env = gaussian_envelope(LaserPulse(t_p=5.2), dt=0.01)
    fwhm = measured_fwhm(env.times, np.abs(env.omega) ** 2)
    assert abs(fwhm - 5.2) <= 0.01


def test_resonant_pulse_is_real():
    env = gaussian_envelope(LaserPulse(t_p=5.2, delta_l=0.0))
    assert np.max(np.abs(env.omega.imag)) <= 1e-15 * env.peak_magnitude()
    assert np.all(env.omega.real >= 0.0)


def test_spectrum_fwhm_against_dft_oracle():
    pulse = LaserPulse(t_p=5.2)
    env = gaussian_envelope(pulse, span=6.0, dt=0.01)
    # discrete-Fourier-transform oracle on a heavily zero-padded grid
    n_fft = 1 << 18
    spec = np.abs(np.fft.fftshift(np.fft.fft(env.omega, n_fft))) ** 2
    freq = np.fft.fftshift(np.fft.fftfreq(n_fft, d=env.dt)) / GHZ_PS  # GHz
    fwhm = measured_fwhm(freq, spec)
    assert abs(fwhm - 84.8) <= 0.5
    assert fwhm == pytest.approx(pulse.spectral_fwhm_ghz(), rel=1e-3)
    analytic = 2.0 * math.log(2.0) / (math.pi * 5.2) / GHZ_PS
    assert pulse.spectral_fwhm_ghz() == pytest.approx(analytic, rel=1e-12)
    assert analytic == pytest.approx(84.8598, abs=5e-4)


def test_default_grid_step_cap():
    assert default_grid_step(LaserPulse(t_p=5.2)) == pytest.approx(0.026)
    assert default_grid_step(LaserPulse(t_p=50.0)) == pytest.approx(0.05)


def test_fast_cavity_is_transparent():
    env = gaussian_envelope(LaserPulse(t_p=5.2, delta_l=0.0))
    out = filter_through_cavity(env, CavityFilter(delta_c=0.0, kappa=1.0e4))
    n = env.times.size
    dev = np.max(np.abs(out.omega[:n] - env.omega)) / env.peak_magnitude()
    assert dev < 0.01
    assert dev == pytest.approx(0.00618, abs=1e-3)


def test_lorentzian_response_at_three_detunings():
    # quasi-monochromatic probe: 400 ps pulse against a 25 GHz filter
    kappa = 25.0
    filt = CavityFilter(delta_c=0.0, kappa=kappa)
    for offset in (0.0, kappa / 2.0, kappa):
        env = gaussian_envelope(LaserPulse(t_p=400.0, delta_l=offset), dt=0.05)
        out = filter_through_cavity(env, filt, method="fft")
        ratio = out.peak_magnitude() / env.peak_magnitude()
        oracle = 1.0 / math.sqrt(1.0 + (2.0 * offset / kappa) ** 2)
        assert ratio == pytest.approx(oracle, rel=5e-3)


def test_amplitude_response_closed_form():
    filt = CavityFilter(delta_c=-50.0, kappa=25.0)
    resp = filt.amplitude_response(np.array([0.0, 12.5, 25.0]))
    assert resp == pytest.approx([1.0, 1.0 / math.sqrt(2.0), 1.0 / math.sqrt(5.0)])


def test_ring_down_time_constant():
    env = gaussian_envelope(PAPER_PULSE)
    out = filter_through_cavity(env, PAPER_FILTER, ringdown_factor=7.0)
    t_end = env.times[-1]
    tail = (out.times > t_end + 5.0) & (out.times < t_end + 40.0)
    mag = np.abs(out.omega[tail])
    assert mag.min() > 0.0
    # exponential-tail fit oracle: log-linear least squares
    slope = np.polyfit(out.times[tail], np.log(mag), 1)[0]
    t_decay = -1.0 / slope
    expected = 1.0 / (math.pi * PAPER_FILTER.kappa * GHZ_PS)
    assert t_decay == pytest.approx(expected, rel=0.05)


def test_filter_linearity():
    env1 = gaussian_envelope(PAPER_PULSE)
    env2 = DriveEnvelope(env1.times, np.roll(env1.omega, 40))
    a, b = 1.7 - 0.3j, -0.4 + 2.1j
    mixed = filter_through_cavity(DriveEnvelope(env1.times, a * env1.omega + b * env2.omega), PAPER_FILTER)
    parts_a = filter_through_cavity(env1, PAPER_FILTER)
    parts_b = filter_through_cavity(env2, PAPER_FILTER)
    combined = a * parts_a.omega + b * parts_b.omega
    rel = np.max(np.abs(mixed.omega - combined)) / np.max(np.abs(combined))
    assert rel < 1e-10


def test_energy_suppression_grows_with_detuning():
    filt = CavityFilter(delta_c=0.0, kappa=25.0)
    ratios = []
    for offset in (0.0, 15.0, 30.0, 50.0, 80.0):
        env = gaussian_envelope(LaserPulse(t_p=5.2, delta_l=offset))
        out = filter_through_cavity(env, filt)
        ratios.append(out.energy() / env.energy())
    assert ratios[0] <= 1.0
    assert all(r2 < r1 for r1, r2 in zip(ratios, ratios[1:]))


def test_time_and_fft_routes_agree():
    env = gaussian_envelope(PAPER_PULSE, dt=0.01)
    out_t = filter_through_cavity(env, PAPER_FILTER, method="time")
    out_f = filter_through_cavity(env, PAPER_FILTER, method="fft")
    rel = np.max(np.abs(out_t.omega - out_f.omega)) / out_t.peak_magnitude()
    assert rel < 1e-6


def test_output_grid_extends_by_ring_down():
    env = gaussian_envelope(PAPER_PULSE)
    out = filter_through_cavity(env, PAPER_FILTER)
    extension = out.times[-1] - env.times[-1]
    expected = 5.0 / (math.pi * PAPER_FILTER.kappa * GHZ_PS)
    assert extension == pytest.approx(expected, abs=2 * env.dt)
    assert out.dt == pytest.approx(env.dt)


def test_cosine_kernel_is_a_distinct_comparison_mode():
    env = gaussian_envelope(PAPER_PULSE)
    single = filter_through_cavity(env, PAPER_FILTER, kernel="single-pole")
    double = filter_through_cavity(env, PAPER_FILTER, kernel="cosine")
    assert single.times.shape == double.times.shape
    assert np.max(np.abs(single.omega - double.omega)) > 1e-3 * single.peak_magnitude()
    with pytest.raises(ValueError):
        filter_through_cavity(env, PAPER_FILTER, kernel="full")


def test_envelope_grid_validation():
    with pytest.raises(ValueError):
        DriveEnvelope(np.array([0.0, 1.0, 1.5]), np.zeros(3, dtype=complex))
    with pytest.raises(ValueError):
        DriveEnvelope(np.array([0.0, 1.0]), np.array([1.0, float("nan")], dtype=complex))
    with pytest.raises(ValueError):
        gaussian_envelope(LaserPulse(t_p=5.2), span=2.0)  # clipped peak
    with pytest.raises(ValueError):
        LaserPulse(t_p=0.0)


def test_envelope_ends_below_threshold():
    env = gaussian_envelope(PAPER_PULSE)
    assert env.ends_below()
    out = filter_through_cavity(env, PAPER_FILTER)
    assert not out.ends_below()  # 5 ring-down times leave ~e-5 of the peak
    longer = filter_through_cavity(env, PAPER_FILTER, ringdown_factor=16.0)
    assert longer.ends_below()


def test_envelope_csv_round_trip(tmp_path):
    env = filter_through_cavity(gaussian_envelope(PAPER_PULSE), PAPER_FILTER)
    path = tmp_path / "envelope.csv"
    env.to_csv(path)
    back = DriveEnvelope.from_csv(path)
    assert np.max(np.abs(back.times - env.times)) < 1e-9
    assert np.max(np.abs(back.omega - env.omega)) < 1e-9 * env.peak_magnitude()
    with open(path) as fh:
        assert fh.readline().strip() == "t_ps,re_omega,im_omega"
