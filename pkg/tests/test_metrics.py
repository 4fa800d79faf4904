"""Figures of merit: Purcell, efficiency, dipole rates, decay fits, budget."""

import math

import numpy as np
import pytest

from cavsps import metrics
from cavsps.metrics import CqedParams, DipoleParams, EfficiencyBudget


def eta_closed_form(g, kappa, gamma):
    return (4 * g * g / (4 * g * g + kappa * gamma)) * (kappa / (kappa + gamma))


def test_purcell_and_beta():
    assert metrics.purcell(CqedParams(g=4.16, kappa=24.0, gamma=0.30)) == pytest.approx(
        9.61422, abs=1e-4
    )
    assert metrics.beta_factor(10.95) == pytest.approx(10.95 / 11.95, rel=1e-12)
    assert metrics.beta_factor(0.0) == 0.0
    with pytest.raises(ValueError):
        metrics.purcell(CqedParams(g=4.16, kappa=0.0, gamma=0.30))
    with pytest.raises(ValueError):
        metrics.beta_factor(-0.1)


def test_conversion_efficiency_closed_form():
    for g, kappa, gamma in [(4.4, 8.8, 0.29), (4.16, 25.0, 0.30), (2.0, 40.0, 0.5)]:
        eta = metrics.conversion_efficiency(CqedParams(g=g, kappa=kappa, gamma=gamma))
        assert eta == pytest.approx(eta_closed_form(g, kappa, gamma), rel=1e-12)


def test_optimal_kappa_is_twice_g():
    g, gamma = 4.4, 0.29
    k_star, eta = metrics.optimal_kappa(g, gamma)
    assert k_star == pytest.approx(2.0 * g, rel=1e-12)
    assert eta == pytest.approx(0.9372114329, abs=1e-9)
    assert abs(eta - 0.94) <= 0.005
    # the stationary point really is the maximum over the linewidth axis
    for kappa in np.linspace(0.5 * k_star, 2.0 * k_star, 41):
        assert eta_closed_form(g, kappa, gamma) <= eta + 1e-12


def test_top_mirror_only_extraction():
    p = CqedParams(g=4.16, kappa=25.0, gamma=0.30, kappa_top=20.0, kappa_bottom=5.0)
    full = metrics.conversion_efficiency(p)
    top = metrics.conversion_efficiency(p, use_top_only=True)
    assert top == pytest.approx(full * 20.0 / 25.0, rel=1e-12)
    with pytest.raises(ValueError):
        metrics.conversion_efficiency(CqedParams(g=4.16, kappa=25.0, gamma=0.3), use_top_only=True)
    with pytest.raises(ValueError):
        CqedParams(g=4.16, kappa=25.0, gamma=0.3, kappa_top=20.0, kappa_bottom=6.0)


def test_coupling_from_vacuum_field():
    dip = DipoleParams(dipole_moment_nm=0.71, vacuum_field_v_m=35000.0, wavelength_nm=920.0)
    g = metrics.coupling_from_field(dip)
    assert abs(g - 4.24) <= 0.02
    assert g == pytest.approx(4.2487948259, abs=1e-8)
    fp = metrics.purcell(CqedParams(g=g, kappa=23.3, gamma=0.27))
    assert fp == pytest.approx(11.4781481, abs=1e-5)
    assert abs(fp / 11.4 - 1.0) <= 0.02


def test_free_space_decay_of_the_dipole():
    dip = DipoleParams(dipole_moment_nm=0.71, vacuum_field_v_m=35000.0, wavelength_nm=920.0)
    per_ns, ghz = metrics.free_space_gamma(dip)
    assert per_ns == pytest.approx(1.719030782, abs=1e-6)
    assert ghz == pytest.approx(0.273592246, abs=1e-6)
    assert ghz == pytest.approx(per_ns / (2.0 * math.pi), rel=1e-12)
    with pytest.raises(ValueError):
        DipoleParams(dipole_moment_nm=-0.71, vacuum_field_v_m=35000.0, wavelength_nm=920.0)


def test_purcell_from_lifetimes():
    assert metrics.purcell_from_lifetimes(47.5, 520.0) == pytest.approx(9.9473684, abs=1e-6)
    assert abs(metrics.purcell_from_lifetimes(47.5, 520.0) - 9.95) <= 0.01
    with pytest.raises(ValueError):
        metrics.purcell_from_lifetimes(520.0, 47.5)
    with pytest.raises(ValueError):
        metrics.purcell_from_lifetimes(0.0, 520.0)


SYNTHETIC_DECAY = metrics.DecayVsDetuningModel(
    gamma0=0.30,
    peaks=(
        metrics.LorentzianPeak(rate=2.84, center=-50.0, width=25.0),
        metrics.LorentzianPeak(rate=2.87, center=0.0, width=24.0),
    ),
)


def test_decay_fit_recovers_synthetic_model():
    d = np.linspace(-100.0, 50.0, 61)
    fit = metrics.fit_decay_vs_detuning(d, SYNTHETIC_DECAY.rate(d))
    assert fit.gamma0 == pytest.approx(0.30, rel=1e-6)
    assert fit.peaks[1].rate == pytest.approx(2.87, rel=1e-6)
    assert fit.peaks[1].center == pytest.approx(0.0, abs=1e-6)
    assert fit.peaks[0].center == pytest.approx(-50.0, abs=1e-6)
    assert fit.mode_fraction(1) == pytest.approx(0.86003878, abs=1e-6)
    assert fit.purcell_of_peak(1) == pytest.approx(9.5666667, abs=1e-5)
    assert abs(fit.purcell_of_peak(1) / 9.6 - 1.0) <= 0.01


def test_decay_fit_survives_noise():
    d = np.linspace(-100.0, 50.0, 61)
    y = SYNTHETIC_DECAY.rate(d)
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(25):
        fit = metrics.fit_decay_vs_detuning(d, y * (1.0 + 0.02 * rng.standard_normal(y.size)))
        worst = max(worst, abs(fit.peaks[1].rate / 2.87 - 1.0))
    assert worst < 0.05


def test_decay_fit_validation():
    with pytest.raises(ValueError):
        metrics.fit_decay_vs_detuning([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])  # too few
    with pytest.raises(ValueError):
        metrics.fit_decay_vs_detuning(np.zeros(9), np.ones(9))  # no span
    with pytest.raises(ValueError):
        metrics.fit_decay_vs_detuning(np.arange(9.0), np.ones(9), n_peaks=0)


def test_decay_csv_round_trip(tmp_path):
    d = np.linspace(-60.0, 30.0, 10)
    y = SYNTHETIC_DECAY.rate(d)
    path = tmp_path / "decay.csv"
    with open(path, "w") as fh:
        fh.write("detuning_ghz,rate_ghz\n")
        for row in zip(d, y):
            fh.write("%.12g,%.12g\n" % row)
    d2, y2 = metrics.read_decay_csv(path)
    assert np.allclose(d2, d, atol=1e-10)
    assert np.allclose(y2, y, atol=1e-10)


def test_efficiency_budget():
    budget = EfficiencyBudget(preparation=0.963, mode_coupling=0.86, extraction=0.96, optics=0.68)
    assert budget.total() == pytest.approx(0.540635904, abs=1e-9)
    assert abs(budget.total() - 0.541) <= 0.001
    sens = budget.sensitivities()
    assert sens["optics"] == pytest.approx(0.7950528, abs=1e-7)
    for name, factor in budget.factors().items():
        assert sens[name] * factor == pytest.approx(budget.total(), rel=1e-12)
    with pytest.raises(ValueError):
        EfficiencyBudget(preparation=1.2, mode_coupling=0.86, extraction=0.96, optics=0.68)
