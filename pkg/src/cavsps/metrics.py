"""Figures of merit for the emitter-cavity system.

Rates g, kappa, gamma are ordinary frequencies in GHz throughout; the 2 pi
bookkeeping cancels in every ratio used here.  Formulas:

    F_P  = 4 g^2 / (kappa gamma)          weak-coupling Purcell factor
    beta = F_P / (F_P + 1)                fraction emitted into the mode
    eta  = beta * kappa / (kappa + gamma) photon extraction efficiency
    hbar g = mu E_vac / sqrt(2)           coupling from the vacuum field
    gamma_free = n omega^3 mu^2 / (3 pi eps0 hbar c^3)
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C_M_S
from scipy.constants import e as E_CHARGE
from scipy.constants import epsilon_0, hbar
from scipy.optimize import least_squares


@dataclass(frozen=True)
class CqedParams:
    """Coupling and decay rates of the coupled system, all GHz.

    kappa is the total cavity energy decay rate; the per-mirror split and
    the polarisation mode splitting are optional extras for bookkeeping.
    """

    g: float
    kappa: float
    gamma: float
    kappa_top: float | None = None
    kappa_bottom: float | None = None
    mode_splitting: float | None = None

    def __post_init__(self):
        for name in ("g", "kappa", "gamma", "kappa_top", "kappa_bottom", "mode_splitting"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError("%s must be non-negative" % name)
        if self.kappa_top is not None and self.kappa_bottom is not None:
            if self.kappa_top + self.kappa_bottom > self.kappa + 1e-9:
                raise ValueError("per-mirror rates exceed the total cavity rate")


def purcell(params: CqedParams) -> float:
    """Purcell factor 4 g^2 / (kappa gamma)."""
    if params.kappa <= 0 or params.gamma <= 0:
        raise ValueError("kappa and gamma must be positive")
    return 4.0 * params.g**2 / (params.kappa * params.gamma)


def beta_factor(purcell_factor: float) -> float:
    """Fraction of decays into the cavity mode, F_P / (F_P + 1)."""
    if purcell_factor < 0:
        raise ValueError("Purcell factor must be non-negative")
    return purcell_factor / (purcell_factor + 1.0)


def conversion_efficiency(params: CqedParams, use_top_only: bool = False) -> float:
    """Probability that an excitation leaves as a photon in the output port.

    beta * kappa / (kappa + gamma); with use_top_only, only the decay
    through the top mirror counts: beta * kappa_top / (kappa + gamma).
    """
    if use_top_only:
        if params.kappa_top is None:
            raise ValueError("use_top_only needs kappa_top")
        out = params.kappa_top
    else:
        out = params.kappa
    b = beta_factor(purcell(params))
    return b * out / (params.kappa + params.gamma)


def optimal_kappa(g: float, gamma: float) -> tuple[float, float]:
    """Cavity linewidth maximising the conversion efficiency.

    The analytic optimum is kappa* = 2 g; returns (kappa*, eta(kappa*)).
    """
    if g <= 0 or gamma <= 0:
        raise ValueError("g and gamma must be positive")
    k_star = 2.0 * g
    eta = conversion_efficiency(CqedParams(g=g, kappa=k_star, gamma=gamma))
    return k_star, eta


@dataclass(frozen=True)
class DipoleParams:
    """Emitter dipole (as a length mu/e in nm), the cavity vacuum field it
    sits in, and the host medium.

    The default medium index is the value that reconciles the dipole with
    the emitter's bulk radiative lifetime.
    """

    dipole_moment_nm: float
    vacuum_field_v_m: float
    wavelength_nm: float
    medium_index: float = 3.67

    def __post_init__(self):
        values = (
            self.dipole_moment_nm,
            self.vacuum_field_v_m,
            self.wavelength_nm,
            self.medium_index,
        )
        if min(values) <= 0:
            raise ValueError("dipole parameters must be positive")

    @property
    def dipole_cm(self) -> float:
        """Dipole moment in C m."""
        return self.dipole_moment_nm * 1e-9 * E_CHARGE


def coupling_from_field(dipole: DipoleParams) -> float:
    """Emitter-cavity coupling g / 2 pi in GHz from the vacuum field.

    hbar g_ang = mu E_vac / sqrt(2); the sqrt(2) accounts for the standing
    wave normalisation of the quoted field amplitude.
    """
    g_ang = dipole.dipole_cm * dipole.vacuum_field_v_m / (math.sqrt(2.0) * hbar)
    return g_ang / (2.0 * math.pi) / 1e9


def free_space_gamma(dipole: DipoleParams) -> tuple[float, float]:
    """Radiative decay of the dipole in an unstructured host medium.

    gamma_ang = n omega^3 mu^2 / (3 pi eps0 hbar c^3).  Returns the rate
    both ways it is usually quoted: (1/ns, GHz as gamma/2pi).
    """
    omega = 2.0 * math.pi * C_M_S / (dipole.wavelength_nm * 1e-9)
    mu = dipole.dipole_cm
    rate = dipole.medium_index * omega**3 * mu**2 / (
        3.0 * math.pi * epsilon_0 * hbar * C_M_S**3
    )
    return rate * 1e-9, rate / (2.0 * math.pi) / 1e9


def purcell_from_lifetimes(tau_on_ps: float, tau_off_ps: float) -> float:
    """Purcell factor from lifetimes on and far off resonance."""
    if tau_on_ps <= 0 or tau_off_ps <= 0:
        raise ValueError("lifetimes must be positive")
    if tau_off_ps <= tau_on_ps:
        raise ValueError("off-resonance lifetime must exceed the on-resonance one")
    return tau_off_ps / tau_on_ps - 1.0


# ---------------------------------------------------------------------------
# decay rate versus emitter-cavity detuning


@dataclass(frozen=True)
class LorentzianPeak:
    """One cavity channel: enhancement gamma_i on resonance, centre, width."""

    rate: float
    center: float
    width: float


@dataclass(frozen=True)
class DecayVsDetuningModel:
    """gamma_tot(delta) = gamma0 + sum_i rate_i / (1 + (2 (delta - c_i) / w_i)^2)."""

    gamma0: float
    peaks: tuple

    def rate(self, detuning):
        d = np.asarray(detuning, dtype=float)
        total = np.full(d.shape, self.gamma0)
        for p in self.peaks:
            total = total + p.rate / (1.0 + (2.0 * (d - p.center) / p.width) ** 2)
        return total if total.shape else float(total)

    def mode_fraction(self, index: int) -> float:
        """Share of the decay through one channel at that channel's centre."""
        p = self.peaks[index]
        total = float(self.rate(p.center))
        share = p.rate / total
        return share

    def purcell_of_peak(self, index: int) -> float:
        """Purcell factor of one channel, rate_i / gamma0."""
        return self.peaks[index].rate / self.gamma0


def _pack(model: DecayVsDetuningModel) -> np.ndarray:
    x = [model.gamma0]
    for p in model.peaks:
        x.extend([p.rate, p.center, p.width])
    return np.array(x)


def _unpack(x: np.ndarray) -> DecayVsDetuningModel:
    peaks = tuple(
        LorentzianPeak(rate=float(x[k]), center=float(x[k + 1]), width=float(x[k + 2]))
        for k in range(1, x.size, 3)
    )
    peaks = tuple(sorted(peaks, key=lambda p: p.center))
    return DecayVsDetuningModel(gamma0=float(x[0]), peaks=peaks)


def fit_decay_vs_detuning(
    detunings,
    rates,
    n_peaks: int = 2,
    seed: int = 0,
    n_starts: int = 5,
) -> DecayVsDetuningModel:
    """Fit a flat floor plus n_peaks Lorentzians to decay-vs-detuning data.

    Damped least squares from several seeded starting points; the start
    list is deterministic for a given seed, so the fit is reproducible.
    The best (lowest residual) converged start wins.  Peaks come back
    sorted by centre.
    """
    d = np.asarray(detunings, dtype=float).reshape(-1)
    y = np.asarray(rates, dtype=float).reshape(-1)
    if n_peaks < 1:
        raise ValueError("need at least one peak")
    if d.size != y.size or d.size < 3 * n_peaks + 1:
        raise ValueError("not enough points to constrain the model")
    span = d.max() - d.min()
    if span <= 0:
        raise ValueError("detunings must span a range")

    floor = max(y.min(), 1e-6)

    # deterministic primary guess: strongest residual points, spread out
    base_centers = []
    resid = y - floor
    order = np.argsort(resid)[::-1]
    for idx in order:
        if all(abs(d[idx] - c) > span / (2.0 * n_peaks) for c in base_centers):
            base_centers.append(float(d[idx]))
        if len(base_centers) == n_peaks:
            break
    while len(base_centers) < n_peaks:
        base_centers.append(float(d[np.argmax(resid)]))

    starts = []
    amp0 = max(y.max() - floor, 1e-3)
    width0 = span / (3.0 * n_peaks)
    starts.append((floor, [(amp0, c, width0) for c in sorted(base_centers)]))
    rng = np.random.default_rng(seed)
    for _ in range(n_starts - 1):
        jitter_c = rng.uniform(-0.2, 0.2, n_peaks) * span
        jitter_a = rng.uniform(0.3, 3.0, n_peaks)
        jitter_w = rng.uniform(0.3, 3.0, n_peaks)
        starts.append(
            (
                floor * rng.uniform(0.2, 1.5),
                [
                    (amp0 * ja, c + jc, width0 * jw)
                    for c, jc, ja, jw in zip(sorted(base_centers), jitter_c, jitter_a, jitter_w)
                ],
            )
        )

    def residuals(x):
        return _unpack(x).rate(d) - y

    lower = np.concatenate([[0.0], np.tile([0.0, d.min() - span, 1e-6], n_peaks)])
    upper = np.concatenate(
        [[np.inf], np.tile([np.inf, d.max() + span, 10.0 * span], n_peaks)]
    )

    best = None
    for g0, peaks in starts:
        x0 = np.concatenate([[g0], np.array(peaks).reshape(-1)])
        x0 = np.clip(x0, lower + 1e-9, upper - 1e-9)
        try:
            sol = least_squares(residuals, x0, bounds=(lower, upper), xtol=1e-14, ftol=1e-14)
        except Exception:
            continue
        if not sol.success:
            continue
        cost = float(sol.cost)
        if best is None or cost < best[0]:
            best = (cost, sol.x)
    if best is None:
        raise RuntimeError("decay-vs-detuning fit did not converge from any start")
    return _unpack(best[1])


def read_decay_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read (detuning_ghz, rate_ghz) columns from a CSV with header."""
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError("decay CSV needs columns detuning_ghz,rate_ghz")
    return data[:, 0], data[:, 1]


# ---------------------------------------------------------------------------
# end-to-end efficiency budget


@dataclass(frozen=True)
class EfficiencyBudget:
    """Multiplicative budget from excitation to fibre-coupled photon.

    preparation:   probability the pulse leaves the emitter excited once
    mode_coupling: fraction decaying through the intended cavity channel
    extraction:    fraction of cavity decays leaving through the top mirror
    optics:        downstream optical transmission
    """

    preparation: float
    mode_coupling: float
    extraction: float
    optics: float

    def __post_init__(self):
        for name in ("preparation", "mode_coupling", "extraction", "optics"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError("%s must be a probability, got %r" % (name, v))

    def factors(self) -> dict:
        return {
            "preparation": self.preparation,
            "mode_coupling": self.mode_coupling,
            "extraction": self.extraction,
            "optics": self.optics,
        }

    def total(self) -> float:
        return self.preparation * self.mode_coupling * self.extraction * self.optics

    def sensitivities(self) -> dict:
        """d(total)/d(factor) for each factor: the product of the others."""
        fac = self.factors()
        out = {}
        for name in fac:
            prod = 1.0
            for other, v in fac.items():
                if other != name:
                    prod *= v
            out[name] = prod
        return out
