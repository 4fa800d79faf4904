"""Excitation sweeps: Rabi maps, pi-pulse search and power-axis calibration.

A map cell fixes (laser detuning, amplitude), builds the filtered drive,
propagates the Lindblad model and integrates the photon emission
probability.  Cells are independent, so columns (one detuning, all
amplitudes) are dispatched to a process pool and merged by grid index;
the result is identical for any worker count.  Within a column the filtered
envelope is computed once at unit amplitude and rescaled, which is exact
because the filter is linear.
"""

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .lindblad import DriveModel, emission_probability, evolve
from .pulses import CavityFilter, DriveEnvelope, LaserPulse, filter_through_cavity, gaussian_envelope
from .quantum import DensityMatrix, HilbertSpace

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
TRUNCATION_TOL = 1e-3


@dataclass(frozen=True)
class ExcitationSettings:
    """Operating point of the pulsed excitation model.

    Defaults are the source's nominal operating point: 5.2 ps pulses
    filtered by the 25 GHz cavity mode sitting 50 GHz to the red of the
    emitter, 4.16 GHz emitter-cavity coupling and 32 fs/K excitation-induced
    dephasing at 4.2 K.
    """

    g: float = 4.16
    kappa_h: float = 25.0
    filter_delta_c: float = -50.0
    filter_kappa: float = 25.0
    t_p: float = 5.2
    phonon_coupling: float = 32.0
    temperature: float = 4.2
    gamma_free: float = 0.0
    fock_cutoff: int = 2
    grid_step: float | None = None
    kernel: str = "single-pole"


def unit_filtered_envelope(settings: ExcitationSettings, delta_l: float) -> DriveEnvelope:
    """Filtered drive envelope for area_scale = 1 at the given detuning."""
    pulse = LaserPulse(t_p=settings.t_p, delta_l=delta_l, area_scale=1.0, t_center=0.0)
    env = gaussian_envelope(pulse, dt=settings.grid_step)
    filt = CavityFilter(delta_c=settings.filter_delta_c, kappa=settings.filter_kappa)
    return filter_through_cavity(env, filt, kernel=settings.kernel)


def _emission_from_filtered(
    settings: ExcitationSettings,
    filtered_unit: DriveEnvelope,
    area_scale: float,
    fock_cutoff: int | None = None,
) -> float:
    cutoff = settings.fock_cutoff if fock_cutoff is None else fock_cutoff
    space = HilbertSpace(fock_cutoff=cutoff)
    model = DriveModel(
        g=settings.g,
        kappa_h=settings.kappa_h,
        drive=filtered_unit.scaled(area_scale),
        space=space,
        gamma_free=settings.gamma_free,
        phonon_coupling=settings.phonon_coupling,
        temperature=settings.temperature,
    )
    traj = evolve(model, DensityMatrix.ground(space))
    return emission_probability(traj, settings.kappa_h)


def emission_for(
    settings: ExcitationSettings,
    delta_l: float,
    area_scale: float,
    fock_cutoff: int | None = None,
) -> float:
    """Emission probability for a single (detuning, amplitude) cell."""
    filtered = unit_filtered_envelope(settings, delta_l)
    return _emission_from_filtered(settings, filtered, area_scale, fock_cutoff)


def truncation_shift(settings: ExcitationSettings, delta_l: float, area_scale: float):
    """Emission at the configured cutoff and one photon higher.

    Returns (p_low, p_high, |difference|); the difference must stay below
    1e-3 for the truncation to be trusted.
    """
    filtered = unit_filtered_envelope(settings, delta_l)
    p_low = _emission_from_filtered(settings, filtered, area_scale)
    p_high = _emission_from_filtered(settings, filtered, area_scale, settings.fock_cutoff + 1)
    return p_low, p_high, abs(p_high - p_low)


def _column_job(args):
    settings, delta_l, amplitudes = args
    filtered = unit_filtered_envelope(settings, delta_l)
    values = []
    errors = []
    for j, area in enumerate(amplitudes):
        try:
            values.append(_emission_from_filtered(settings, filtered, area))
            errors.append(None)
        except Exception as exc:  # annotated per cell, the map keeps going
            values.append(float("nan"))
            errors.append("%s: %s" % (type(exc).__name__, exc))
    return values, errors


@dataclass(frozen=True)
class RabiMap:
    """Emission probability over a (detuning, amplitude) grid.

    emission[i, j] belongs to detunings[i] and amplitudes[j]; cells whose
    propagation failed hold NaN and carry a message in errors.
    """

    detunings: np.ndarray = field(repr=False)
    amplitudes: np.ndarray = field(repr=False)
    emission: np.ndarray = field(repr=False)
    errors: tuple = ()

    def peak(self):
        """(detuning, amplitude, value) of the map maximum (NaN-safe)."""
        if np.all(np.isnan(self.emission)):
            raise ValueError("map holds no finite cells")
        i, j = np.unravel_index(np.nanargmax(self.emission), self.emission.shape)
        return float(self.detunings[i]), float(self.amplitudes[j]), float(self.emission[i, j])

    def to_csv(self, path, fmt: str = "%.12g") -> None:
        row = ",".join([fmt] * 3) + "\n"
        with open(path, "w", newline="\n") as fh:
            fh.write("detuning_ghz,area_scale,emission_probability\n")
            for i, d in enumerate(self.detunings):
                for j, a in enumerate(self.amplitudes):
                    fh.write(row % (d, a, self.emission[i, j]))

    def to_json(self, path=None):
        d, a, p = self.peak()
        payload = {
            "detunings_ghz": [float(x) for x in self.detunings],
            "amplitudes": [float(x) for x in self.amplitudes],
            "emission_probability": [[float(x) for x in row] for row in self.emission],
            "errors": [list(e) for e in self.errors],
            "peak": {"detuning_ghz": d, "area_scale": a, "emission_probability": p},
        }
        if path is not None:
            with open(path, "w", newline="\n") as fh:
                json.dump(payload, fh, indent=2, sort_keys=True)
                fh.write("\n")
        return payload


def rabi_map(
    settings: ExcitationSettings,
    detunings,
    amplitudes,
    workers: int = 1,
) -> RabiMap:
    """Sweep emission probability over detuning x amplitude.

    Columns are independent jobs; with workers > 1 they run in a process
    pool.  Merging is by grid index, so the result does not depend on the
    worker count or scheduling order.
    """
    detunings = np.asarray(detunings, dtype=float)
    amplitudes = np.asarray(amplitudes, dtype=float)
    if detunings.ndim != 1 or amplitudes.ndim != 1:
        raise ValueError("detunings and amplitudes must be 1-d")
    jobs = [(settings, float(d), tuple(float(a) for a in amplitudes)) for d in detunings]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_column_job, jobs))
    else:
        results = [_column_job(job) for job in jobs]

    emission = np.empty((detunings.size, amplitudes.size))
    errors = []
    for i, (values, errs) in enumerate(results):
        emission[i, :] = values
        for j, msg in enumerate(errs):
            if msg is not None:
                errors.append((i, j, msg))
    return RabiMap(detunings, amplitudes, emission, tuple(errors))


def golden_section_max(f, lo: float, hi: float, rel_tol: float = 3e-3, max_iter: int = 60):
    """Golden-section maximisation of a unimodal scalar function."""
    a, b = float(lo), float(hi)
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if (b - a) <= rel_tol * max(abs(a), abs(b), 1.0):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    if fc >= fd:
        return c, fc
    return d, fd


@dataclass(frozen=True)
class PiPulseResult:
    delta_l: float
    area_scale: float
    emission: float


def _first_peak_bracket(values: np.ndarray):
    """Index of the first interior local maximum of a sampled curve."""
    for k in range(1, values.size - 1):
        if values[k] >= values[k + 1] and values[k] > values[k - 1]:
            return k
    raise ValueError("amplitude range does not bracket the first Rabi maximum")


def _refine_amplitude(settings, delta_l, amplitudes):
    filtered = unit_filtered_envelope(settings, delta_l)
    values = np.array([_emission_from_filtered(settings, filtered, a) for a in amplitudes])
    k = _first_peak_bracket(values)
    lo, hi = amplitudes[k - 1], amplitudes[k + 1]
    best_a, best_p = golden_section_max(
        lambda a: _emission_from_filtered(settings, filtered, a), lo, hi
    )
    return best_a, best_p


def pi_pulse_search(
    settings: ExcitationSettings,
    detuning_range: tuple[float, float],
    amplitude_range: tuple[float, float],
    coarse: tuple[int, int] = (7, 16),
    workers: int = 1,
) -> PiPulseResult:
    """Locate the first-Rabi-peak optimum over (detuning, amplitude).

    A coarse map brackets the first maximum, then golden-section refines the
    amplitude at fixed detuning and finally the detuning itself (with the
    amplitude re-refined at each probe), to about 1e-3 in emission
    probability.
    """
    n_det, n_amp = coarse
    detunings = np.linspace(detuning_range[0], detuning_range[1], n_det)
    amplitudes = np.linspace(amplitude_range[0], amplitude_range[1], n_amp)
    coarse_map = rabi_map(settings, detunings, amplitudes, workers=workers)

    best = None
    for i, d in enumerate(detunings):
        try:
            k = _first_peak_bracket(coarse_map.emission[i])
        except ValueError:
            continue
        p = coarse_map.emission[i, k]
        if best is None or p > best[0]:
            best = (p, i, k)
    if best is None:
        raise ValueError("no interior Rabi maximum found on the coarse grid")
    _, i0, _ = best

    amp_cache = {}

    def peak_at(delta):
        key = round(float(delta), 12)
        if key not in amp_cache:
            amp_cache[key] = _refine_amplitude(settings, float(delta), amplitudes)
        return amp_cache[key]

    d_lo = detunings[max(i0 - 1, 0)]
    d_hi = detunings[min(i0 + 1, detunings.size - 1)]
    if d_lo == d_hi:
        best_d = float(detunings[i0])
    else:
        best_d, _ = golden_section_max(lambda d: peak_at(d)[1], d_lo, d_hi, rel_tol=1e-3)
    best_a, best_p = peak_at(best_d)
    return PiPulseResult(delta_l=float(best_d), area_scale=float(best_a), emission=float(best_p))


@dataclass(frozen=True)
class PowerAxisFit:
    """Mapping of a measured sqrt-power axis onto the model amplitude axis."""

    amplitude_per_sqrt_power: float
    counts_per_emission: float
    rms_residual: float


def fit_power_axis(
    sqrt_power,
    counts,
    model_amplitudes,
    model_emission,
) -> PowerAxisFit:
    """Least-squares fit counts ~ c * P_model(s * sqrt_power).

    The model curve is interpolated linearly; for each candidate scale s the
    optimal counts factor c is the closed-form linear fit, leaving a 1-d
    search over s (dense scan plus golden-section refinement).  The measured
    series must show an interior maximum, otherwise the scale is not
    constrained.
    """
    x = np.asarray(sqrt_power, dtype=float)
    y = np.asarray(counts, dtype=float)
    ma = np.asarray(model_amplitudes, dtype=float)
    mp = np.asarray(model_emission, dtype=float)
    if x.ndim != 1 or x.size < 4 or y.shape != x.shape:
        raise ValueError("need matching 1-d series with at least 4 points")
    if x.min() < 0 or x.max() <= 0:
        raise ValueError("sqrt-power axis must be non-negative with positive span")
    k = int(np.argmax(y))
    if k == 0 or k == y.size - 1 or y.max() <= y.min():
        raise ValueError("measured series has no interior maximum")

    def sse(s):
        m = np.interp(s * x, ma, mp)
        denom = float(m @ m)
        if denom == 0.0:
            return float(y @ y), 0.0
        c = float(m @ y) / denom
        r = y - c * m
        return float(r @ r), c

    s_max = float(ma.max()) / float(x.max())
    scales = np.linspace(s_max / 400.0, s_max, 400)
    losses = np.array([sse(s)[0] for s in scales])
    j = int(np.argmin(losses))
    lo = scales[max(j - 1, 0)]
    hi = scales[min(j + 1, scales.size - 1)]
    s_best, _ = golden_section_max(lambda s: -sse(s)[0], lo, hi, rel_tol=1e-6, max_iter=200)
    loss, c_best = sse(s_best)
    return PowerAxisFit(
        amplitude_per_sqrt_power=float(s_best),
        counts_per_emission=float(c_best),
        rms_residual=math.sqrt(loss / x.size),
    )
