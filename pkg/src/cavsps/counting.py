"""Photon-counting analysis.

Coincidence histograms from pulsed autocorrelation and two-photon
interference runs, the corrections that turn raw dips into source
figures, and the bookkeeping from detected count rate to end-to-end
system efficiency.

Delays and bin widths are in ns, count rates in counts/s.
"""

import csv
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C_M_S
from scipy.constants import h as H_PLANCK

BALANCE_TOL = 1e-6
DEFAULT_BIN_NS = 0.1


class ExtrapolationWarning(UserWarning):
    """Raised when a calibration is evaluated outside its anchored range."""


@dataclass(frozen=True)
class CoincidenceHistogram:
    """Two-detector delay histogram with a known pulse repetition period.

    Bin i spans delays centered on (i - zero_delay_bin) * bin_width_ns,
    so the zero-delay peak sits at index zero_delay_bin.
    """

    bin_width_ns: float
    counts: np.ndarray
    repetition_period_ns: float
    zero_delay_bin: int

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if counts.ndim != 1 or counts.size == 0:
            raise ValueError("counts must be a non-empty 1-d array")
        if np.any(counts < 0) or np.any(counts != np.round(counts)):
            raise ValueError("counts must be non-negative integers")
        object.__setattr__(self, "counts", counts.astype(np.int64))
        if self.bin_width_ns <= 0 or self.repetition_period_ns <= 0:
            raise ValueError("bin width and repetition period must be positive")
        # peaks one period apart need a few bins between them to be separable
        if self.repetition_period_ns / self.bin_width_ns < 4:
            raise ValueError("repetition period must span at least 4 bins")
        if not 0 <= self.zero_delay_bin < counts.size:
            raise ValueError("zero_delay_bin outside histogram")

    @classmethod
    def from_timestamps(
        cls,
        t1_ns,
        t2_ns,
        repetition_period_ns: float,
        bin_width_ns: float = DEFAULT_BIN_NS,
    ) -> "CoincidenceHistogram":
        """Bin pairwise delays t2 - t1 of recorded coincidence events."""
        t1 = np.asarray(t1_ns, dtype=float).reshape(-1)
        t2 = np.asarray(t2_ns, dtype=float).reshape(-1)
        if t1.size != t2.size or t1.size == 0:
            raise ValueError("timestamp columns must be non-empty and equal length")
        delays = t2 - t1
        lo = int(np.floor(delays.min() / bin_width_ns + 0.5))
        hi = int(np.floor(delays.max() / bin_width_ns + 0.5))
        idx = np.floor(delays / bin_width_ns + 0.5).astype(int) - lo
        counts = np.bincount(idx, minlength=hi - lo + 1)
        return cls(
            bin_width_ns=bin_width_ns,
            counts=counts,
            repetition_period_ns=repetition_period_ns,
            zero_delay_bin=-lo,
        )

    @classmethod
    def from_csv(
        cls,
        path,
        repetition_period_ns: float,
        bin_width_ns: float = DEFAULT_BIN_NS,
    ) -> "CoincidenceHistogram":
        """Load either raw timestamp pairs or a pre-binned histogram.

        The header decides: ``t1_ns,t2_ns`` gives event pairs to bin,
        ``delay_ns,counts`` is taken as already binned on a uniform grid.
        """
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows:
            raise ValueError("%s: empty histogram file" % path)
        header = [c.strip() for c in rows[0]]
        body = np.array([[float(v) for v in row] for row in rows[1:] if row])
        if body.ndim != 2 or body.shape[1] != 2:
            raise ValueError("%s: expected two data columns" % path)
        if header == ["t1_ns", "t2_ns"]:
            return cls.from_timestamps(
                body[:, 0], body[:, 1], repetition_period_ns, bin_width_ns
            )
        if header == ["delay_ns", "counts"]:
            delays = body[:, 0]
            steps = np.diff(delays)
            if delays.size < 2 or np.any(steps <= 0):
                raise ValueError("%s: delays must increase" % path)
            width = float(steps[0])
            if np.max(np.abs(steps - width)) > 1e-9 * width:
                raise ValueError("%s: delay grid must be uniform" % path)
            zero_bin = int(np.argmin(np.abs(delays)))
            if abs(delays[zero_bin]) > width / 2:
                raise ValueError("%s: no bin covers zero delay" % path)
            return cls(
                bin_width_ns=width,
                counts=body[:, 1],
                repetition_period_ns=repetition_period_ns,
                zero_delay_bin=zero_bin,
            )
        raise ValueError(
            "%s: header must be t1_ns,t2_ns or delay_ns,counts" % path
        )

    def delays(self) -> np.ndarray:
        """Bin-center delays in ns."""
        return (np.arange(self.counts.size) - self.zero_delay_bin) * self.bin_width_ns

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("delay_ns,counts\n")
            for d, c in zip(self.delays(), self.counts):
                fh.write("%.12g,%d\n" % (d, c))

    def same_binning(self, other: "CoincidenceHistogram") -> bool:
        return (
            abs(self.bin_width_ns - other.bin_width_ns) <= 1e-12
            and abs(self.repetition_period_ns - other.repetition_period_ns) <= 1e-9
        )


def _peak_area(hist: CoincidenceHistogram, center_ns: float, window_ns: float) -> float:
    d = hist.delays()
    mask = np.abs(d - center_ns) <= window_ns + 1e-12
    return float(hist.counts[mask].sum())


def peak_areas(
    hist: CoincidenceHistogram, window_ns: float | None = None
) -> tuple[float, np.ndarray]:
    """Integrate the zero-delay peak and every fully covered side peak.

    Peaks are assumed at integer multiples of the repetition period; each
    is integrated over +-window_ns (default a quarter period).  Returns
    (zero_area, side_areas).
    """
    period = hist.repetition_period_ns
    if window_ns is None:
        window_ns = period / 4.0
    if not 0 < window_ns < period / 2.0:
        raise ValueError("window must lie in (0, repetition_period/2)")
    d = hist.delays()
    lo, hi = d[0], d[-1]
    sides = []
    k = 1
    while True:
        grew = False
        for center in (k * period, -k * period):
            if lo <= center - window_ns and center + window_ns <= hi:
                sides.append(_peak_area(hist, center, window_ns))
                grew = True
        if not grew:
            break
        k += 1
    if len(sides) < 2:
        raise ValueError("histogram must cover at least two side peaks")
    return _peak_area(hist, 0.0, window_ns), np.array(sides)


def g2_zero(hist: CoincidenceHistogram, window_ns: float | None = None) -> float:
    """Zero-delay peak area over the mean side-peak area."""
    if hist.counts.sum() == 0:
        raise ValueError("empty histogram")
    zero, sides = peak_areas(hist, window_ns)
    mean_side = float(sides.mean())
    if mean_side <= 0:
        raise ValueError("side peaks carry no counts")
    return zero / mean_side


def v_raw_from_areas(area_parallel: float, area_perpendicular: float) -> float:
    """Raw two-photon interference visibility 1 - A_par / A_perp."""
    if area_perpendicular <= 0:
        raise ValueError("perpendicular zero-delay area must be positive")
    if area_parallel < 0:
        raise ValueError("areas must be non-negative")
    return 1.0 - area_parallel / area_perpendicular


def v_raw(
    hist_parallel: CoincidenceHistogram,
    hist_perpendicular: CoincidenceHistogram,
    window_ns: float | None = None,
) -> float:
    """Raw visibility from co- and cross-polarized interference histograms."""
    if not hist_parallel.same_binning(hist_perpendicular):
        raise ValueError("histogram pair must share binning")
    period = hist_parallel.repetition_period_ns
    if window_ns is None:
        window_ns = period / 4.0
    if not 0 < window_ns < period / 2.0:
        raise ValueError("window must lie in (0, repetition_period/2)")
    a_par = _peak_area(hist_parallel, 0.0, window_ns)
    a_perp = _peak_area(hist_perpendicular, 0.0, window_ns)
    return v_raw_from_areas(a_par, a_perp)


@dataclass(frozen=True)
class HomSetup:
    """Interferometer imperfections entering the visibility correction.

    epsilon is one minus the classical interference visibility of the
    setup; g2_zero is the source's residual multi-photon component.
    """

    reflectance: float
    transmittance: float
    epsilon: float
    g2_zero: float

    def __post_init__(self):
        if not (0.0 < self.reflectance < 1.0 and 0.0 < self.transmittance < 1.0):
            raise ValueError("beamsplitter R and T must lie in (0, 1)")
        if abs(self.reflectance + self.transmittance - 1.0) > BALANCE_TOL:
            raise ValueError("beamsplitter must satisfy R + T = 1")
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError("epsilon must lie in [0, 1)")
        if self.g2_zero < 0.0:
            raise ValueError("g2_zero must be non-negative")


def corrected_visibility(v_raw: float, setup: HomSetup, use_exact: bool = True) -> float:
    """Photon indistinguishability corrected for setup imperfections.

    V = V_raw * (1 + 2 g2) * B / (1 - epsilon)^2 where the beamsplitter
    imbalance factor B is (R^2 + T^2) / (2 R T) exactly, or its
    near-balanced expansion 1 + 2 (R - T)^2 when use_exact is false.
    The two agree to fourth order in R - T.
    """
    r, t = setup.reflectance, setup.transmittance
    if use_exact:
        balance = (r * r + t * t) / (2.0 * r * t)
    else:
        balance = 1.0 + 2.0 * (r - t) ** 2
    return v_raw * (1.0 + 2.0 * setup.g2_zero) * balance / (1.0 - setup.epsilon) ** 2


def approx_visibility(v_raw: float, g2: float) -> float:
    """Multi-photon-only correction (1 + 2 g2) * V_raw."""
    if g2 < 0:
        raise ValueError("g2 must be non-negative")
    return (1.0 + 2.0 * g2) * v_raw


# ---------------------------------------------------------------------------
# detector calibration and system efficiency


@dataclass(frozen=True)
class DetectorModel:
    """Click detector with a rate-dependent undercounting correction.

    The correction factor is 1 up to linear_rate_hz and grows
    quadratically in (rate - linear_rate_hz) so that it passes through
    saturation_factor at saturation_rate_hz.
    """

    efficiency: float
    efficiency_uncertainty: float = 0.0
    linear_rate_hz: float = 0.2e6
    saturation_rate_hz: float = 25.0e6
    saturation_factor: float = 3.32

    def __post_init__(self):
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError("efficiency must lie in (0, 1]")
        if self.efficiency_uncertainty < 0.0:
            raise ValueError("efficiency uncertainty must be non-negative")
        if not 0.0 < self.linear_rate_hz < self.saturation_rate_hz:
            raise ValueError("anchor rates must be ordered and positive")
        if self.saturation_factor < 1.0:
            raise ValueError("saturation factor must be at least 1")


def detector_correction(rate_hz: float, model: DetectorModel) -> float:
    """Undercounting correction factor at the given detected rate."""
    if rate_hz < 0:
        raise ValueError("rate must be non-negative")
    if rate_hz <= model.linear_rate_hz:
        return 1.0
    if rate_hz > model.saturation_rate_hz:
        warnings.warn(
            "detector correction extrapolated beyond %.3g Hz"
            % model.saturation_rate_hz,
            ExtrapolationWarning,
            stacklevel=2,
        )
    span = model.saturation_rate_hz - model.linear_rate_hz
    x = (rate_hz - model.linear_rate_hz) / span
    return 1.0 + (model.saturation_factor - 1.0) * x * x


def optical_frequency_hz(wavelength_nm: float) -> float:
    if wavelength_nm <= 0:
        raise ValueError("wavelength must be positive")
    return C_M_S / (wavelength_nm * 1e-9)


def photon_flux(power_w: float, frequency_hz: float) -> float:
    """Photons per second in a beam of the given power, P / (h nu)."""
    if power_w <= 0 or frequency_hz <= 0:
        raise ValueError("power and frequency must be positive")
    return power_w / (H_PLANCK * frequency_hz)


@dataclass(frozen=True)
class SystemEfficiency:
    """Per-pulse photon probability at the measurement point."""

    value: float
    uncertainty: float
    detector_factor: float


def system_efficiency(
    count_rate_hz: float,
    rep_rate_hz: float,
    attenuation: float,
    detector: DetectorModel,
) -> SystemEfficiency:
    """Detected rate -> probability of a photon per excitation pulse.

    Sigma = rate * correction(rate) * attenuation / (efficiency * rep rate);
    the detector efficiency uncertainty propagates linearly.
    """
    if count_rate_hz < 0:
        raise ValueError("count rate must be non-negative")
    if rep_rate_hz <= 0 or attenuation <= 0:
        raise ValueError("repetition rate and attenuation must be positive")
    factor = detector_correction(count_rate_hz, detector)
    value = count_rate_hz * factor * attenuation / (detector.efficiency * rep_rate_hz)
    if value > 1.0:
        raise ValueError(
            "inferred efficiency %.3f exceeds 1; inputs are inconsistent" % value
        )
    uncertainty = value * detector.efficiency_uncertainty / detector.efficiency
    return SystemEfficiency(value=value, uncertainty=uncertainty, detector_factor=factor)


# ---------------------------------------------------------------------------
# synthetic histograms for closing the analysis loop


def _peak_shape(delays: np.ndarray, center: float, width_ns: float) -> np.ndarray:
    return np.exp(-np.abs(delays - center) / width_ns)


def synthetic_histogram(
    zero_scale: float,
    repetition_period_ns: float = 13.1,
    n_side_pairs: int = 4,
    bin_width_ns: float = DEFAULT_BIN_NS,
    peak_width_ns: float = 0.4,
    side_area: float = 4.0e4,
) -> CoincidenceHistogram:
    """Ideal pulsed coincidence histogram with a scaled zero-delay peak.

    Side peaks carry side_area counts each; the zero peak carries
    zero_scale times that.  Counts are rounded, so side_area should be
    large compared with the number of bins per peak.
    """
    if zero_scale < 0:
        raise ValueError("zero_scale must be non-negative")
    if n_side_pairs < 1:
        raise ValueError("need at least one side peak pair")
    half_span = (n_side_pairs + 0.5) * repetition_period_ns
    n_half = int(np.ceil(half_span / bin_width_ns))
    delays = np.arange(-n_half, n_half + 1) * bin_width_ns
    shape = _peak_shape(delays, 0.0, peak_width_ns)
    unit = shape.sum()
    profile = zero_scale * side_area / unit * shape
    for k in range(1, n_side_pairs + 1):
        for center in (k * repetition_period_ns, -k * repetition_period_ns):
            profile = profile + side_area / unit * _peak_shape(delays, center, peak_width_ns)
    return CoincidenceHistogram(
        bin_width_ns=bin_width_ns,
        counts=np.round(profile).astype(np.int64),
        repetition_period_ns=repetition_period_ns,
        zero_delay_bin=n_half,
    )


def synthetic_hom_pair(
    v_raw_target: float,
    repetition_period_ns: float = 13.1,
    **kwargs,
) -> tuple[CoincidenceHistogram, CoincidenceHistogram]:
    """Co- and cross-polarized histograms with a prescribed raw visibility."""
    if not 0.0 <= v_raw_target <= 1.0:
        raise ValueError("raw visibility must lie in [0, 1]")
    parallel = synthetic_histogram(
        1.0 - v_raw_target, repetition_period_ns=repetition_period_ns, **kwargs
    )
    perpendicular = synthetic_histogram(
        1.0, repetition_period_ns=repetition_period_ns, **kwargs
    )
    return parallel, perpendicular
