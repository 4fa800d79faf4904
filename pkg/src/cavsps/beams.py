"""Gaussian mode geometry: waist fitting, numerical aperture, fibre matching.

The fundamental mode amplitude is

    |E(r, z)| = E0 (w0 / w(z)) exp(-r^2 / w(z)^2)
    w(z)^2    = w0^2 (1 + (z / z_R)^2),   z_R = n pi w0^2 / lambda0

with transverse radius r and axial coordinate z in um, vacuum wavelength in
nm and the medium refractive index n.  The far-field divergence gives
NA = lambda0 / (pi w0), and mode matching to a fibre of mode-field radius
w1 wants a lens of focal length f_fibre = f_obj * w1 / w0.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares


def rayleigh_range_um(waist_um: float, wavelength_nm: float, medium_index: float) -> float:
    return medium_index * np.pi * waist_um**2 / (wavelength_nm * 1e-3)


def beam_radius_um(z_um, waist_um: float, wavelength_nm: float, medium_index: float):
    z_r = rayleigh_range_um(waist_um, wavelength_nm, medium_index)
    z = np.asarray(z_um, dtype=float)
    return waist_um * np.sqrt(1.0 + (z / z_r) ** 2)


def gaussian_field(r_um, z_um, waist_um, amplitude, wavelength_nm, medium_index):
    w = beam_radius_um(z_um, waist_um, wavelength_nm, medium_index)
    r = np.asarray(r_um, dtype=float)
    return amplitude * (waist_um / w) * np.exp(-(r * r) / (w * w))


@dataclass(frozen=True)
class GaussianBeamFit:
    waist_um: float
    amplitude: float
    rms_residual: float
    rayleigh_um: float


def fit_gaussian_mode(
    r_um,
    z_um,
    magnitude,
    wavelength_nm: float,
    medium_index: float,
) -> GaussianBeamFit:
    """Fit (w0, E0) to sampled field magnitudes on an (r, z) point set.

    The axial span must cover at least two Rayleigh ranges of the fitted
    waist, otherwise the waist is not constrained by the divergence and the
    fit is rejected.  A field with no transverse structure is rejected too.
    """
    r = np.asarray(r_um, dtype=float).reshape(-1)
    z = np.asarray(z_um, dtype=float).reshape(-1)
    e = np.asarray(magnitude, dtype=float).reshape(-1)
    if not (r.size == z.size == e.size) or r.size < 8:
        raise ValueError("need matching r, z, magnitude arrays with >= 8 samples")
    if e.min() < 0:
        raise ValueError("magnitudes must be non-negative")
    peak = e.max()
    if peak <= 0 or np.ptp(e) < 1e-12 * peak:
        raise ValueError("field has no transverse structure to fit")

    # moment-based start: transverse second moment near the most confined slice
    weights = e * e
    r2 = float((weights * r * r).sum() / weights.sum())
    w0_start = max(np.sqrt(2.0 * r2), 1e-3)
    x0 = np.array([w0_start, peak])

    def residuals(x):
        w0, e0 = x
        model = gaussian_field(r, z, w0, e0, wavelength_nm, medium_index)
        return model - e

    sol = least_squares(residuals, x0, bounds=([1e-6, 0.0], [np.inf, np.inf]))
    if not sol.success:
        raise RuntimeError("gaussian mode fit did not converge: %s" % sol.message)
    w0, e0 = sol.x
    z_r = rayleigh_range_um(w0, wavelength_nm, medium_index)
    if (z.max() - z.min()) < 2.0 * z_r:
        raise ValueError(
            "axial span %.3g um covers less than two Rayleigh ranges (z_R = %.3g um)"
            % (z.max() - z.min(), z_r)
        )
    rms = float(np.sqrt(np.mean(sol.fun**2)))
    return GaussianBeamFit(
        waist_um=float(w0), amplitude=float(e0), rms_residual=rms, rayleigh_um=float(z_r)
    )


def numerical_aperture(waist_um: float, wavelength_nm: float) -> float:
    """Far-field NA of a Gaussian beam with the given vacuum-side waist."""
    if waist_um <= 0 or wavelength_nm <= 0:
        raise ValueError("need positive waist and wavelength")
    return (wavelength_nm * 1e-3) / (np.pi * waist_um)


def fiber_matching_focal_length(
    objective_focal_mm: float, fiber_mode_field_um: float, waist_um: float
) -> float:
    """Focal length that images the source waist onto the fibre mode field."""
    if min(objective_focal_mm, fiber_mode_field_um, waist_um) <= 0:
        raise ValueError("all lengths must be positive")
    return objective_focal_mm * fiber_mode_field_um / waist_um
