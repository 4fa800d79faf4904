"""Command-line front end.

Every command reads one INI-style config file (section name = command
name), writes its outputs plus a manifest JSON into --out, and exits 0
on success, 2 on a configuration problem, 3 on a numerical failure.

The manifest records the artifact version, the command, the seed, the
fully resolved parameter values and the sha256 digest of every data
file that was read.  Passing a manifest as --config re-runs the command
with exactly those parameters, which reproduces the outputs byte for
byte; worker count and output directory deliberately stay out of the
manifest because they must not influence results.

Any config key can be overridden from the environment as
CAVSPS_<SECTION>_<KEY> (dashes spelled as underscores); overrides apply
to INI configs only, a manifest is replayed untouched.  Float inputs
are normalised to 9 significant digits on ingestion and all float
output is printed the same way, so determinism is checkable by diff.
"""

import argparse
import configparser
import hashlib
import json
import os
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import __version__
from .beams import fiber_matching_focal_length, fit_gaussian_mode, numerical_aperture
from .counting import (
    CoincidenceHistogram,
    DetectorModel,
    ExtrapolationWarning,
    HomSetup,
    approx_visibility,
    corrected_visibility,
    g2_zero,
    optical_frequency_hz,
    photon_flux,
    system_efficiency,
    v_raw,
    v_raw_from_areas,
)
from .metrics import CqedParams, EfficiencyBudget, conversion_efficiency, optimal_kappa
from .rabi import TRUNCATION_TOL, ExcitationSettings, rabi_map, truncation_shift
from .tmm import StackParseError, cavity_q, parse_stack_file, stack_reflectivity

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICS = 3
ENV_PREFIX = "CAVSPS"
FLOAT_FMT = "%.9g"


class ConfigError(Exception):
    """Bad or missing configuration; exit code 2."""


class NumericsError(Exception):
    """Computation failed or did not converge; exit code 3."""


def _round9(x: float) -> float:
    return float(FLOAT_FMT % float(x))


@dataclass(frozen=True)
class Key:
    kind: str  # float | int | bool | str | path
    required: bool = False
    default: object = None
    choices: tuple = ()


SCHEMAS = {
    "metrics": {
        "g_ghz": Key("float", required=True),
        "gamma_ghz": Key("float", required=True),
        "kappa_min_ghz": Key("float", default=1.0),
        "kappa_max_ghz": Key("float", default=100.0),
        "kappa_points": Key("int", default=400),
    },
    "drive": {
        "g_ghz": Key("float", default=4.16),
        "kappa_ghz": Key("float", default=25.0),
        "filter_center_ghz": Key("float", default=-50.0),
        "filter_kappa_ghz": Key("float", default=25.0),
        "pulse_fwhm_ps": Key("float", default=5.2),
        "phonon_coupling_fs_per_k": Key("float", default=32.0),
        "temperature_k": Key("float", default=4.2),
        "gamma_free_ghz": Key("float", default=0.0),
        "fock_cutoff": Key("int", default=2),
        "kernel": Key("str", default="single-pole", choices=("single-pole", "cosine")),
        "detuning_min_ghz": Key("float", required=True),
        "detuning_max_ghz": Key("float", required=True),
        "detuning_points": Key("int", required=True),
        "area_min": Key("float", required=True),
        "area_max": Key("float", required=True),
        "area_points": Key("int", required=True),
        "truncation_check": Key("bool", default=True),
    },
    "stack": {
        "stack_file": Key("path", required=True),
        "lambda_min_nm": Key("float", required=True),
        "lambda_max_nm": Key("float", required=True),
        "points": Key("int", default=801),
        "resonance_scan": Key("bool", default=False),
    },
    "mode-fit": {
        "samples_file": Key("path", required=True),
        "wavelength_nm": Key("float", required=True),
        "medium_index": Key("float", required=True),
        "objective_focal_mm": Key("float"),
        "fiber_waist_um": Key("float"),
    },
    "hom": {
        "parallel_file": Key("path"),
        "perpendicular_file": Key("path"),
        "g2_file": Key("path"),
        "area_parallel": Key("float"),
        "area_perpendicular": Key("float"),
        "g2_zero": Key("float"),
        "repetition_period_ns": Key("float", default=13.1),
        "bin_width_ns": Key("float", default=0.1),
        "window_ns": Key("float"),
        "reflectance": Key("float", default=0.5),
        "transmittance": Key("float", default=0.5),
        "epsilon": Key("float", default=0.0),
        "epsilon_uncertainty": Key("float", default=0.0),
        "count_rate_hz": Key("float"),
        "rep_rate_hz": Key("float"),
        "attenuation": Key("float", default=1.0),
        "detector_efficiency": Key("float"),
        "detector_efficiency_uncertainty": Key("float", default=0.0),
    },
    "budget": {
        "preparation": Key("float", required=True),
        "mode_coupling": Key("float", required=True),
        "extraction": Key("float", required=True),
        "optics": Key("float", required=True),
    },
    "calibrate": {
        "count_rate_hz": Key("float", required=True),
        "rep_rate_hz": Key("float", required=True),
        "attenuation": Key("float", default=1.0),
        "detector_efficiency": Key("float", required=True),
        "detector_efficiency_uncertainty": Key("float", default=0.0),
        "power_w": Key("float"),
        "wavelength_nm": Key("float"),
    },
}


def _convert(command: str, name: str, raw, key: Key, base_dir: str):
    if raw is None:
        return None
    try:
        if key.kind == "float":
            val = _round9(float(raw))
        elif key.kind == "int":
            if isinstance(raw, float) and raw != int(raw):
                raise ValueError("not an integer")
            val = int(raw)
        elif key.kind == "bool":
            if isinstance(raw, bool):
                val = raw
            else:
                low = str(raw).strip().lower()
                if low in ("1", "true", "yes", "on"):
                    val = True
                elif low in ("0", "false", "no", "off"):
                    val = False
                else:
                    raise ValueError("not a boolean")
        else:
            val = str(raw).strip()
            if key.kind == "path":
                val = os.path.abspath(os.path.join(base_dir, val))
    except (TypeError, ValueError):
        raise ConfigError(
            "[%s] %s: cannot read %r as %s" % (command, name, raw, key.kind)
        ) from None
    if key.choices and val not in key.choices:
        raise ConfigError(
            "[%s] %s must be one of %s, got %r"
            % (command, name, ", ".join(key.choices), val)
        )
    return val


def _resolve(command: str, raw_items: dict, base_dir: str) -> dict:
    schema = SCHEMAS[command]
    unknown = sorted(set(raw_items) - set(schema))
    if unknown:
        raise ConfigError(
            "[%s] unknown key%s: %s"
            % (command, "s" if len(unknown) > 1 else "", ", ".join(unknown))
        )
    cfg = {}
    missing = []
    for name, key in schema.items():
        if name in raw_items and raw_items[name] is not None:
            cfg[name] = _convert(command, name, raw_items[name], key, base_dir)
        elif key.required:
            missing.append(name)
        else:
            cfg[name] = key.default
    if missing:
        raise ConfigError(
            "[%s] missing required key%s: %s"
            % (command, "s" if len(missing) > 1 else "", ", ".join(sorted(missing)))
        )
    return cfg


def load_config(command: str, config_path: str, seed_flag):
    """Resolve the (config, seed) pair from an INI file or a manifest."""
    try:
        with open(config_path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("cannot read config: %s" % exc) from None
    base_dir = os.path.dirname(os.path.abspath(config_path))

    if text.lstrip().startswith("{"):
        try:
            manifest = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("%s: invalid manifest JSON: %s" % (config_path, exc)) from None
        recorded = manifest.get("command")
        if recorded != command:
            raise ConfigError(
                "manifest was written by command %r, not %r" % (recorded, command)
            )
        raw_items = manifest.get("config", {})
        if not isinstance(raw_items, dict):
            raise ConfigError("manifest config must be a table")
        seed = seed_flag if seed_flag is not None else int(manifest.get("seed", 0))
        return _resolve(command, raw_items, base_dir), seed

    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text, source=str(config_path))
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    if not parser.has_section(command):
        raise ConfigError("%s: missing section [%s]" % (config_path, command))
    raw_items = dict(parser[command])
    for name in SCHEMAS[command]:
        env_name = "_".join(
            [ENV_PREFIX, command.replace("-", "_").upper(), name.upper()]
        )
        if env_name in os.environ:
            raw_items[name] = os.environ[env_name]
    seed = seed_flag if seed_flag is not None else 0
    return _resolve(command, raw_items, base_dir), seed


# ---------------------------------------------------------------------------
# output helpers


def _round_floats(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return _round9(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(_round_floats(payload), fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _write_manifest(out_dir, command, seed, cfg, input_files) -> None:
    payload = {
        "artifact_version": __version__,
        "command": command,
        "seed": seed,
        "config": cfg,
        "input_digests": {p: _digest(p) for p in input_files},
    }
    _write_json(os.path.join(out_dir, command + "_manifest.json"), payload)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


# ---------------------------------------------------------------------------
# commands


def cmd_metrics(cfg, out_dir, seed, workers):
    _require(cfg["g_ghz"] > 0 and cfg["gamma_ghz"] > 0, "[metrics] g_ghz and gamma_ghz must be positive")
    _require(cfg["kappa_min_ghz"] > 0, "[metrics] kappa_min_ghz must be positive")
    _require(
        cfg["kappa_max_ghz"] > cfg["kappa_min_ghz"] and cfg["kappa_points"] >= 2,
        "[metrics] empty kappa range",
    )
    g, gamma = cfg["g_ghz"], cfg["gamma_ghz"]
    kappas = np.linspace(cfg["kappa_min_ghz"], cfg["kappa_max_ghz"], cfg["kappa_points"])
    etas = np.array(
        [conversion_efficiency(CqedParams(g=g, kappa=float(k), gamma=gamma)) for k in kappas]
    )
    with open(os.path.join(out_dir, "efficiency_curve.csv"), "w", newline="\n") as fh:
        fh.write("kappa_ghz,eta\n")
        for k, e in zip(kappas, etas):
            fh.write((FLOAT_FMT + "," + FLOAT_FMT + "\n") % (k, e))
    k_star, eta_star = optimal_kappa(g, gamma)
    i = int(np.argmax(etas))
    report = {
        "g_ghz": g,
        "gamma_ghz": gamma,
        "kappa_star_ghz": k_star,
        "eta_star": eta_star,
        "curve_peak": {"kappa_ghz": float(kappas[i]), "eta": float(etas[i])},
    }
    _write_json(os.path.join(out_dir, "metrics_report.json"), report)
    _write_manifest(out_dir, "metrics", seed, cfg, [])


def cmd_drive(cfg, out_dir, seed, workers):
    _require(cfg["detuning_points"] >= 1 and cfg["area_points"] >= 1, "[drive] grid needs at least one point per axis")
    _require(cfg["fock_cutoff"] >= 1, "[drive] fock_cutoff must be at least 1")
    try:
        settings = ExcitationSettings(
            g=cfg["g_ghz"],
            kappa_h=cfg["kappa_ghz"],
            filter_delta_c=cfg["filter_center_ghz"],
            filter_kappa=cfg["filter_kappa_ghz"],
            t_p=cfg["pulse_fwhm_ps"],
            phonon_coupling=cfg["phonon_coupling_fs_per_k"],
            temperature=cfg["temperature_k"],
            gamma_free=cfg["gamma_free_ghz"],
            fock_cutoff=cfg["fock_cutoff"],
            kernel=cfg["kernel"],
        )
        detunings = np.linspace(
            cfg["detuning_min_ghz"], cfg["detuning_max_ghz"], cfg["detuning_points"]
        )
        amplitudes = np.linspace(cfg["area_min"], cfg["area_max"], cfg["area_points"])
        grid = rabi_map(settings, detunings, amplitudes, workers=workers)
    except ValueError as exc:
        raise ConfigError("[drive] %s" % exc) from None
    grid.to_csv(os.path.join(out_dir, "rabi_map.csv"), fmt=FLOAT_FMT)
    try:
        peak_d, peak_a, peak_p = grid.peak()
    except ValueError as exc:
        raise NumericsError(str(exc)) from None
    report = {
        "grid": {
            "detunings_ghz": [float(d) for d in detunings],
            "area_scales": [float(a) for a in amplitudes],
        },
        "peak": {
            "detuning_ghz": peak_d,
            "area_scale": peak_a,
            "emission_probability": peak_p,
        },
        "cell_errors": [
            {"detuning_index": i, "area_index": j, "message": msg}
            for i, j, msg in grid.errors
        ],
    }
    if cfg["truncation_check"]:
        _, _, shift = truncation_shift(settings, peak_d, peak_a)
        report["truncation"] = {
            "fock_cutoff": settings.fock_cutoff,
            "peak_emission_shift": shift,
        }
        if shift >= TRUNCATION_TOL:
            raise NumericsError(
                "Fock truncation not converged at the map peak: shift %.3g" % shift
            )
    _write_json(os.path.join(out_dir, "drive_report.json"), report)
    _write_manifest(out_dir, "drive", seed, cfg, [])


def cmd_stack(cfg, out_dir, seed, workers):
    _require(
        cfg["lambda_max_nm"] > cfg["lambda_min_nm"] > 0 and cfg["points"] >= 2,
        "[stack] empty wavelength range",
    )
    try:
        stack = parse_stack_file(cfg["stack_file"])
    except OSError as exc:
        raise ConfigError("cannot read stack file: %s" % exc) from None
    except StackParseError as exc:
        raise ConfigError(str(exc)) from None
    wavelengths = np.linspace(cfg["lambda_min_nm"], cfg["lambda_max_nm"], cfg["points"])
    result = stack_reflectivity(stack, wavelengths)
    result.to_csv(os.path.join(out_dir, "reflectivity.csv"), fmt=FLOAT_FMT)
    report = {
        "stack_file": cfg["stack_file"],
        "n_layers": len(stack.layers),
        "wavelength_range_nm": [float(wavelengths[0]), float(wavelengths[-1])],
    }
    if cfg["resonance_scan"]:
        try:
            res = cavity_q(stack, cfg["lambda_min_nm"], cfg["lambda_max_nm"])
        except ValueError as exc:
            raise NumericsError("resonance scan failed: %s" % exc) from None
        report["resonance"] = {
            "wavelength_nm": res.wavelength_nm,
            "fwhm_nm": res.fwhm_nm,
            "q": res.q,
            "kappa_ghz": res.kappa_ghz,
            "peak_transmittance": res.peak_transmittance,
        }
    _write_json(os.path.join(out_dir, "stack_report.json"), report)
    _write_manifest(out_dir, "stack", seed, cfg, [cfg["stack_file"]])


def cmd_mode_fit(cfg, out_dir, seed, workers):
    try:
        data = np.loadtxt(cfg["samples_file"], delimiter=",", skiprows=1, ndmin=2)
    except OSError as exc:
        raise ConfigError("cannot read samples file: %s" % exc) from None
    except ValueError as exc:
        raise ConfigError("malformed samples file: %s" % exc) from None
    if data.shape[1] != 3:
        raise ConfigError("samples file needs columns r_um,z_um,magnitude")
    try:
        fit = fit_gaussian_mode(
            data[:, 0], data[:, 1], data[:, 2], cfg["wavelength_nm"], cfg["medium_index"]
        )
    except ValueError as exc:
        raise NumericsError("mode fit failed: %s" % exc) from None
    report = {
        "waist_um": fit.waist_um,
        "amplitude": fit.amplitude,
        "rms_residual": fit.rms_residual,
        "rayleigh_range_um": fit.rayleigh_um,
        "numerical_aperture": numerical_aperture(fit.waist_um, cfg["wavelength_nm"]),
    }
    if cfg["objective_focal_mm"] is not None and cfg["fiber_waist_um"] is not None:
        report["fiber_focal_mm"] = fiber_matching_focal_length(
            cfg["objective_focal_mm"], cfg["fiber_waist_um"], fit.waist_um
        )
    _write_json(os.path.join(out_dir, "mode-fit_report.json"), report)
    _write_manifest(out_dir, "mode-fit", seed, cfg, [cfg["samples_file"]])


def cmd_hom(cfg, out_dir, seed, workers):
    period = cfg["repetition_period_ns"]
    window = cfg["window_ns"]
    if window is not None:
        _require(0 < window < period / 2, "[hom] window_ns must lie in (0, repetition_period/2)")
    inputs = []
    have_files = cfg["parallel_file"] is not None and cfg["perpendicular_file"] is not None
    have_areas = cfg["area_parallel"] is not None and cfg["area_perpendicular"] is not None
    try:
        if have_files:
            parallel = CoincidenceHistogram.from_csv(
                cfg["parallel_file"], period, cfg["bin_width_ns"]
            )
            perpendicular = CoincidenceHistogram.from_csv(
                cfg["perpendicular_file"], period, cfg["bin_width_ns"]
            )
            inputs += [cfg["parallel_file"], cfg["perpendicular_file"]]
            if not parallel.same_binning(perpendicular):
                raise ConfigError("[hom] histogram pair does not share binning")
            raw = v_raw(parallel, perpendicular, window)
        elif have_areas:
            raw = v_raw_from_areas(cfg["area_parallel"], cfg["area_perpendicular"])
        else:
            raise ConfigError(
                "[hom] give parallel_file and perpendicular_file, or "
                "area_parallel and area_perpendicular"
            )
        if cfg["g2_file"] is not None:
            g2 = g2_zero(
                CoincidenceHistogram.from_csv(cfg["g2_file"], period, cfg["bin_width_ns"]),
                window,
            )
            inputs.append(cfg["g2_file"])
        elif cfg["g2_zero"] is not None:
            g2 = cfg["g2_zero"]
        else:
            raise ConfigError("[hom] give g2_zero or g2_file")
    except OSError as exc:
        raise ConfigError("cannot read histogram: %s" % exc) from None
    except ValueError as exc:
        raise ConfigError("[hom] %s" % exc) from None
    try:
        setup = HomSetup(
            reflectance=cfg["reflectance"],
            transmittance=cfg["transmittance"],
            epsilon=cfg["epsilon"],
            g2_zero=g2,
        )
    except ValueError as exc:
        raise ConfigError("[hom] %s" % exc) from None
    v_exact = corrected_visibility(raw, setup, use_exact=True)
    v_near = corrected_visibility(raw, setup, use_exact=False)
    # epsilon enters as 1/(1-eps)^2, so dV/deps = 2 V / (1 - eps)
    eps_unc = 2.0 * v_exact * cfg["epsilon_uncertainty"] / (1.0 - cfg["epsilon"])
    report = {
        "g2_zero": g2,
        "v_raw": raw,
        "v_corrected_exact": v_exact,
        "v_corrected_near_balanced": v_near,
        "v_approx": approx_visibility(raw, g2),
        "uncertainties": {"v_corrected_exact": eps_unc},
    }
    have_rate = all(
        cfg[k] is not None for k in ("count_rate_hz", "rep_rate_hz", "detector_efficiency")
    )
    if have_rate:
        try:
            detector = DetectorModel(
                efficiency=cfg["detector_efficiency"],
                efficiency_uncertainty=cfg["detector_efficiency_uncertainty"],
            )
            eff = system_efficiency(
                cfg["count_rate_hz"], cfg["rep_rate_hz"], cfg["attenuation"], detector
            )
        except ValueError as exc:
            raise ConfigError("[hom] %s" % exc) from None
        report["sigma"] = eff.value
        report["detector_factor"] = eff.detector_factor
        report["uncertainties"]["sigma"] = eff.uncertainty
    _write_json(os.path.join(out_dir, "hom_report.json"), report)
    _write_manifest(out_dir, "hom", seed, cfg, inputs)


def cmd_budget(cfg, out_dir, seed, workers):
    for name in ("preparation", "mode_coupling", "extraction", "optics"):
        if not 0.0 <= cfg[name] <= 1.0:
            raise ConfigError("[budget] %s must lie in [0, 1], got %r" % (name, cfg[name]))
    budget = EfficiencyBudget(
        preparation=cfg["preparation"],
        mode_coupling=cfg["mode_coupling"],
        extraction=cfg["extraction"],
        optics=cfg["optics"],
    )
    report = {
        "factors": budget.factors(),
        "total": budget.total(),
        "sensitivities": budget.sensitivities(),
    }
    _write_json(os.path.join(out_dir, "budget_report.json"), report)
    _write_manifest(out_dir, "budget", seed, cfg, [])


def cmd_calibrate(cfg, out_dir, seed, workers):
    try:
        detector = DetectorModel(
            efficiency=cfg["detector_efficiency"],
            efficiency_uncertainty=cfg["detector_efficiency_uncertainty"],
        )
    except ValueError as exc:
        raise ConfigError("[calibrate] %s" % exc) from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            eff = system_efficiency(
                cfg["count_rate_hz"], cfg["rep_rate_hz"], cfg["attenuation"], detector
            )
        except ValueError as exc:
            raise ConfigError("[calibrate] %s" % exc) from None
    report = {
        "count_rate_hz": cfg["count_rate_hz"],
        "detector_factor": eff.detector_factor,
        "sigma": eff.value,
        "uncertainties": {"sigma": eff.uncertainty},
        "extrapolated": any(isinstance(w.message, ExtrapolationWarning) for w in caught),
    }
    if cfg["power_w"] is not None and cfg["wavelength_nm"] is not None:
        report["photon_flux_per_s"] = photon_flux(
            cfg["power_w"], optical_frequency_hz(cfg["wavelength_nm"])
        )
    _write_json(os.path.join(out_dir, "calibrate_report.json"), report)
    _write_manifest(out_dir, "calibrate", seed, cfg, [])


COMMANDS = {
    "metrics": cmd_metrics,
    "drive": cmd_drive,
    "stack": cmd_stack,
    "mode-fit": cmd_mode_fit,
    "hom": cmd_hom,
    "budget": cmd_budget,
    "calibrate": cmd_calibrate,
}

HELP = {
    "metrics": "extraction efficiency versus cavity linewidth, with the optimum",
    "drive": "emission probability over a detuning x pulse-area grid",
    "stack": "mirror or cavity reflectivity spectrum, optional resonance scan",
    "mode-fit": "Gaussian beam fit of a sampled output mode",
    "hom": "two-photon interference visibility with corrections",
    "budget": "multiplicative efficiency budget with sensitivities",
    "calibrate": "detected count rate to per-pulse source efficiency",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavsps",
        description="Design and analysis toolkit for a cavity-coupled single-photon source.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in HELP.items():
        sp = sub.add_parser(name, help=blurb)
        sp.add_argument("--config", required=True, help="INI config or a previous run's manifest JSON")
        sp.add_argument("--out", default=".", help="output directory (created if needed)")
        sp.add_argument("--workers", type=int, default=1, help="worker processes for sweeps")
        sp.add_argument("--seed", type=int, default=None, help="random seed recorded in the manifest")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg, seed = load_config(args.command, args.config, args.seed)
        os.makedirs(args.out, exist_ok=True)
        workers = max(1, args.workers)
        COMMANDS[args.command](cfg, args.out, seed, workers)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except NumericsError as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERICS
    except (ValueError, RuntimeError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERICS
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
