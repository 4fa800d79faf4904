"""Open-system dynamics of the driven emitter coupled to one cavity mode.

The model, written in the emitter rotating frame with the cavity mode on
resonance:

    H(t)/hbar = (conj(Omega) sigma_+ + Omega sigma_-) / 2
              + g_ang (a^dag sigma_- + a sigma_+)

with collapse operators sqrt(kappa_ang) a for photon leakage, an excitation
induced dephasing term sqrt(A T / 2) |Omega(t)| sigma_z, and optionally
sqrt(gamma_ang) sigma_- for residual free-space decay.  g, kappa and gamma
enter as ordinary frequencies in GHz and are converted to angular rates
internally; Omega(t) comes as a sampled DriveEnvelope in rad/ns and is
linearly interpolated at integrator time (zero outside its grid).

The density matrix is vectorised row-major and propagated with an adaptive
embedded Runge-Kutta 4(5) pair; the Liouvillian splits into a constant part
plus three time-dependent pieces scaled by Re Omega, Im Omega and |Omega|^2,
so each right-hand side is a handful of small mat-vecs.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .pulses import DriveEnvelope
from .quantum import DensityMatrix, HilbertSpace
from .units import GHZ_PS, angular_rate

SETTLE_LEVEL = 1e-6
TRACE_TOL = 1e-7
DEFAULT_RTOL = 1e-8
DEFAULT_ATOL = 1e-12
RINGDOWN_CAP_UNITS = 50.0  # cap the free ring-down at 50 / kappa


def hamiltonian_superop(h: np.ndarray) -> np.ndarray:
    """Superoperator of -i [H, .] for row-major vectorised rho."""
    d = h.shape[0]
    idm = np.eye(d, dtype=complex)
    return -1j * (np.kron(h, idm) - np.kron(idm, h.T))


def dissipator_superop(l_op: np.ndarray) -> np.ndarray:
    """Superoperator of the Lindblad dissipator for collapse operator L."""
    d = l_op.shape[0]
    idm = np.eye(d, dtype=complex)
    ll = l_op.conj().T @ l_op
    return (
        np.kron(l_op, l_op.conj())
        - 0.5 * (np.kron(ll, idm) + np.kron(idm, ll.T))
    )


def zero_drive(t0: float = 0.0, t1: float = 1.0, n: int = 2) -> DriveEnvelope:
    """Trivial all-zero envelope for undriven decay runs."""
    return DriveEnvelope(np.linspace(t0, t1, n), np.zeros(n, dtype=complex))


@dataclass(frozen=True)
class DriveModel:
    """Driven emitter-cavity system plus its excitation envelope.

    g:                emitter-cavity coupling / 2 pi (GHz)
    kappa_h:          cavity energy decay rate / 2 pi (GHz)
    gamma_free:       residual free-space decay / 2 pi (GHz), usually 0
    phonon_coupling:  excitation-induced dephasing strength A (fs/K)
    temperature:      lattice temperature (K)
    """

    g: float
    kappa_h: float
    drive: DriveEnvelope
    space: HilbertSpace
    gamma_free: float = 0.0
    phonon_coupling: float = 0.0
    temperature: float = 0.0

    def __post_init__(self):
        for name in ("g", "kappa_h", "gamma_free", "phonon_coupling", "temperature"):
            if getattr(self, name) < 0:
                raise ValueError("%s must be non-negative" % name)


class _Liouvillian:
    """Precomputed superoperator pieces for one DriveModel."""

    def __init__(self, model: DriveModel):
        space = model.space
        d = space.total_dim
        a_op = space.annihilation()
        sp = space.sigma_plus()
        sm = space.sigma_minus()
        sz = space.sigma_z()

        g_ang = angular_rate(model.g)
        h_jc = g_ang * (a_op.conj().T @ sm + a_op @ sp)
        lv0 = hamiltonian_superop(h_jc)
        if model.kappa_h > 0:
            lv0 = lv0 + angular_rate(model.kappa_h) * dissipator_superop(a_op)
        if model.gamma_free > 0:
            lv0 = lv0 + angular_rate(model.gamma_free) * dissipator_superop(sm)

        self.lv0 = lv0
        self.lvx = hamiltonian_superop(0.5 * (sp + sm))
        self.lvy = hamiltonian_superop(0.5j * (sm - sp))
        self.lvp = dissipator_superop(sz)
        # A T / 2 in ps (A is fs/K)
        self.half_at_ps = 0.5 * model.phonon_coupling * model.temperature * 1e-3

        self.dim = d
        self.diag_idx = np.arange(d) * (d + 1)
        fock_dim = space.fock_dim
        self.exc_weights = (np.arange(d) // fock_dim == 0).astype(float)
        self.phot_weights = (np.arange(d) % fock_dim).astype(float)

    def occupations(self, y: np.ndarray):
        diag = y[..., self.diag_idx].real
        return diag @ self.exc_weights, diag @ self.phot_weights

    def trace(self, y: np.ndarray):
        return y[..., self.diag_idx].sum(axis=-1)


@dataclass(frozen=True)
class Trajectory:
    """Sampled expectation values along one propagation.

    times in ps; emitter_excitation = <sigma_+ sigma_->; cavity_photons =
    <a^dag a>; trace_error = |tr rho - 1|.  states holds the vectorised
    density matrices when the run was asked to keep them.
    """

    times: np.ndarray = field(repr=False)
    emitter_excitation: np.ndarray = field(repr=False)
    cavity_photons: np.ndarray = field(repr=False)
    trace_error: np.ndarray = field(repr=False)
    final_matrix: np.ndarray = field(repr=False)
    fock_cutoff: int
    states: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.trace_error.max() > TRACE_TOL:
            raise ValueError(
                "trace deviated by %g, beyond %g" % (self.trace_error.max(), TRACE_TOL)
            )
        slack = 1e-7
        if self.emitter_excitation.min() < -slack or self.emitter_excitation.max() > 1 + slack:
            raise ValueError("emitter occupation left [0, 1]")
        if self.cavity_photons.min() < -slack or self.cavity_photons.max() > self.fock_cutoff + slack:
            raise ValueError("photon number left [0, cutoff]")

    def max_trace_error(self) -> float:
        return float(self.trace_error.max())

    def to_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write("t_ps,emitter_excitation,cavity_photons,trace_error\n")
            for row in zip(self.times, self.emitter_excitation, self.cavity_photons, self.trace_error):
                fh.write("%.12g,%.12g,%.12g,%.12g\n" % row)

    def summary(self) -> dict:
        return {
            "t_start_ps": float(self.times[0]),
            "t_end_ps": float(self.times[-1]),
            "samples": int(self.times.size),
            "peak_emitter_excitation": float(self.emitter_excitation.max()),
            "peak_cavity_photons": float(self.cavity_photons.max()),
            "max_trace_error": float(self.trace_error.max()),
        }


def _drive_arrays(model: DriveModel):
    tg = model.drive.times
    w = model.drive.omega * GHZ_PS  # rad/ns -> rad/ps
    return tg, w.real.copy(), w.imag.copy(), np.abs(w)


def evolve(
    model: DriveModel,
    initial: DensityMatrix,
    t_end: float | None = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    sample_step: float = 0.2,
    drive_fn=None,
    breakpoints=None,
    store_states: bool = False,
) -> Trajectory:
    """Propagate `initial` under the model and return sampled expectations.

    Without t_end the run covers the drive grid and then free ring-down
    until both occupations fall below 1e-6, capped at 50 lifetimes of the
    slowest decay pole past the drive end.  An explicit t_end disables the
    settling logic (needed e.g. for lossless runs).  drive_fn optionally replaces envelope interpolation
    with a callable t_ps -> complex rad/ns; breakpoints lists times the
    integrator must restart at (discontinuous drives).
    """
    if initial.space != model.space:
        raise ValueError("initial state lives on a different space")
    lv = _Liouvillian(model)
    lv0, lvx, lvy, lvp = lv.lv0, lv.lvx, lv.lvy, lv.lvp
    half_at = lv.half_at_ps

    if drive_fn is None:
        tg, wre, wim, wabs = _drive_arrays(model)

        def rhs(t, y):
            out = lv0 @ y
            wr = np.interp(t, tg, wre, left=0.0, right=0.0)
            wi = np.interp(t, tg, wim, left=0.0, right=0.0)
            if wr != 0.0:
                out += wr * (lvx @ y)
            if wi != 0.0:
                out += wi * (lvy @ y)
            if half_at > 0.0:
                wm = np.interp(t, tg, wabs, left=0.0, right=0.0)
                if wm != 0.0:
                    out += (half_at * wm * wm) * (lvp @ y)
            return out

    else:

        def rhs(t, y):
            w = complex(drive_fn(t)) * GHZ_PS
            out = lv0 @ y
            if w.real != 0.0:
                out += w.real * (lvx @ y)
            if w.imag != 0.0:
                out += w.imag * (lvy @ y)
            if half_at > 0.0 and w != 0.0:
                out += (half_at * abs(w) ** 2) * (lvp @ y)
            return out

    t_start = float(model.drive.times[0])
    drive_end = float(model.drive.times[-1])
    if t_end is not None:
        spans = [(t_start, float(t_end))]
        capped = False
    else:
        if model.kappa_h <= 0:
            raise ValueError("open-ended run needs kappa_h > 0 (or pass t_end)")
        # slowest relevant pole: bare cavity decay, or the emitter funneling
        # through it at ~4g^2/kappa (+ gamma) in the weak-coupling regime
        slow = model.kappa_h
        if model.g > 0:
            slow = min(slow, 4.0 * model.g**2 / model.kappa_h + model.gamma_free)
        cap = drive_end + RINGDOWN_CAP_UNITS / (slow * GHZ_PS)
        spans = [(t_start, drive_end), (drive_end, cap)]
        capped = True

    cuts = sorted(set(float(b) for b in (breakpoints or [])))

    def settle_event(t, y):
        exc, phot = lv.occupations(y)
        return exc + phot - SETTLE_LEVEL

    settle_event.terminal = True
    settle_event.direction = -1

    times_acc = []
    y_acc = []
    y0 = initial.matrix.reshape(-1).astype(complex)
    t_cur = t_start
    for i_span, (a, b) in enumerate(spans):
        if b <= a:
            continue
        edges = [a] + [c for c in cuts if a < c < b] + [b]
        tail = capped and i_span == len(spans) - 1
        if tail:
            exc, phot = lv.occupations(y0)
            if exc + phot < SETTLE_LEVEL:
                break
        for lo, hi in zip(edges[:-1], edges[1:]):
            n_samp = max(2, int(np.ceil((hi - lo) / sample_step)) + 1)
            t_eval = np.linspace(lo, hi, n_samp)
            sol = solve_ivp(
                rhs,
                (lo, hi),
                y0,
                method="RK45",
                t_eval=t_eval,
                rtol=rtol,
                atol=atol,
                events=settle_event if tail else None,
            )
            if not sol.success:
                raise RuntimeError("propagation failed: %s" % sol.message)
            ts = sol.t
            ys = sol.y.T
            if tail and sol.status == 1 and sol.t_events[0].size:
                ts = np.append(ts, sol.t_events[0][0])
                ys = np.vstack([ys, sol.y_events[0][0]])
            if times_acc and ts.size and ts[0] == times_acc[-1][-1]:
                ts = ts[1:]
                ys = ys[1:]
            times_acc.append(ts)
            y_acc.append(ys)
            y0 = ys[-1] if ys.size else y0
            t_cur = ts[-1] if ts.size else hi
            if tail and sol.status == 1:
                break

    times = np.concatenate(times_acc)
    states = np.vstack(y_acc)
    exc, phot = lv.occupations(states)
    trace_err = np.abs(lv.trace(states) - 1.0)
    d = lv.dim
    return Trajectory(
        times=times,
        emitter_excitation=exc,
        cavity_photons=phot,
        trace_error=trace_err,
        final_matrix=states[-1].reshape(d, d).copy(),
        fock_cutoff=model.space.fock_cutoff,
        states=states.reshape(-1, d, d) if store_states else None,
    )


def emission_probability(traj: Trajectory, kappa_h: float) -> float:
    """Photon emission probability, trapezoidal integral of kappa <a^dag a>.

    kappa_h is the cavity decay rate / 2 pi in GHz; the integrand uses the
    angular rate.  Requires the trajectory to have rung down (<a^dag a>
    below 1e-6 at the last sample).
    """
    if kappa_h <= 0:
        raise ValueError("kappa_h must be positive")
    if traj.cavity_photons[-1] >= SETTLE_LEVEL:
        raise ValueError(
            "trajectory not decayed: <a^dag a> ends at %g" % traj.cavity_photons[-1]
        )
    return float(np.trapezoid(angular_rate(kappa_h) * traj.cavity_photons, traj.times))
