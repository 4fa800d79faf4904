"""Thin-film stack reflectivity and cavity linewidth via transfer matrices.

Normal incidence only.  Each layer contributes the standard characteristic
matrix [[cos d, i sin d / n], [i n sin d, cos d]] with d = 2 pi n t / lambda;
the stack is the ordered product from the ambient side to the substrate.
Indices may be complex (absorbing); for lossless stacks R + T = 1 to
rounding.  Wavelengths and thicknesses are in nm.
"""

import math
from dataclasses import dataclass, field

import numpy as np

# speed of light in nm * GHz
C_NM_GHZ = 2.99792458e8

# quarter-wave indices implied by the as-grown mirror recipe: GaAs and AlAs
# quarter waves of 67.9 / 80.6 nm centred at 940 nm, and the oxide coating
# pair quoted by the mirror supplier
N_GAAS = 940.0 / (4.0 * 67.9)
N_ALAS = 940.0 / (4.0 * 80.6)
N_TANTALA = 2.09
N_SILICA = 1.48
T_GAAS = 67.9
T_ALAS = 80.6


class StackParseError(ValueError):
    pass


@dataclass(frozen=True)
class LayerStack:
    """Ordered layer list between an ambient and a substrate half-space.

    layers run from the ambient side to the substrate side as
    (refractive_index, thickness_nm) pairs; indices may be complex.
    """

    ambient: float
    layers: tuple
    substrate: complex

    def __post_init__(self):
        if not (np.isreal(self.ambient) and float(np.real(self.ambient)) > 0):
            raise ValueError("ambient index must be real and positive")
        norm = []
        for k, (n, t) in enumerate(self.layers):
            n = complex(n)
            t = float(t)
            if n.real <= 0:
                raise ValueError("layer %d has non-positive index" % k)
            if t <= 0:
                raise ValueError("layer %d has non-positive thickness" % k)
            norm.append((n, t))
        object.__setattr__(self, "layers", tuple(norm))
        object.__setattr__(self, "substrate", complex(self.substrate))
        if self.substrate.real <= 0:
            raise ValueError("substrate index must have positive real part")

    def reversed(self) -> "LayerStack":
        """Same stack illuminated from the substrate side (must be real)."""
        if self.substrate.imag != 0:
            raise ValueError("cannot illuminate through an absorbing substrate")
        return LayerStack(self.substrate.real, tuple(self.layers[::-1]), self.ambient)

    def with_layer(self, position: int, n, t) -> "LayerStack":
        layers = list(self.layers)
        layers[position] = (n, t)
        return LayerStack(self.ambient, tuple(layers), self.substrate)


@dataclass(frozen=True)
class ReflectivityResult:
    wavelengths: np.ndarray = field(repr=False)
    reflectance: np.ndarray = field(repr=False)
    transmittance: np.ndarray = field(repr=False)

    def __post_init__(self):
        if np.any(self.reflectance + self.transmittance > 1.0 + 1e-9):
            raise ValueError("R + T exceeds 1 beyond rounding")

    def to_csv(self, path, fmt: str = "%.12g") -> None:
        line = ",".join([fmt] * 3) + "\n"
        with open(path, "w", newline="\n") as fh:
            fh.write("wavelength_nm,R,T\n")
            for row in zip(self.wavelengths, self.reflectance, self.transmittance):
                fh.write(line % row)


def _amplitudes(stack: LayerStack, wavelengths: np.ndarray):
    lam = np.asarray(wavelengths, dtype=float).reshape(-1)
    m00 = np.ones(lam.size, dtype=complex)
    m01 = np.zeros(lam.size, dtype=complex)
    m10 = np.zeros(lam.size, dtype=complex)
    m11 = np.ones(lam.size, dtype=complex)
    for n, t in stack.layers:
        delta = 2.0 * math.pi * n * t / lam
        c = np.cos(delta)
        s = np.sin(delta)
        a01 = 1j * s / n
        a10 = 1j * n * s
        n00 = m00 * c + m01 * a10
        n01 = m00 * a01 + m01 * c
        n10 = m10 * c + m11 * a10
        n11 = m10 * a01 + m11 * c
        m00, m01, m10, m11 = n00, n01, n10, n11
    ns = stack.substrate
    b = m00 + m01 * ns
    cc = m10 + m11 * ns
    y0 = stack.ambient
    denom = y0 * b + cc
    r = (y0 * b - cc) / denom
    t_amp = 2.0 * y0 / denom
    return r, t_amp


def stack_reflectivity(stack: LayerStack, wavelengths) -> ReflectivityResult:
    """Reflectance and transmittance spectra of a stack."""
    lam = np.asarray(wavelengths, dtype=float).reshape(-1)
    if lam.size == 0 or lam.min() <= 0:
        raise ValueError("wavelengths must be positive and non-empty")
    r, t_amp = _amplitudes(stack, lam)
    refl = np.abs(r) ** 2
    tran = (stack.substrate.real / stack.ambient) * np.abs(t_amp) ** 2
    return ReflectivityResult(lam, refl, tran)


def transmittance_at(stack: LayerStack, wavelength_nm: float) -> float:
    return float(stack_reflectivity(stack, [wavelength_nm]).transmittance[0])


def kappa_from_q(q: float, wavelength_nm: float) -> float:
    """Cavity energy decay rate / 2 pi in GHz from a quality factor."""
    if q <= 0 or wavelength_nm <= 0:
        raise ValueError("need positive Q and wavelength")
    return C_NM_GHZ / (wavelength_nm * q)


@dataclass(frozen=True)
class CavityResonance:
    wavelength_nm: float
    fwhm_nm: float
    q: float
    kappa_ghz: float
    peak_transmittance: float


def cavity_q(
    stack: LayerStack,
    lambda_lo: float,
    lambda_hi: float,
    coarse_points: int = 2001,
) -> CavityResonance:
    """Quality factor of the transmission resonance inside a window.

    Scans T(lambda) on a coarse grid, refines the peak by bisection on the
    sign of dT/dlambda, then finds the half-maximum crossings by bisection.
    Q = lambda_res / FWHM.
    """
    if not (0 < lambda_lo < lambda_hi):
        raise ValueError("bad wavelength window")
    lam = np.linspace(lambda_lo, lambda_hi, coarse_points)
    tran = stack_reflectivity(stack, lam).transmittance
    j = int(np.argmax(tran))
    if j == 0 or j == lam.size - 1:
        raise ValueError("no interior transmission resonance in the window")
    if tran[j] <= 3.0 * np.median(tran):
        raise ValueError("transmission peak does not stand out of the background")

    def t_of(x):
        return transmittance_at(stack, float(x))

    def slope_sign(x):
        h = (lambda_hi - lambda_lo) * 1e-9
        return t_of(x + h) - t_of(x - h)

    lo, hi = lam[j - 1], lam[j + 1]
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if slope_sign(mid) > 0:
            lo = mid
        else:
            hi = mid
    lam_res = 0.5 * (lo + hi)
    t_peak = t_of(lam_res)
    half = 0.5 * t_peak

    def crossing(inside, outside):
        a, b = inside, outside
        for _ in range(80):
            mid = 0.5 * (a + b)
            if t_of(mid) > half:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    # bracket the half-maximum on each side on the coarse grid
    k = j
    while k > 0 and tran[k] > half:
        k -= 1
    if tran[k] > half:
        raise ValueError("left half-maximum outside the window")
    left = crossing(lam[k + 1], lam[k])
    k = j
    while k < lam.size - 1 and tran[k] > half:
        k += 1
    if tran[k] > half:
        raise ValueError("right half-maximum outside the window")
    right = crossing(lam[k - 1], lam[k])

    fwhm = right - left
    q = lam_res / fwhm
    return CavityResonance(
        wavelength_nm=float(lam_res),
        fwhm_nm=float(fwhm),
        q=float(q),
        kappa_ghz=kappa_from_q(q, lam_res),
        peak_transmittance=float(t_peak),
    )


def linear_thinning(stack: LayerStack, total_fraction: float) -> LayerStack:
    """Scale layer thicknesses by a linear gradient accumulated during growth.

    Growth starts at the substrate side; the first-grown layer keeps its
    thickness and the last-grown (ambient-side) layer is thinner by
    total_fraction.  Off by default in the stock designs.
    """
    if not 0 <= total_fraction < 1:
        raise ValueError("thinning fraction must be in [0, 1)")
    n_layers = len(stack.layers)
    if n_layers < 2 or total_fraction == 0:
        return stack
    scaled = []
    for k, (n, t) in enumerate(stack.layers):
        grown = n_layers - 1 - k  # 0 = first grown, at the substrate
        factor = 1.0 - total_fraction * (grown / (n_layers - 1.0))
        scaled.append((n, t * factor))
    return LayerStack(stack.ambient, tuple(scaled), stack.substrate)


# ---------------------------------------------------------------------------
# stock designs


def top_mirror(center_nm: float = 920.0) -> LayerStack:
    """Dielectric top mirror: 7.5 oxide pairs on a silica substrate.

    Quarter waves at center_nm, high-index layer facing the air side and the
    substrate side.  Illuminated from air.
    """
    t_h = center_nm / (4.0 * N_TANTALA)
    t_l = center_nm / (4.0 * N_SILICA)
    layers = [(N_TANTALA, t_h)]
    for _ in range(7):
        layers.append((N_SILICA, t_l))
        layers.append((N_TANTALA, t_h))
    return LayerStack(1.0, tuple(layers), N_SILICA)


def bottom_mirror_layers(pairs: int = 46):
    """As-grown semiconductor mirror, listed from the cavity side down."""
    layers = []
    for _ in range(pairs):
        layers.append((N_ALAS, T_ALAS))
        layers.append((N_GAAS, T_GAAS))
    return tuple(layers)


def full_cavity(
    gap_nm: float | None = None,
    pairs: int = 46,
    active_quarter_waves: int = 6,
    target_nm: float = 920.0,
    thinning: float = 0.0,
    active_absorption: float = 0.0,
    gap_halfwaves: int = 16,
) -> LayerStack:
    """Complete cavity: top mirror on silica, air gap, active layer, mirror.

    Listed from the silica side: the oxide coating, the air gap, an active
    layer of GaAs quarter waves, then the semiconductor mirror on a GaAs
    substrate.  Without an explicit gap the air gap is tuned so a
    transmission resonance lands at target_nm, on the longitudinal order
    set by gap_halfwaves.  The default of sixteen half waves (about 7.4 um
    of air) is the length at which the finesse set by the mirror losses
    reproduces the design quality factor near 14,000; shorter orders give
    proportionally lower Q.  Optional linear thinning applies to the
    semiconductor layers; optional absorption adds an imaginary index to
    the active layer.
    """
    t_h = target_nm / (4.0 * N_TANTALA)
    t_l = target_nm / (4.0 * N_SILICA)
    coating = []
    for _ in range(7):
        coating.append((N_TANTALA, t_h))
        coating.append((N_SILICA, t_l))
    coating.append((N_TANTALA, t_h))

    n_active = N_GAAS - 1j * active_absorption
    active = (n_active, active_quarter_waves * T_GAAS)
    semis = (active,) + bottom_mirror_layers(pairs)
    if thinning:
        semi_stack = linear_thinning(LayerStack(1.0, semis, N_GAAS), thinning)
        semis = semi_stack.layers

    def build(gap):
        layers = tuple(coating) + ((1.0, gap),) + semis
        return LayerStack(N_SILICA, layers, N_GAAS)

    if gap_nm is not None:
        return build(float(gap_nm))

    # scan the gap at fixed wavelength; a transmission peak in gap space is
    # a resonance crossing target_nm.  resonant gaps repeat every half wave,
    # so a window one half wave wide around the requested order holds
    # exactly one peak
    if gap_halfwaves < 1:
        raise ValueError("gap_halfwaves must be a positive integer")
    base = gap_halfwaves * target_nm / 2.0
    gaps = np.arange(base - target_nm / 4.0, base + target_nm / 4.0, 2.0)
    tr = np.array([transmittance_at(build(g), target_nm) for g in gaps])
    peak = int(np.argmax(tr))
    if peak == 0 or peak == gaps.size - 1:
        raise ValueError("no resonant air gap found in the scan range")
    lo, hi = gaps[peak - 1], gaps[peak + 1]

    def slope(g):
        h = 1e-4
        return transmittance_at(build(g + h), target_nm) - transmittance_at(build(g - h), target_nm)

    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if slope(mid) > 0:
            lo = mid
        else:
            hi = mid
    return build(0.5 * (lo + hi))


# ---------------------------------------------------------------------------
# stack files

STACK_GRAMMAR = """\
Stack files are line oriented; '#' starts a comment.  Directives:
    ambient <index>                 incidence half-space (required first)
    layer <index> <thickness_nm> [<repeat>]
    repeat <count> ... end          repeat the enclosed layer block
    substrate <index>               exit half-space (required last)
Indices may be given as a single real number or as <real> <imag>.
"""


def parse_stack_text(text: str, name: str = "<stack>") -> LayerStack:
    ambient = None
    substrate = None
    layers = []
    block = None  # (count, list) while inside repeat ... end
    block_line = 0

    def fail(lineno, msg):
        raise StackParseError("%s line %d: %s" % (name, lineno, msg))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        word = parts[0].lower()
        if substrate is not None:
            fail(lineno, "content after substrate")
        if word == "ambient":
            if ambient is not None:
                fail(lineno, "duplicate ambient")
            if layers or block is not None:
                fail(lineno, "ambient must come first")
            if len(parts) != 2:
                fail(lineno, "ambient takes one index")
            try:
                ambient = float(parts[1])
            except ValueError:
                fail(lineno, "bad ambient index %r" % parts[1])
        elif word == "layer":
            if ambient is None:
                fail(lineno, "layer before ambient")
            if len(parts) not in (3, 4):
                fail(lineno, "layer takes index, thickness_nm and optional repeat")
            try:
                n = float(parts[1])
                t = float(parts[2])
                count = int(parts[3]) if len(parts) == 4 else 1
            except ValueError:
                fail(lineno, "bad number in layer line")
            if count < 1:
                fail(lineno, "repeat count must be >= 1")
            if t <= 0:
                fail(lineno, "thickness must be positive")
            target = layers if block is None else block[1]
            target.extend([(n, t)] * count)
        elif word == "repeat":
            if ambient is None:
                fail(lineno, "repeat before ambient")
            if block is not None:
                fail(lineno, "nested repeat blocks are not supported")
            if len(parts) != 2:
                fail(lineno, "repeat takes one count")
            try:
                count = int(parts[1])
            except ValueError:
                fail(lineno, "bad repeat count %r" % parts[1])
            if count < 1:
                fail(lineno, "repeat count must be >= 1")
            block = (count, [])
            block_line = lineno
        elif word == "end":
            if block is None:
                fail(lineno, "end without repeat")
            count, body = block
            if not body:
                fail(lineno, "empty repeat block")
            layers.extend(body * count)
            block = None
        elif word == "substrate":
            if block is not None:
                fail(lineno, "substrate inside repeat block (missing end)")
            if ambient is None:
                fail(lineno, "substrate before ambient")
            if len(parts) not in (2, 3):
                fail(lineno, "substrate takes an index (real [imag])")
            try:
                substrate = float(parts[1]) + 1j * (float(parts[2]) if len(parts) == 3 else 0.0)
            except ValueError:
                fail(lineno, "bad substrate index")
        else:
            fail(lineno, "unknown directive %r" % parts[0])
    if block is not None:
        fail(block_line, "repeat block never closed")
    if ambient is None:
        raise StackParseError("%s: missing ambient line" % name)
    if substrate is None:
        raise StackParseError("%s: missing substrate line" % name)
    if not layers:
        pass  # a bare interface is legal
    try:
        return LayerStack(ambient, tuple(layers), substrate)
    except ValueError as exc:
        raise StackParseError("%s: %s" % (name, exc)) from exc


def parse_stack_file(path) -> LayerStack:
    with open(path) as fh:
        return parse_stack_text(fh.read(), name=str(path))


def format_stack(stack: LayerStack) -> str:
    lines = ["ambient %.10g" % stack.ambient]
    for n, t in stack.layers:
        if n.imag:
            raise ValueError("stack files carry real layer indices only")
        lines.append("layer %.10g %.10g" % (n.real, t))
    if stack.substrate.imag:
        lines.append("substrate %.10g %.10g" % (stack.substrate.real, stack.substrate.imag))
    else:
        lines.append("substrate %.10g" % stack.substrate.real)
    return "\n".join(lines) + "\n"
