"""Design and analysis toolkit for a cavity-enhanced quantum-dot single-photon source.

Subpackages cover the dense operator algebra, pulse shaping through a filter
cavity, Lindblad time evolution of the driven emitter, thin-film stack
reflectivity, coupled-system figures of merit, and photon-counting analysis.
All rates are quoted as ordinary frequencies (GHz, i.e. omega / 2 pi) unless a
variable name says otherwise; times are in ps, wavelengths in nm.
"""

__version__ = "0.1.0"

from . import quantum
from . import pulses
from . import lindblad
from . import rabi
from . import tmm
from . import beams
from . import metrics
from . import counting

__all__ = [
    "quantum",
    "pulses",
    "lindblad",
    "rabi",
    "tmm",
    "beams",
    "metrics",
    "counting",
    "__version__",
]
