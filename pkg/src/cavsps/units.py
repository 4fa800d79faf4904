"""Unit conventions shared across the package.

Frequencies are stored as ordinary frequencies in GHz (what a spectrum
analyser reads, omega / 2 pi).  Internal dynamics run in ps, so conversions
to angular rates carry an explicit factor 2 pi and the GHz * ps = 1e-3
scaling.  Keeping the factor in one place avoids silent 2 pi slips.
"""

import math

# 1 GHz expressed in cycles per ps
GHZ_PS = 1e-3


def angular_rate(freq_ghz: float) -> float:
    """Angular rate in rad/ps for an ordinary frequency in GHz."""
    return 2.0 * math.pi * freq_ghz * GHZ_PS
