"""Unit conventions and shared constants.

All rates and Hamiltonians inside the library are angular frequencies in
rad/s (Hamiltonian matrices carry H/hbar, so propagators are exp(-i H t)).
Configuration files, device tables and the CLI speak ordinary frequencies
in MHz/GHz and durations in ns/us; conversion happens at the boundary.
"""

import numpy as np

# one "ordinary" MHz / GHz expressed as an angular rate (rad/s)
MHZ = 2.0 * np.pi * 1e6
GHZ = 2.0 * np.pi * 1e9

NS = 1e-9
US = 1e-6

#: chiral step angle: one application of the three-spin permutation
THETA_STEP = 4.0 * np.pi / 3.0


def period_from_rate(kappa: float) -> float:
    """Chiral step time T0 = theta/kappa for angular rate kappa (rad/s)."""
    return THETA_STEP / kappa
