"""Bessel-series effective couplings for frequency-modulated qubits.

A qubit whose transition frequency is modulated as
omega_j(t) = omega_0 + Delta cos(nu t - phi_j + phi_0) and coupled to a
common resonator acquires, after time averaging over the fast modulation:

- a residual resonant coupling g J_0(f) to the resonator (f = Delta/nu),
- a pairwise exchange with every co-modulated qubit,
      H_pair = i g_eff (sigma_i^+ sigma_j^- - sigma_j^+ sigma_i^-),
      g_eff(dphi) = sum_n 2 g^2 J_n(f)^2 sin(n dphi) / (n nu),
  where dphi = phi_j - phi_i for the ordered pair (i, j).

Three qubits with phases stepped by 2 pi/3 realize the chiral three-spin
ring with kappa = 2 sqrt 3 g^2 beta / nu and
beta(f) = sum_n 2 J_n(f)^2 sin(2 n pi/3)/n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import jv

from .chirality import SQRT3
from .constants import period_from_rate
from .operators import Operator, embed, pauli, qubit_space

#: series cutoff: terms whose Bessel envelope drops below this are discarded
SERIES_ATOL = 1e-14
SERIES_NMAX = 200


@dataclass(frozen=True)
class ModulationSpec:
    """Per-qubit frequency-modulation parameters (all angular, rad/s)."""

    omega0: float
    delta: float
    nu: float
    phases: tuple[float, ...]
    phi0: float = 0.0

    def __post_init__(self):
        if self.nu <= 0:
            raise ValueError("modulation frequency nu must be positive")
        if self.delta < 0:
            raise ValueError("modulation amplitude delta must be >= 0")
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))

    @property
    def f(self) -> float:
        """Modulation index Delta/nu."""
        return self.delta / self.nu

    @property
    def n_qubits(self) -> int:
        return len(self.phases)


@dataclass(frozen=True)
class EffectiveCouplings:
    """Time-averaged coupling numbers for one working point."""

    g0: float      # residual qubit-resonator rate, rad/s
    beta: float    # dimensionless series coefficient
    kappa: float   # chiral coupling rate, rad/s
    t0: float      # chiral step time, s

    def __post_init__(self):
        expected = period_from_rate(self.kappa)
        if abs(self.t0 - expected) > 1e-9 * abs(expected):
            raise ValueError("t0 inconsistent with kappa")


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind J_n(x)."""
    return float(jv(n, x))


def beta_coefficient(f: float) -> float:
    """beta(f) = sum_{n>=1} 2 J_n(f)^2 sin(2 n pi/3) / n.

    Terms with n = 0 mod 3 vanish exactly; the series is truncated once the
    Bessel envelope 2 J_n^2/n falls below SERIES_ATOL.
    """
    total = 0.0
    for n in range(1, SERIES_NMAX + 1):
        envelope = 2.0 * bessel_j(n, f) ** 2 / n
        if envelope < SERIES_ATOL and n > 3:
            break
        total += envelope * np.sin(2.0 * n * np.pi / 3.0)
    return total


def qubit_resonator_g0(g: float, f: float) -> float:
    """Residual resonant qubit-resonator rate g J_0(f) (second order).

    The full dynamics deviates from this near the J_0 zero; that deviation
    is probed by simulation, not modelled here.
    """
    return g * bessel_j(0, f)


def qubit_qubit_geff(g: float, f: float, nu: float, delta_phi: float) -> float:
    """Signed exchange rate between two co-modulated qubits (rad/s).

    Antisymmetric in the phase difference; delta_phi = 2 pi/3 returns
    g^2 beta(f) / nu = kappa / (2 sqrt 3).
    """
    if nu <= 0:
        raise ValueError("nu must be positive")
    total = 0.0
    for n in range(1, SERIES_NMAX + 1):
        envelope = 2.0 * g * g * bessel_j(n, f) ** 2 / (n * nu)
        if abs(envelope) < SERIES_ATOL * max(1.0, g * g / nu) and n > 3:
            break
        total += envelope * np.sin(n * delta_phi)
    return total


def effective_cluster_hamiltonian(phases, g: float, f: float, nu: float) -> Operator:
    """Time-averaged exchange Hamiltonian for co-modulated qubits (H/hbar).

    H = sum_{i<j} i g_eff(phi_j - phi_i)(sigma_i^+ sigma_j^- - h.c.).
    The ordered-pair convention is fixed so that phases stepped by +2 pi/3
    along (0, 1, 2) reproduce the directed ring (0,1),(1,2),(2,0); equal
    phases couple to nothing.
    """
    phases = tuple(float(p) for p in phases)
    n = len(phases)
    space = qubit_space(n)
    out = np.zeros((space.dim, space.dim), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            geff = qubit_qubit_geff(g, f, nu, phases[j] - phases[i])
            if geff == 0.0:
                continue
            hop = embed(space, i, pauli("+")).matrix @ embed(space, j, pauli("-")).matrix
            rows, cols = np.nonzero(hop)
            vals = 1j * geff * hop[rows, cols]
            out[rows, cols] += vals
            out[cols, rows] += vals.conj()
    return Operator(space, out, hermitian=True)


def kappa_t0(g: float, f: float, nu: float) -> EffectiveCouplings:
    """Assemble the effective numbers for one working point (all rad/s)."""
    beta = beta_coefficient(f)
    kappa = 2.0 * SQRT3 * g * g * beta / nu
    return EffectiveCouplings(
        g0=qubit_resonator_g0(g, f),
        beta=beta,
        kappa=kappa,
        t0=period_from_rate(kappa),
    )
