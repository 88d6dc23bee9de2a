"""Spin-chirality operators and the antisymmetric-exchange (DM) Hamiltonians.

The central objects are the three-spin chirality C_z = sigma_1.(sigma_2 x
sigma_3)/(2 sqrt 3), whose exponential permutes the three spin states
cyclically, and cluster Hamiltonians assembled from directed cross-product
edges: a directed edge (i, j) contributes

    (kappa / 4 sqrt 3) (sigma_i^x sigma_j^y - sigma_i^y sigma_j^x),

the z-component of D.(sigma_i x sigma_j).  For the three-spin ring
(0,1),(1,2),(2,0) this sum equals kappa * S_z * C_z exactly, which makes the
two subspaces S_z = +-1/2 rotate with opposite handedness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .constants import THETA_STEP, period_from_rate
from .operators import (HilbertSpace, Operator, StateVector, embed, pauli,
                        qubit_space, spin_basis_state)

SQRT3 = np.sqrt(3.0)

#: directed edges of the named cluster presets, 0-based site indices
RING_EDGES = ((0, 1), (1, 2), (2, 0))
FOUR_SPIN_EDGES = ((1, 0), (3, 0), (0, 2), (2, 1), (2, 3))
FIVE_SPIN_EDGES = ((1, 0), (3, 0), (0, 2), (0, 4), (2, 1), (4, 1), (2, 3), (4, 3))


@dataclass(frozen=True)
class SpinClusterSpec:
    """Directed-edge description of an antisymmetric-exchange cluster."""

    n_spins: int
    edges: tuple[tuple[int, int], ...]
    kappa: float  # angular coupling rate, rad/s

    def __post_init__(self):
        if self.n_spins < 3:
            raise ValueError("a chiral cluster needs at least 3 spins")
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        for (i, j) in self.edges:
            if i == j:
                raise ValueError(f"self-edge ({i}, {j}) not allowed")
            if not (0 <= i < self.n_spins and 0 <= j < self.n_spins):
                raise ValueError(f"edge ({i}, {j}) out of range for {self.n_spins} spins")

    @property
    def period(self) -> float:
        """One chiral step time T0 = (4 pi / 3) / kappa."""
        return period_from_rate(self.kappa)


def three_spin_ring(kappa: float) -> SpinClusterSpec:
    return SpinClusterSpec(3, RING_EDGES, kappa)


def four_spin_cluster(kappa: float) -> SpinClusterSpec:
    """Diamond cluster: excitation walks 1 -> {2,4} -> 3 -> 1 (1-based labels)."""
    return SpinClusterSpec(4, FOUR_SPIN_EDGES, kappa)


def five_spin_cluster(kappa: float) -> SpinClusterSpec:
    """Centered cluster: excitation walks 1 -> {2,4} -> {3,5} -> 1 (1-based labels)."""
    return SpinClusterSpec(5, FIVE_SPIN_EDGES, kappa)


@dataclass(frozen=True)
class SpinWaveState:
    """Momentum label of a three-spin ring eigenstate: k in {-1, 0, 1}, sz = +-1/2."""

    k: int
    sz: float

    def __post_init__(self):
        if self.k not in (-1, 0, 1):
            raise ValueError("k must be one of -1, 0, +1")
        if self.sz not in (-0.5, 0.5):
            raise ValueError("sz must be +-1/2")


def _pauli_vectors(space: HilbertSpace, n_spins: int):
    return [[embed(space, j, pauli(ax)).matrix for ax in "xyz"] for j in range(n_spins)]


def chirality_z(n_spins: int = 3) -> Operator:
    """C_z = sigma_1 . (sigma_2 x sigma_3) / (2 sqrt 3) on three qubits.

    Eigenvalues are {-1, 0, +1}; exp(-i C_z theta/2) with theta = 4 pi / 3
    permutes every computational configuration |s1 s2 s3> -> |s3 s1 s2>.
    """
    if n_spins != 3:
        raise ValueError("the chirality operator is defined on exactly three spins")
    space = qubit_space(3)
    s = _pauli_vectors(space, 3)
    out = np.zeros((8, 8), dtype=complex)
    for (a, b, c) in permutations(range(3)):
        sign = 1.0 if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1.0
        out += sign * s[0][a] @ s[1][b] @ s[2][c]
    return Operator(space, out / (2.0 * SQRT3), hermitian=True)


def chirality_x_y(n_spins: int = 3) -> tuple[Operator, Operator]:
    """Transverse chirality components (C_x, C_y) on three qubits.

    Normalized so that (C_x, C_y, C_z) close the Pauli commutation algebra
    [C_i, C_j] = 2i eps_ijk C_k and C_x has eigenvalues +-1 on the chirality
    doublets; then |udd> = |0>/sqrt3 + sqrt2 |+x>/sqrt3 gives <C_x> = 2/3.
    """
    if n_spins != 3:
        raise ValueError("the chirality operators are defined on exactly three spins")
    space = qubit_space(3)
    s = _pauli_vectors(space, 3)

    def dot(i, j):
        return sum(s[i][a] @ s[j][a] for a in range(3))

    cx = (2.0 * dot(1, 2) - dot(0, 1) - dot(2, 0)) / 6.0
    cy = (dot(0, 1) - dot(2, 0)) / (2.0 * SQRT3)
    return Operator(space, cx, hermitian=True), Operator(space, cy, hermitian=True)


def total_sz(n_spins: int) -> Operator:
    """S_z = sum_j sigma_j^z / 2 on a qubit-only register."""
    space = qubit_space(n_spins)
    out = sum(embed(space, j, pauli("z")).matrix for j in range(n_spins)) / 2.0
    return Operator(space, out, hermitian=True)


def asi_hamiltonian(spec: SpinClusterSpec) -> Operator:
    """Directed-edge antisymmetric-exchange Hamiltonian (H/hbar, rad/s).

    H = sum_edges (kappa / 4 sqrt 3)(sigma_i^x sigma_j^y - sigma_i^y sigma_j^x),
    equivalently i (kappa / 2 sqrt 3)(sigma_i^+ sigma_j^- - sigma_i^- sigma_j^+)
    per edge.  Entries are written symmetrically so the matrix is Hermitian
    to the last bit.
    """
    space = qubit_space(spec.n_spins)
    dim = space.dim
    out = np.zeros((dim, dim), dtype=complex)
    coeff = 1j * spec.kappa / (2.0 * SQRT3)
    for (i, j) in spec.edges:
        hop = embed(space, i, pauli("+")).matrix @ embed(space, j, pauli("-")).matrix
        rows, cols = np.nonzero(hop)
        vals = coeff * hop[rows, cols]
        out[rows, cols] += vals
        out[cols, rows] += vals.conj()
    return Operator(space, out, hermitian=True)


def chiral_step_propagator(spec: SpinClusterSpec) -> Operator:
    """exp(-i H T0) for the cluster, with T0 = theta/kappa."""
    h = asi_hamiltonian(spec)
    evals, evecs = np.linalg.eigh(h.matrix)
    u = (evecs * np.exp(-1j * evals * spec.period)) @ evecs.conj().T
    return Operator(h.space, u)


def spin_wave_state(state: SpinWaveState) -> StateVector:
    """Discrete-momentum eigenstate of the three-spin ring.

    |k, -1/2> = (|udd> + w^k |dud> + w^{2k} |ddu>)/sqrt3 with w = exp(2 i pi/3);
    the sz = +1/2 family uses the spin-flipped configurations.  Eigenvalue of
    the ring Hamiltonian is sign(sz) * k * kappa / 2.
    """
    labels = ("udd", "dud", "ddu") if state.sz < 0 else ("duu", "udu", "uud")
    w = np.exp(2j * np.pi * state.k / 3.0)
    vec = sum(w ** m * spin_basis_state(lab).amplitudes for m, lab in enumerate(labels))
    return StateVector(qubit_space(3), vec / SQRT3)


def spin_wave_energy(state: SpinWaveState, kappa: float) -> float:
    """lambda^(sign sz)(k) = sign(sz) * k * kappa / 2 (rad/s)."""
    return np.sign(state.sz) * state.k * kappa / 2.0


def group_velocity(sz: float, kappa: float) -> float:
    """Spin-wave packet group velocity: +kappa/2 for sz=+1/2, -kappa/2 for -1/2.

    The associated step time is T0 = 2 pi / (3 |v_g|) = 4 pi / (3 kappa),
    exposed as `step_time`.
    """
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if sz not in (-0.5, 0.5):
        raise ValueError("sz must be +-1/2")
    return np.sign(sz) * kappa / 2.0


def step_time(kappa: float) -> float:
    """T0 = 2 pi / (3 |v_g|) = theta / kappa with theta = 4 pi / 3."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    return THETA_STEP / kappa
