"""Dense complex operator/state algebra over tensor-product Hilbert spaces.

Conventions
-----------
- Tensor factors are ordered as listed in ``HilbertSpace.dims``; the first
  factor is the slowest index (``numpy.kron`` ordering).
- Qubit basis is ordered (|up>, |down>) with sigma_z|up> = +|up>, i.e. the
  *excited* state sits at local index 0.  Three-level transmons append the
  second excited level |f> at local index 2.
- Hamiltonian matrices store H/hbar (rad/s), so the propagator over a time
  t (seconds) is exp(-i H t).
- State equality is tested up to a global phase via |<psi|phi>|^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np

HERMITICITY_ATOL = 1e-12
NORM_ATOL = 1e-10

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "+": np.array([[0, 1], [0, 0]], dtype=complex),
    "-": np.array([[0, 0], [1, 0]], dtype=complex),
}

_SPIN_CHARS = {"u": 0, "d": 1, "↑": 0, "↓": 1, "0": 0, "1": 1}


@dataclass(frozen=True)
class HilbertSpace:
    """Ordered list of subsystem dimensions (2/3 per qubit, N_fock for a mode)."""

    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims or any(d < 2 for d in self.dims):
            raise ValueError(f"every subsystem dimension must be >= 2, got {self.dims}")

    @property
    def dim(self) -> int:
        return prod(self.dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def check_site(self, site: int) -> int:
        if not 0 <= site < len(self.dims):
            raise IndexError(f"site {site} out of range for {len(self.dims)} subsystems")
        return site

    def basis_index(self, local_indices: Sequence[int]) -> int:
        """Flatten per-subsystem indices into the composite basis index."""
        if len(local_indices) != len(self.dims):
            raise ValueError("one local index per subsystem required")
        idx = 0
        for k, d in zip(local_indices, self.dims):
            if not 0 <= k < d:
                raise ValueError(f"local index {k} out of range for dim {d}")
            idx = idx * d + k
        return idx


def qubit_space(n_qubits: int, n_fock: int | None = None, levels: int = 2) -> HilbertSpace:
    """Space of `n_qubits` (2- or 3-level) qubits, optionally with one mode appended."""
    dims = [levels] * n_qubits + ([n_fock] if n_fock else [])
    return HilbertSpace(tuple(dims))


def parse_spin_label(label: str) -> tuple[int, ...]:
    """Map a configuration label like 'udd' or arrows to local qubit indices."""
    try:
        return tuple(_SPIN_CHARS[ch] for ch in label)
    except KeyError as exc:
        raise ValueError(f"bad spin label {label!r}; use u/d or arrow characters") from exc


def spin_label(indices: Iterable[int], arrows: bool = True) -> str:
    chars = ("↑", "↓") if arrows else ("u", "d")
    return "".join(chars[i] for i in indices)


@dataclass(frozen=True)
class Operator:
    """Dense complex square matrix tagged with its Hilbert space."""

    space: HilbertSpace
    matrix: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError(f"matrix shape {m.shape} does not match space dim {self.space.dim}")
        object.__setattr__(self, "matrix", m)
        if self.hermitian:
            dev = herm_deviation(m)
            if dev >= HERMITICITY_ATOL:
                raise ValueError(f"operator asserted Hermitian but max|A - A^dag| = {dev:.3e}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def dag(self) -> "Operator":
        return Operator(self.space, self.matrix.conj().T, hermitian=self.hermitian)

    def __add__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.space, self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.space, self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.space, self.matrix * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Operator):
            self._check_space(other)
            return Operator(self.space, self.matrix @ other.matrix)
        if isinstance(other, StateVector):
            if other.space != self.space:
                raise ValueError("operator/state space mismatch")
            return StateVector(self.space, self.matrix @ other.amplitudes, normalized=False)
        return NotImplemented

    def commutator(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.space, self.matrix @ other.matrix - other.matrix @ self.matrix)

    def expectation(self, psi: "StateVector") -> complex:
        return complex(np.vdot(psi.amplitudes, self.matrix @ psi.amplitudes))

    def as_hermitian(self) -> "Operator":
        """Re-tag as Hermitian, verifying the tolerance."""
        return Operator(self.space, self.matrix, hermitian=True)

    def _check_space(self, other: "Operator"):
        if other.space != self.space:
            raise ValueError("operator space mismatch")


def herm_deviation(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T)))


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitudes over a HilbertSpace."""

    space: HilbertSpace
    amplitudes: np.ndarray
    normalized: bool = field(default=True, repr=False)

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if v.shape[0] != self.space.dim:
            raise ValueError(f"amplitude length {v.shape[0]} does not match dim {self.space.dim}")
        object.__setattr__(self, "amplitudes", v)
        if self.normalized:
            n = np.linalg.norm(v)
            if abs(n - 1.0) >= NORM_ATOL:
                raise ValueError(f"state norm {n} deviates from 1 by more than {NORM_ATOL}")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "StateVector") -> complex:
        if other.space != self.space:
            raise ValueError("state space mismatch")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def overlap_sq(self, other: "StateVector") -> float:
        """|<self|other>|^2 — state equality up to a global phase."""
        return abs(self.overlap(other)) ** 2

    def to_density_matrix(self) -> "DensityMatrix":
        v = self.amplitudes
        return DensityMatrix(self.space, np.outer(v, v.conj()))


def basis_state(space: HilbertSpace, local_indices: Sequence[int]) -> StateVector:
    v = np.zeros(space.dim, dtype=complex)
    v[space.basis_index(local_indices)] = 1.0
    return StateVector(space, v)


def spin_basis_state(label: str, n_fock: int | None = None, photon: int = 0,
                     levels: int = 2) -> StateVector:
    """Computational spin configuration, optionally joined with a Fock level."""
    spins = parse_spin_label(label)
    space = qubit_space(len(spins), n_fock, levels)
    idx = list(spins) + ([photon] if n_fock else [])
    return basis_state(space, idx)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix over a HilbertSpace."""

    space: HilbertSpace
    matrix: np.ndarray
    validated: bool = field(default=True, repr=False)

    HERM_TOL = 1e-10
    TRACE_TOL = 1e-10
    EIG_FLOOR = -1e-9

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError("density matrix shape does not match space")
        object.__setattr__(self, "matrix", m)
        if self.validated:
            self.validate()

    def validate(self):
        dev = herm_deviation(self.matrix)
        if dev >= self.HERM_TOL:
            raise ValueError(f"density matrix not Hermitian: max dev {dev:.3e}")
        tr = np.trace(self.matrix).real
        if abs(tr - 1.0) >= self.TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} deviates from 1")
        lo = float(np.min(np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))))
        if lo < self.EIG_FLOOR:
            raise ValueError(f"density matrix has eigenvalue {lo} below {self.EIG_FLOOR}")

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def partial_trace_last(self) -> "DensityMatrix":
        """Trace out the last tensor factor (the resonator in this library)."""
        dims = self.space.dims
        dsub = prod(dims[:-1])
        dlast = dims[-1]
        r = self.matrix.reshape(dsub, dlast, dsub, dlast)
        out = np.einsum("ikjk->ij", r)
        return DensityMatrix(HilbertSpace(dims[:-1]), out, validated=False)


def pauli(kind: str) -> Operator:
    """Single-qubit Pauli operator in the (|up>, |down>) basis.

    ``kind`` is one of ``x, y, z, +, -``; sigma^+ = |up><down|.
    """
    try:
        m = _PAULI[kind]
    except KeyError as exc:
        raise ValueError(f"unknown Pauli kind {kind!r}") from exc
    herm = kind in "xyz"
    return Operator(HilbertSpace((2,)), m.copy(), hermitian=herm)


def boson_ops(n_fock: int) -> tuple[Operator, Operator]:
    """Truncated annihilation/creation pair with a|n> = sqrt(n)|n-1>."""
    if n_fock < 2:
        raise ValueError("n_fock must be >= 2")
    a = np.zeros((n_fock, n_fock), dtype=complex)
    ns = np.arange(1, n_fock)
    a[ns - 1, ns] = np.sqrt(ns)
    space = HilbertSpace((n_fock,))
    return Operator(space, a), Operator(space, a.conj().T)


def embed(space: HilbertSpace, site: int, local: Operator | np.ndarray) -> Operator:
    """I x ... x local x ... x I with the local operator at `site`."""
    space.check_site(site)
    mat = local.matrix if isinstance(local, Operator) else np.asarray(local, dtype=complex)
    if mat.shape != (space.dims[site], space.dims[site]):
        raise ValueError(
            f"local operator dim {mat.shape[0]} does not match dims[{site}] = {space.dims[site]}")
    left = prod(space.dims[:site])
    right = prod(space.dims[site + 1:])
    out = np.kron(np.kron(np.eye(left, dtype=complex), mat), np.eye(right, dtype=complex))
    return Operator(space, out)


def expm_apply(h: Operator, t: float, psi: StateVector) -> StateVector:
    """exp(-i H t)|psi> through the Hermitian eigendecomposition of H."""
    if psi.space != h.space:
        raise ValueError("state space does not match Hamiltonian space")
    dev = herm_deviation(h.matrix)
    scale = max(1.0, float(np.max(np.abs(h.matrix))))
    if dev >= HERMITICITY_ATOL * scale:
        raise ValueError(f"expm_apply requires a Hermitian operator (max dev {dev:.3e})")
    evals, evecs = np.linalg.eigh(h.matrix)
    phases = np.exp(-1j * evals * t)
    out = evecs @ (phases * (evecs.conj().T @ psi.amplitudes))
    return StateVector(h.space, out)


def fidelity(rho: DensityMatrix, target: StateVector) -> float:
    """<psi|rho|psi> for a pure target state."""
    if rho.space != target.space:
        raise ValueError("density matrix and target state live in different spaces")
    v = target.amplitudes
    val = np.vdot(v, rho.matrix @ v)
    return float(val.real)
