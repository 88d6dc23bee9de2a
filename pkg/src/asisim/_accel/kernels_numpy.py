"""Pure-numpy reference kernels for the modulated-Hamiltonian integrators.

The Hamiltonian family handled here is

    H(t) = diag + sum_k u_k(t) A_k + conj(u_k(t)) A_k^dag,
    u_k(t) = exp(-i f_k sin(nu t - phi_k + phi0)),

where every A_k is a weighted partial permutation (at most one nonzero per
row and per column), stored as flat COO arrays with per-term offsets.  This
structure makes one right-hand-side evaluation O(d) for states and O(d^2)
for density matrices.

The numba twin in `kernels_numba` implements the same algorithms with
explicit loops; both backends must agree to near machine precision.
"""

from __future__ import annotations

import numpy as np

# Dormand-Prince 5(4) tableau
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([], dtype=float),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_E = _DP_B5 - np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])

MIN_STEP_FRACTION = 1e-12


def _coeffs(t, fmod, phim, nu, phi0):
    return np.exp(-1j * (fmod * np.sin(nu * t - phim + phi0)))


def _rhs_psi(psi, t, diag, rows, cols, vals, offs, fmod, phim, nu, phi0):
    out = diag * psi
    for k in range(len(fmod)):
        sl = slice(offs[k], offs[k + 1])
        u = np.exp(-1j * (fmod[k] * np.sin(nu * t - phim[k] + phi0)))
        uv = u * vals[sl]
        out[rows[sl]] += uv * psi[cols[sl]]
        out[cols[sl]] += uv.conj() * psi[rows[sl]]
    return -1j * out


def _rhs_rho(rho, t, diag_eff, rows, cols, vals, offs, fmod, phim, nu, phi0,
             jrows, jcols, jvals, joffs, dvecs):
    c = diag_eff[:, None] * rho
    for k in range(len(fmod)):
        sl = slice(offs[k], offs[k + 1])
        u = np.exp(-1j * (fmod[k] * np.sin(nu * t - phim[k] + phi0)))
        uv = u * vals[sl]
        c[rows[sl]] += uv[:, None] * rho[cols[sl]]
        c[cols[sl]] += uv.conj()[:, None] * rho[rows[sl]]
    out = -1j * (c - c.conj().T)
    for ch in range(len(joffs) - 1):
        sl = slice(joffs[ch], joffs[ch + 1])
        r, cc, v = jrows[sl], jcols[sl], jvals[sl]
        out[np.ix_(r, r)] += np.outer(v, v.conj()) * rho[np.ix_(cc, cc)]
    for ch in range(dvecs.shape[0]):
        l = dvecs[ch]
        out += np.outer(l, l.conj()) * rho
    return out


def schrodinger_rk4(psi0, t_grid, dt_max, diag, rows, cols, vals, offs,
                    fmod, phim, nu, phi0):
    """Fixed-step RK4 propagation sampled at t_grid; out[0] = psi0."""
    nt = len(t_grid)
    out = np.empty((nt, len(psi0)), dtype=np.complex128)
    out[0] = psi0
    psi = psi0.astype(np.complex128, copy=True)
    args = (diag, rows, cols, vals, offs, fmod, phim, nu, phi0)
    for i in range(1, nt):
        seg = t_grid[i] - t_grid[i - 1]
        nstep = max(1, int(np.ceil(seg / dt_max - 1e-12)))
        h = seg / nstep
        t = t_grid[i - 1]
        for _ in range(nstep):
            k1 = _rhs_psi(psi, t, *args)
            k2 = _rhs_psi(psi + 0.5 * h * k1, t + 0.5 * h, *args)
            k3 = _rhs_psi(psi + 0.5 * h * k2, t + 0.5 * h, *args)
            k4 = _rhs_psi(psi + h * k3, t + h, *args)
            psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += h
        out[i] = psi
    return out


def _dp54_segment(y, t0, t1, h_start, dt_max, rtol, atol, rhs, args):
    """Advance y from t0 to t1 with embedded DP5(4); returns (y, last h)."""
    t = t0
    h = min(h_start, dt_max, t1 - t0)
    k = [None] * 7
    k[0] = rhs(y, t, *args)
    while t < t1 - MIN_STEP_FRACTION * (t1 - t0):
        h = min(h, t1 - t)
        while True:
            for s in range(1, 6):
                acc = y + h * sum(a * k[m] for m, a in enumerate(_DP_A[s]))
                k[s] = rhs(acc, t + _DP_C[s] * h, *args)
            y5 = y + h * sum(a * k[m] for m, a in enumerate(_DP_A[6]))
            k[6] = rhs(y5, t + h, *args)
            err_vec = h * sum(e * k[m] for m, e in enumerate(_DP_E))
            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
            err = np.sqrt(np.mean((np.abs(err_vec) / scale) ** 2))
            if err <= 1.0 or h <= MIN_STEP_FRACTION * (t1 - t0):
                break
            h = max(h * max(0.2, 0.9 * err ** -0.2), MIN_STEP_FRACTION * (t1 - t0))
        t += h
        y = y5
        k[0] = k[6]  # FSAL
        factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
        h = min(h * factor, dt_max)
    return y, h


def schrodinger_dp54(psi0, t_grid, dt_max, diag, rows, cols, vals, offs,
                     fmod, phim, nu, phi0, rtol, atol):
    """Adaptive embedded Dormand-Prince 5(4) propagation sampled at t_grid."""
    nt = len(t_grid)
    out = np.empty((nt, len(psi0)), dtype=np.complex128)
    out[0] = psi0
    psi = psi0.astype(np.complex128, copy=True)
    args = (diag, rows, cols, vals, offs, fmod, phim, nu, phi0)
    h = dt_max
    for i in range(1, nt):
        psi, h = _dp54_segment(psi, t_grid[i - 1], t_grid[i], h, dt_max,
                               rtol, atol, _rhs_psi, args)
        out[i] = psi
    return out


def lindblad_rk4(rho0, t_grid, dt_max, diag_eff, rows, cols, vals, offs,
                 fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs,
                 store_full):
    """Fixed-step RK4 for the Lindblad master equation.

    Returns (diags, rhos): diagonal populations at every sample, and either
    every sampled density matrix (store_full) or only the final one.
    """
    nt = len(t_grid)
    d = rho0.shape[0]
    diags = np.empty((nt, d), dtype=np.float64)
    rhos = np.empty((nt if store_full else 1, d, d), dtype=np.complex128)
    rho = rho0.astype(np.complex128, copy=True)
    diags[0] = rho.diagonal().real
    if store_full:
        rhos[0] = rho
    args = (diag_eff, rows, cols, vals, offs, fmod, phim, nu, phi0,
            jrows, jcols, jvals, joffs, dvecs)
    for i in range(1, nt):
        seg = t_grid[i] - t_grid[i - 1]
        nstep = max(1, int(np.ceil(seg / dt_max - 1e-12)))
        h = seg / nstep
        t = t_grid[i - 1]
        for _ in range(nstep):
            k1 = _rhs_rho(rho, t, *args)
            k2 = _rhs_rho(rho + 0.5 * h * k1, t + 0.5 * h, *args)
            k3 = _rhs_rho(rho + 0.5 * h * k2, t + 0.5 * h, *args)
            k4 = _rhs_rho(rho + h * k3, t + h, *args)
            rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += h
        diags[i] = rho.diagonal().real
        if store_full:
            rhos[i] = rho
    if not store_full:
        rhos[0] = rho
    return diags, rhos


def lindblad_dp54(rho0, t_grid, dt_max, diag_eff, rows, cols, vals, offs,
                  fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs,
                  store_full, rtol, atol):
    """Adaptive embedded DP5(4) for the Lindblad master equation."""
    nt = len(t_grid)
    d = rho0.shape[0]
    diags = np.empty((nt, d), dtype=np.float64)
    rhos = np.empty((nt if store_full else 1, d, d), dtype=np.complex128)
    rho = rho0.astype(np.complex128, copy=True)
    diags[0] = rho.diagonal().real
    if store_full:
        rhos[0] = rho
    args = (diag_eff, rows, cols, vals, offs, fmod, phim, nu, phi0,
            jrows, jcols, jvals, joffs, dvecs)
    h = dt_max
    for i in range(1, nt):
        rho, h = _dp54_segment(rho, t_grid[i - 1], t_grid[i], h, dt_max,
                               rtol, atol, _rhs_rho, args)
        diags[i] = rho.diagonal().real
        if store_full:
            rhos[i] = rho
    if not store_full:
        rhos[0] = rho
    return diags, rhos
