"""Numba-accelerated kernels; loop-level twins of `kernels_numpy`.

Same coupling-term representation and integrator algorithms as the numpy
backend.  All drivers are nopython-jitted with nogil so parameter sweeps can
run on a thread pool.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Dormand-Prince 5(4) tableau, dense layout: stage s uses A[s, :s]
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = np.zeros((7, 6))
_DP_A[1, :1] = (1 / 5,)
_DP_A[2, :2] = (3 / 40, 9 / 40)
_DP_A[3, :3] = (44 / 45, -56 / 15, 32 / 9)
_DP_A[4, :4] = (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729)
_DP_A[5, :5] = (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656)
_DP_A[6, :6] = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
_DP_E = np.array([35 / 384 - 5179 / 57600, 0.0, 500 / 1113 - 7571 / 16695,
                  125 / 192 - 393 / 640, -2187 / 6784 + 92097 / 339200,
                  11 / 84 - 187 / 2100, -1 / 40])

MIN_STEP_FRACTION = 1e-12


@njit(cache=True, nogil=True)
def _rhs_psi(out, psi, t, diag, rows, cols, vals, offs, fmod, phim, nu, phi0):
    d = psi.shape[0]
    for i in range(d):
        out[i] = diag[i] * psi[i]
    for k in range(fmod.shape[0]):
        u = np.exp(-1j * (fmod[k] * np.sin(nu * t - phim[k] + phi0)))
        for m in range(offs[k], offs[k + 1]):
            uv = u * vals[m]
            out[rows[m]] += uv * psi[cols[m]]
            out[cols[m]] += np.conj(uv) * psi[rows[m]]
    for i in range(d):
        out[i] *= -1j


@njit(cache=True, nogil=True)
def _rhs_rho(out, cbuf, rho, t, diag_eff, rows, cols, vals, offs, fmod, phim,
             nu, phi0, jrows, jcols, jvals, joffs, dvecs):
    d = rho.shape[0]
    for i in range(d):
        de = diag_eff[i]
        for j in range(d):
            cbuf[i, j] = de * rho[i, j]
    for k in range(fmod.shape[0]):
        u = np.exp(-1j * (fmod[k] * np.sin(nu * t - phim[k] + phi0)))
        for m in range(offs[k], offs[k + 1]):
            uv = u * vals[m]
            uvc = np.conj(uv)
            rm = rows[m]
            cm = cols[m]
            for j in range(d):
                cbuf[rm, j] += uv * rho[cm, j]
                cbuf[cm, j] += uvc * rho[rm, j]
    for i in range(d):
        for j in range(d):
            out[i, j] = -1j * (cbuf[i, j] - np.conj(cbuf[j, i]))
    for ch in range(joffs.shape[0] - 1):
        for m in range(joffs[ch], joffs[ch + 1]):
            vm = jvals[m]
            rm = jrows[m]
            cm = jcols[m]
            for mp in range(joffs[ch], joffs[ch + 1]):
                out[rm, jrows[mp]] += vm * np.conj(jvals[mp]) * rho[cm, jcols[mp]]
    for ch in range(dvecs.shape[0]):
        for i in range(d):
            li = dvecs[ch, i]
            for j in range(d):
                out[i, j] += li * np.conj(dvecs[ch, j]) * rho[i, j]


@njit(cache=True, nogil=True)
def schrodinger_rk4(psi0, t_grid, dt_max, diag, rows, cols, vals, offs,
                    fmod, phim, nu, phi0):
    nt = t_grid.shape[0]
    d = psi0.shape[0]
    out = np.empty((nt, d), dtype=np.complex128)
    psi = psi0.astype(np.complex128)
    out[0] = psi
    k1 = np.empty(d, np.complex128)
    k2 = np.empty(d, np.complex128)
    k3 = np.empty(d, np.complex128)
    k4 = np.empty(d, np.complex128)
    tmp = np.empty(d, np.complex128)
    for i in range(1, nt):
        seg = t_grid[i] - t_grid[i - 1]
        nstep = max(1, int(np.ceil(seg / dt_max - 1e-12)))
        h = seg / nstep
        t = t_grid[i - 1]
        for _ in range(nstep):
            _rhs_psi(k1, psi, t, diag, rows, cols, vals, offs, fmod, phim, nu, phi0)
            for n in range(d):
                tmp[n] = psi[n] + 0.5 * h * k1[n]
            _rhs_psi(k2, tmp, t + 0.5 * h, diag, rows, cols, vals, offs, fmod, phim, nu, phi0)
            for n in range(d):
                tmp[n] = psi[n] + 0.5 * h * k2[n]
            _rhs_psi(k3, tmp, t + 0.5 * h, diag, rows, cols, vals, offs, fmod, phim, nu, phi0)
            for n in range(d):
                tmp[n] = psi[n] + h * k3[n]
            _rhs_psi(k4, tmp, t + h, diag, rows, cols, vals, offs, fmod, phim, nu, phi0)
            for n in range(d):
                psi[n] = psi[n] + (h / 6.0) * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n])
            t += h
        out[i] = psi
    return out


@njit(cache=True, nogil=True)
def schrodinger_dp54(psi0, t_grid, dt_max, diag, rows, cols, vals, offs,
                     fmod, phim, nu, phi0, rtol, atol):
    nt = t_grid.shape[0]
    d = psi0.shape[0]
    out = np.empty((nt, d), dtype=np.complex128)
    y = psi0.astype(np.complex128)
    out[0] = y
    ks = np.empty((7, d), np.complex128)
    ytmp = np.empty(d, np.complex128)
    h = dt_max
    for i in range(1, nt):
        t0 = t_grid[i - 1]
        t1 = t_grid[i]
        span = t1 - t0
        t = t0
        h = min(h, dt_max)
        _rhs_psi(ks[0], y, t, diag, rows, cols, vals, offs, fmod, phim, nu, phi0)
        while t < t1 - MIN_STEP_FRACTION * span:
            if h > t1 - t:
                h = t1 - t
            err = 0.0
            while True:
                for s in range(1, 7):
                    for n in range(d):
                        acc = 0.0 + 0.0j
                        for m in range(s):
                            acc += _DP_A[s, m] * ks[m, n]
                        ytmp[n] = y[n] + h * acc
                    _rhs_psi(ks[s], ytmp, t + _DP_C[s] * h,
                             diag, rows, cols, vals, offs, fmod, phim, nu, phi0)
                # stage 6 input is the 5th-order solution (FSAL)
                err = 0.0
                for n in range(d):
                    e = 0.0 + 0.0j
                    for m in range(7):
                        e += _DP_E[m] * ks[m, n]
                    sc = atol + rtol * max(abs(y[n]), abs(ytmp[n]))
                    q = abs(h * e) / sc
                    err += q * q
                err = np.sqrt(err / d)
                if err <= 1.0 or h <= MIN_STEP_FRACTION * span:
                    break
                fac = 0.9 * err ** -0.2
                if fac < 0.2:
                    fac = 0.2
                h = max(h * fac, MIN_STEP_FRACTION * span)
                _rhs_psi(ks[0], y, t, diag, rows, cols, vals, offs, fmod, phim, nu, phi0)
            t += h
            for n in range(d):
                y[n] = ytmp[n]
                ks[0, n] = ks[6, n]
            if err == 0.0:
                fac = 5.0
            else:
                fac = 0.9 * err ** -0.2
                if fac > 5.0:
                    fac = 5.0
                elif fac < 0.2:
                    fac = 0.2
            h = min(h * fac, dt_max)
        out[i] = y
    return out


@njit(cache=True, nogil=True)
def lindblad_rk4(rho0, t_grid, dt_max, diag_eff, rows, cols, vals, offs,
                 fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs,
                 store_full):
    nt = t_grid.shape[0]
    d = rho0.shape[0]
    diags = np.empty((nt, d), np.float64)
    n_keep = nt if store_full else 1
    rhos = np.empty((n_keep, d, d), np.complex128)
    rho = rho0.astype(np.complex128)
    for n in range(d):
        diags[0, n] = rho[n, n].real
    if store_full:
        rhos[0] = rho
    k1 = np.empty((d, d), np.complex128)
    k2 = np.empty((d, d), np.complex128)
    k3 = np.empty((d, d), np.complex128)
    k4 = np.empty((d, d), np.complex128)
    tmp = np.empty((d, d), np.complex128)
    cbuf = np.empty((d, d), np.complex128)
    for i in range(1, nt):
        seg = t_grid[i] - t_grid[i - 1]
        nstep = max(1, int(np.ceil(seg / dt_max - 1e-12)))
        h = seg / nstep
        t = t_grid[i - 1]
        for _ in range(nstep):
            _rhs_rho(k1, cbuf, rho, t, diag_eff, rows, cols, vals, offs,
                     fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs)
            for a in range(d):
                for b in range(d):
                    tmp[a, b] = rho[a, b] + 0.5 * h * k1[a, b]
            _rhs_rho(k2, cbuf, tmp, t + 0.5 * h, diag_eff, rows, cols, vals, offs,
                     fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs)
            for a in range(d):
                for b in range(d):
                    tmp[a, b] = rho[a, b] + 0.5 * h * k2[a, b]
            _rhs_rho(k3, cbuf, tmp, t + 0.5 * h, diag_eff, rows, cols, vals, offs,
                     fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs)
            for a in range(d):
                for b in range(d):
                    tmp[a, b] = rho[a, b] + h * k3[a, b]
            _rhs_rho(k4, cbuf, tmp, t + h, diag_eff, rows, cols, vals, offs,
                     fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs)
            for a in range(d):
                for b in range(d):
                    rho[a, b] = rho[a, b] + (h / 6.0) * (
                        k1[a, b] + 2.0 * k2[a, b] + 2.0 * k3[a, b] + k4[a, b])
            t += h
        for n in range(d):
            diags[i, n] = rho[n, n].real
        if store_full:
            rhos[i] = rho
    if not store_full:
        rhos[0] = rho
    return diags, rhos


@njit(cache=True, nogil=True)
def lindblad_dp54(rho0, t_grid, dt_max, diag_eff, rows, cols, vals, offs,
                  fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs,
                  store_full, rtol, atol):
    nt = t_grid.shape[0]
    d = rho0.shape[0]
    diags = np.empty((nt, d), np.float64)
    n_keep = nt if store_full else 1
    rhos = np.empty((n_keep, d, d), np.complex128)
    y = rho0.astype(np.complex128)
    for n in range(d):
        diags[0, n] = y[n, n].real
    if store_full:
        rhos[0] = y
    ks = np.empty((7, d, d), np.complex128)
    ytmp = np.empty((d, d), np.complex128)
    cbuf = np.empty((d, d), np.complex128)
    h = dt_max
    for i in range(1, nt):
        t0 = t_grid[i - 1]
        t1 = t_grid[i]
        span = t1 - t0
        t = t0
        h = min(h, dt_max)
        _rhs_rho(ks[0], cbuf, y, t, diag_eff, rows, cols, vals, offs,
                 fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs)
        while t < t1 - MIN_STEP_FRACTION * span:
            if h > t1 - t:
                h = t1 - t
            err = 0.0
            while True:
                for s in range(1, 7):
                    for a in range(d):
                        for b in range(d):
                            acc = 0.0 + 0.0j
                            for m in range(s):
                                acc += _DP_A[s, m] * ks[m, a, b]
                            ytmp[a, b] = y[a, b] + h * acc
                    _rhs_rho(ks[s], cbuf, ytmp, t + _DP_C[s] * h, diag_eff,
                             rows, cols, vals, offs, fmod, phim, nu, phi0,
                             jrows, jcols, jvals, joffs, dvecs)
                err = 0.0
                for a in range(d):
                    for b in range(d):
                        e = 0.0 + 0.0j
                        for m in range(7):
                            e += _DP_E[m] * ks[m, a, b]
                        sc = atol + rtol * max(abs(y[a, b]), abs(ytmp[a, b]))
                        q = abs(h * e) / sc
                        err += q * q
                err = np.sqrt(err / (d * d))
                if err <= 1.0 or h <= MIN_STEP_FRACTION * span:
                    break
                fac = 0.9 * err ** -0.2
                if fac < 0.2:
                    fac = 0.2
                h = max(h * fac, MIN_STEP_FRACTION * span)
                _rhs_rho(ks[0], cbuf, y, t, diag_eff, rows, cols, vals, offs,
                         fmod, phim, nu, phi0, jrows, jcols, jvals, joffs, dvecs)
            t += h
            for a in range(d):
                for b in range(d):
                    y[a, b] = ytmp[a, b]
                    ks[0, a, b] = ks[6, a, b]
            if err == 0.0:
                fac = 5.0
            else:
                fac = 0.9 * err ** -0.2
                if fac > 5.0:
                    fac = 5.0
                elif fac < 0.2:
                    fac = 0.2
            h = min(h * fac, dt_max)
        for n in range(d):
            diags[i, n] = y[n, n].real
        if store_full:
            rhos[i] = y
    if not store_full:
        rhos[0] = y
    return diags, rhos
