"""Hot numeric loops with numba acceleration and numpy fallbacks.

Set PEAKCAP_DISABLE_NUMBA=1 to force the numpy path. Both paths accumulate
in the same fixed order for the sum-shaped kernels (rational evaluation,
ascent), so results are bit-identical between them; the batched patch
quadrature uses numpy's pairwise summation in the fallback and sequential
summation under numba, which agree only to rounding (documented in tests).
All kernels are serial: determinism may never depend on thread count.
"""

from __future__ import annotations

import math
import os

import numpy as np

_DISABLED = os.environ.get("PEAKCAP_DISABLE_NUMBA", "") == "1"

try:
    if _DISABLED:
        raise ImportError("disabled by PEAKCAP_DISABLE_NUMBA")
    from numba import jit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def jit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        return wrap


# ---------------------------------------------------------------------------
# rational evaluation: out[i] = sum_k coeffs[k] / (z[i] - poles[k])
# Explicit real arithmetic keeps the two paths bit-identical.


@jit(nopython=True, cache=True)
def _rational_eval_nb(zr, zi, pr, pi, cr, ci, outr, outi):
    for i in range(zr.shape[0]):
        sr = 0.0
        si = 0.0
        for k in range(pr.shape[0]):
            dr = zr[i] - pr[k]
            di = zi[i] - pi[k]
            den = dr * dr + di * di
            sr = sr + (cr[k] * dr + ci[k] * di) / den
            si = si + (ci[k] * dr - cr[k] * di) / den
        outr[i] = sr
        outi[i] = si


def _rational_eval_np(zr, zi, pr, pi, cr, ci, outr, outi):
    outr[:] = 0.0
    outi[:] = 0.0
    for k in range(pr.shape[0]):
        dr = zr - pr[k]
        di = zi - pi[k]
        den = dr * dr + di * di
        outr += (cr[k] * dr + ci[k] * di) / den
        outi += (ci[k] * dr - cr[k] * di) / den


def rational_eval(z: np.ndarray, poles: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Values of the rational function sum c_k/(z - p_k) at each z."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    poles = np.ascontiguousarray(poles, dtype=np.complex128)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    outr = np.empty(z.shape[0])
    outi = np.empty(z.shape[0])
    args = (
        np.ascontiguousarray(z.real), np.ascontiguousarray(z.imag),
        np.ascontiguousarray(poles.real), np.ascontiguousarray(poles.imag),
        np.ascontiguousarray(coeffs.real), np.ascontiguousarray(coeffs.imag),
        outr, outi,
    )
    if HAS_NUMBA:
        _rational_eval_nb(*args)
    else:
        _rational_eval_np(*args)
    return outr + 1j * outi


# ---------------------------------------------------------------------------
# running max of |c|/|z - p| over a grid (single-pole member moduli)


@jit(nopython=True, cache=True)
def _runmax_update_nb(runmax, zr, zi, pr, pi, cabs):
    for i in range(zr.shape[0]):
        dr = zr[i] - pr
        di = zi[i] - pi
        v = cabs / math.sqrt(dr * dr + di * di)
        if v > runmax[i]:
            runmax[i] = v


def _runmax_update_np(runmax, zr, zi, pr, pi, cabs):
    dr = zr - pr
    di = zi - pi
    v = cabs / np.sqrt(dr * dr + di * di)
    np.maximum(runmax, v, out=runmax)


def runmax_update(runmax: np.ndarray, z: np.ndarray, pole: complex, cabs: float) -> None:
    args = (runmax, np.ascontiguousarray(z.real), np.ascontiguousarray(z.imag),
            float(pole.real), float(pole.imag), float(cabs))
    if HAS_NUMBA:
        _runmax_update_nb(*args)
    else:
        _runmax_update_np(*args)


# ---------------------------------------------------------------------------
# admissibility scan: is max over the masked points of |c|/|z-p| <= bar?
# The numba path exits early on the first violation; only the boolean is
# contract, not the partial max.


@jit(nopython=True, cache=True)
def _admissible_nb(zr, zi, pr, pi, cabs, bar):
    for i in range(zr.shape[0]):
        dr = zr[i] - pr
        di = zi[i] - pi
        if cabs / math.sqrt(dr * dr + di * di) > bar:
            return False
    return True


def _admissible_np(zr, zi, pr, pi, cabs, bar):
    dr = zr - pr
    di = zi - pi
    if zr.shape[0] == 0:
        return True
    return bool(np.max(cabs / np.sqrt(dr * dr + di * di)) <= bar)


def member_admissible(zw: np.ndarray, pole: complex, cabs: float, bar: float) -> bool:
    args = (np.ascontiguousarray(zw.real), np.ascontiguousarray(zw.imag),
            float(pole.real), float(pole.imag), float(cabs), float(bar))
    if HAS_NUMBA:
        return bool(_admissible_nb(*args))
    return _admissible_np(*args)


# ---------------------------------------------------------------------------
# per-pole minimum distance to a grid (validates sup|h_j| for pole members)


@jit(nopython=True, cache=True)
def _min_dist_nb(zr, zi, pr, pi, out):
    for k in range(pr.shape[0]):
        best = np.inf
        for i in range(zr.shape[0]):
            dr = zr[i] - pr[k]
            di = zi[i] - pi[k]
            d2 = dr * dr + di * di
            if d2 < best:
                best = d2
        out[k] = math.sqrt(best)


def _min_dist_np(zr, zi, pr, pi, out):
    for k in range(pr.shape[0]):
        dr = zr - pr[k]
        di = zi - pi[k]
        out[k] = np.sqrt(np.min(dr * dr + di * di))


def pole_min_dist(z: np.ndarray, poles: np.ndarray) -> np.ndarray:
    """min over grid of |z - p| for each pole p."""
    poles = np.ascontiguousarray(poles, dtype=np.complex128)
    out = np.empty(poles.shape[0])
    args = (np.ascontiguousarray(z.real), np.ascontiguousarray(z.imag),
            np.ascontiguousarray(poles.real), np.ascontiguousarray(poles.imag), out)
    if HAS_NUMBA:
        _min_dist_nb(*args)
    else:
        _min_dist_np(*args)
    return out


# ---------------------------------------------------------------------------
# projected coordinate ascent on rational coefficients
#
# Maximizes Re sum(c) / max(1, sup_samples |K c|). Trial steps on one real
# coordinate at a time; a move is kept when the scale-invariant objective
# improves, and the iterate is rescaled back to the feasible sup <= 1 ball
# whenever a kept move leaves it. perms fixes the coordinate visiting order,
# so results are deterministic for a given seed.


def _ascent_python(K, perms, base, n_levels, npmod):
    m, n = K.shape
    sweeps = perms.shape[0]
    c = np.zeros(n, dtype=np.complex128)
    f = np.zeros(m, dtype=np.complex128)
    best = 0.0
    csum = 0.0
    for sw in range(sweeps):
        step = 0.5 ** ((sw * n_levels) // max(sweeps, 1))
        for t in range(2 * n):
            j = perms[sw, t]
            jj = j // 2
            for sgn in (1.0, -1.0):
                if j % 2 == 0:
                    dc = complex(sgn * step * base[jj], 0.0)
                else:
                    dc = complex(0.0, sgn * step * base[jj])
                f_try = f + dc * K[:, jj]
                sup2 = npmod.max(f_try.real * f_try.real + f_try.imag * f_try.imag)
                denom = math.sqrt(sup2) if sup2 > 1.0 else 1.0
                val = (csum + dc.real) / denom
                if val > best + 1e-15:
                    c[jj] += dc
                    csum += dc.real
                    f = f_try
                    if sup2 > 1.0:
                        sup = math.sqrt(sup2)
                        c /= sup
                        f /= sup
                        csum /= sup
                    best = val
                    break
    return c


@jit(nopython=True, cache=True)
def _ascent_nb(K, perms, base, n_levels):
    m, n = K.shape
    sweeps = perms.shape[0]
    c = np.zeros(n, dtype=np.complex128)
    f = np.zeros(m, dtype=np.complex128)
    f_try = np.zeros(m, dtype=np.complex128)
    best = 0.0
    csum = 0.0
    for sw in range(sweeps):
        step = 0.5 ** ((sw * n_levels) // max(sweeps, 1))
        for t in range(2 * n):
            j = perms[sw, t]
            jj = j // 2
            for sgn_i in range(2):
                sgn = 1.0 if sgn_i == 0 else -1.0
                if j % 2 == 0:
                    dc = complex(sgn * step * base[jj], 0.0)
                else:
                    dc = complex(0.0, sgn * step * base[jj])
                sup2 = 0.0
                for i in range(m):
                    v = f[i] + dc * K[i, jj]
                    f_try[i] = v
                    a = v.real * v.real + v.imag * v.imag
                    if a > sup2:
                        sup2 = a
                denom = math.sqrt(sup2) if sup2 > 1.0 else 1.0
                val = (csum + dc.real) / denom
                if val > best + 1e-15:
                    c[jj] += dc
                    csum += dc.real
                    for i in range(m):
                        f[i] = f_try[i]
                    if sup2 > 1.0:
                        sup = math.sqrt(sup2)
                        for k in range(n):
                            c[k] /= sup
                        for i in range(m):
                            f[i] /= sup
                        csum /= sup
                    best = val
                    break
    return c


def coord_ascent(K: np.ndarray, perms: np.ndarray, base: np.ndarray,
                 n_levels: int = 24) -> np.ndarray:
    K = np.ascontiguousarray(K, dtype=np.complex128)
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    base = np.ascontiguousarray(base, dtype=np.float64)
    if HAS_NUMBA:
        return _ascent_nb(K, perms, base, n_levels)
    return _ascent_python(K, perms, base, n_levels, np)


# ---------------------------------------------------------------------------
# Monte Carlo membership: point inside any of the closed disks


@jit(nopython=True, cache=True)
def _inside_nb(xr, xi, cr, ci, rad, out):
    for i in range(xr.shape[0]):
        hit = False
        for k in range(cr.shape[0]):
            dr = xr[i] - cr[k]
            di = xi[i] - ci[k]
            if dr * dr + di * di <= rad[k] * rad[k]:
                hit = True
                break
        out[i] = hit


def _inside_np(xr, xi, cr, ci, rad, out):
    out[:] = False
    for k in range(cr.shape[0]):
        dr = xr - cr[k]
        di = xi - ci[k]
        out |= dr * dr + di * di <= rad[k] * rad[k]


def inside_any_disk(pts: np.ndarray, centers: np.ndarray, radii: np.ndarray) -> np.ndarray:
    out = np.zeros(pts.shape[0], dtype=np.bool_)
    if len(centers) == 0:
        return out
    centers = np.ascontiguousarray(centers, dtype=np.complex128)
    args = (np.ascontiguousarray(pts.real), np.ascontiguousarray(pts.imag),
            np.ascontiguousarray(centers.real), np.ascontiguousarray(centers.imag),
            np.ascontiguousarray(radii, dtype=np.float64), out)
    if HAS_NUMBA:
        _inside_nb(*args)
    else:
        _inside_np(*args)
    return out


# ---------------------------------------------------------------------------
# batched uniform-disk-patch potential on a 128x128 polar midpoint grid.
# The cell containing the query point is replaced by the exact integral of
# 1/|w - z| over the equal-area disk centered at z (2*pi*r_eq), which keeps
# the quadrature finite through the integrable singularity.


@jit(nopython=True, cache=True)
def _patch_batch_nb(zr, zi, wr, wi, R, sigma, ncell, out):
    drad = R / ncell
    dth = 2.0 * math.pi / ncell
    for q in range(zr.shape[0]):
        d = math.sqrt((zr[q] - wr) ** 2 + (zi[q] - wi) ** 2)
        acc = 0.0
        sing_i = -1
        sing_j = -1
        if d < R:
            sing_i = int(d / drad)
            if sing_i > ncell - 1:
                sing_i = ncell - 1
            ang = math.atan2(zi[q] - wi, zr[q] - wr) % (2.0 * math.pi)
            sing_j = int(ang / dth) % ncell
        for i in range(ncell):
            rho = (i + 0.5) * drad
            area = dth * rho * drad
            for j in range(ncell):
                if i == sing_i and j == sing_j:
                    acc += 2.0 * math.sqrt(math.pi * area)
                else:
                    th = (j + 0.5) * dth
                    pr = wr + rho * math.cos(th)
                    pi_ = wi + rho * math.sin(th)
                    dd = math.sqrt((pr - zr[q]) ** 2 + (pi_ - zi[q]) ** 2)
                    acc += area / dd
        out[q] = sigma * acc


def _patch_batch_np(zr, zi, wr, wi, R, sigma, ncell, out):
    drad = R / ncell
    dth = 2.0 * np.pi / ncell
    idx = np.arange(ncell)
    rho = (idx + 0.5) * drad
    th = (idx + 0.5) * dth
    pr = wr + rho[:, None] * np.cos(th)[None, :]
    pi_ = wi + rho[:, None] * np.sin(th)[None, :]
    area = dth * rho[:, None] * drad * np.ones((1, ncell))
    for q in range(zr.shape[0]):
        dd = np.sqrt((pr - zr[q]) ** 2 + (pi_ - zi[q]) ** 2)
        term = area / dd
        d = math.sqrt((zr[q] - wr) ** 2 + (zi[q] - wi) ** 2)
        if d < R:
            si = min(int(d / drad), ncell - 1)
            ang = math.atan2(zi[q] - wi, zr[q] - wr) % (2.0 * np.pi)
            sj = int(ang / dth) % ncell
            term[si, sj] = 2.0 * math.sqrt(math.pi * area[si, 0])
        out[q] = sigma * term.sum()


def patch_potential_batch(z: np.ndarray, center: complex, radius: float,
                          density: float, ncell: int = 128) -> np.ndarray:
    """Patch contribution to the Newton potential at each query point."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    out = np.empty(z.shape[0])
    args = (np.ascontiguousarray(z.real), np.ascontiguousarray(z.imag),
            float(center.real), float(center.imag), float(radius),
            float(density), int(ncell), out)
    if HAS_NUMBA:
        _patch_batch_nb(*args)
    else:
        _patch_batch_np(*args)
    return out
