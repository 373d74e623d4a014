"""Compiled hot loops (numba)."""

import math

import numpy as np
from numba import njit

_BIG = 2.0 ** 500
_SMALL = 2.0 ** -500
_LOG_BIG = 500.0 * math.log(2.0)


@njit(cache=True)
def _sturm_one(d, e2, sigma, pivmin):
    n = d.shape[0]
    count = 0
    q = d[0] - sigma
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, n):
        q = (d[i] - sigma) - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def sturm_counts(d, e2, sigmas, pivmin):
    out = np.empty(sigmas.shape[0], dtype=np.int64)
    for k in range(sigmas.shape[0]):
        out[k] = _sturm_one(d, e2, sigmas[k], pivmin)
    return out


@njit(cache=True)
def bisect_eigs(d, e2, ks, lo, hi, abs_tol, rel_tol, pivmin):
    out = np.empty(ks.shape[0])
    for m in range(ks.shape[0]):
        k = ks[m]
        a = lo
        b = hi
        for _ in range(2000):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if b - a <= abs_tol + rel_tol * max(abs(a), abs(b)):
                break
            if _sturm_one(d, e2, mid, pivmin) >= k:
                b = mid
            else:
                a = mid
        out[m] = 0.5 * (a + b)
    return out


@njit(cache=True)
def nu1_flux(zs, n):
    m = zs.shape[0]
    mant = np.empty(m)
    logscale = np.zeros(m)
    for j in range(m):
        z = zs[j]
        p = 1.0
        w = 0.0
        off = 0.0
        for k in range(n):
            w = w - z * p
            kk = k + 1.0
            p = p + w / (kk * kk)
            ap = abs(p)
            aw = abs(w)
            if ap > _BIG or aw > _BIG:
                p *= _SMALL
                w *= _SMALL
                off += _LOG_BIG
            elif ap < _SMALL and aw < _SMALL and (ap > 0.0 or aw > 0.0):
                p *= _BIG
                w *= _BIG
                off -= _LOG_BIG
        mant[j] = p
        logscale[j] = off
    return mant, logscale


@njit(cache=True)
def nu1_flux_sequence(z, n_max):
    mant = np.empty(n_max + 1)
    logscale = np.empty(n_max + 1)
    p = 1.0
    w = 0.0
    off = 0.0
    mant[0] = 1.0
    logscale[0] = 0.0
    for k in range(n_max):
        w = w - z * p
        kk = k + 1.0
        p = p + w / (kk * kk)
        ap = abs(p)
        aw = abs(w)
        if ap > _BIG or aw > _BIG:
            p *= _SMALL
            w *= _SMALL
            off += _LOG_BIG
        elif ap < _SMALL and aw < _SMALL and (ap > 0.0 or aw > 0.0):
            p *= _BIG
            w *= _BIG
            off -= _LOG_BIG
        mant[k + 1] = p
        logscale[k + 1] = off
    return mant, logscale


@njit(cache=True)
def p_flux(zs, n, nu):
    m = zs.shape[0]
    det = np.empty(m, dtype=np.complex128)
    ddet = np.empty(m, dtype=np.complex128)
    logscale = np.zeros(m)
    for j in range(m):
        z = zs[j]
        p = 1.0 + 0.0j
        w = 0.0 + 0.0j
        dp = 0.0 + 0.0j
        dw = 0.0 + 0.0j
        off = 0.0
        for k in range(n):
            b = (k + nu) * (k + 1.0 + nu)
            dw = dw - p - z * dp
            w = w - z * p
            p = p + w / b
            dp = dp + dw / b
            big = max(abs(p), abs(w), abs(dp), abs(dw))
            if big > _BIG:
                p *= _SMALL
                w *= _SMALL
                dp *= _SMALL
                dw *= _SMALL
                off += _LOG_BIG
            elif big < _SMALL and big > 0.0:
                p *= _BIG
                w *= _BIG
                dp *= _BIG
                dw *= _BIG
                off -= _LOG_BIG
        det[j] = p + w / (n + nu)
        ddet[j] = dp + dw / (n + nu)
        logscale[j] = off
    return det, ddet, logscale


@njit(cache=True)
def _offdiag_norm2(a):
    n = a.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j] * a[i, j]
    return s


@njit(cache=True)
def jacobi_eigs(a, tol, max_sweeps):
    a = a.copy()
    n = a.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += a[i, j] * a[i, j]
    thresh = (tol * math.sqrt(total)) ** 2
    sweeps = 0
    while _offdiag_norm2(a) > thresh:
        if sweeps >= max_sweeps:
            return np.diag(a).copy(), -1
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.hypot(theta, 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.diag(a).copy(), sweeps
