"""Pure-numpy versions of the hot loops.

Every recurrence here is sequential in its index, so vectorisation runs over
the batch axis (shifts, evaluation points) instead. Results agree with the
compiled kernels up to rounding.
"""

import math

import numpy as np

_BIG = 2.0 ** 500
_SMALL = 2.0 ** -500
_LOG_BIG = 500.0 * math.log(2.0)


def sturm_counts(d, e2, sigmas, pivmin):
    sigmas = np.asarray(sigmas, dtype=float)
    q = d[0] - sigmas
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0.0).astype(np.int64)
    for i in range(1, d.shape[0]):
        q = (d[i] - sigmas) - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0.0
    return count


def bisect_eigs(d, e2, ks, lo, hi, abs_tol, rel_tol, pivmin):
    ks = np.asarray(ks, dtype=np.int64)
    a = np.full(ks.shape[0], float(lo))
    b = np.full(ks.shape[0], float(hi))
    for _ in range(2000):
        mid = 0.5 * (a + b)
        active = (mid > a) & (mid < b) & (b - a > abs_tol + rel_tol * np.maximum(np.abs(a), np.abs(b)))
        if not active.any():
            break
        counts = sturm_counts(d, e2, mid[active], pivmin)
        idx = np.flatnonzero(active)
        upper = counts >= ks[active]
        b[idx[upper]] = mid[active][upper]
        a[idx[~upper]] = mid[active][~upper]
    return 0.5 * (a + b)


def _rescale(off, *arrays):
    big = np.max(np.abs(np.stack(arrays)), axis=0)
    down = big > _BIG
    up = (big < _SMALL) & (big > 0.0)
    if down.any() or up.any():
        factor = np.where(down, _SMALL, np.where(up, _BIG, 1.0))
        arrays = tuple(x * factor for x in arrays)
        off = off + np.where(down, _LOG_BIG, np.where(up, -_LOG_BIG, 0.0))
    return (off,) + arrays


def nu1_flux(zs, n):
    zs = np.asarray(zs, dtype=float)
    p = np.ones_like(zs)
    w = np.zeros_like(zs)
    off = np.zeros_like(zs)
    for k in range(n):
        w = w - zs * p
        p = p + w / ((k + 1.0) * (k + 1.0))
        off, p, w = _rescale(off, p, w)
    return p, off


def nu1_flux_sequence(z, n_max):
    mant = np.empty(n_max + 1)
    logscale = np.empty(n_max + 1)
    mant[0], logscale[0] = 1.0, 0.0
    p = np.array([1.0])
    w = np.array([0.0])
    off = np.array([0.0])
    for k in range(n_max):
        w = w - z * p
        p = p + w / ((k + 1.0) * (k + 1.0))
        off, p, w = _rescale(off, p, w)
        mant[k + 1] = p[0]
        logscale[k + 1] = off[0]
    return mant, logscale


def p_flux(zs, n, nu):
    zs = np.asarray(zs, dtype=complex)
    p = np.ones_like(zs)
    w = np.zeros_like(zs)
    dp = np.zeros_like(zs)
    dw = np.zeros_like(zs)
    off = np.zeros(zs.shape)
    for k in range(n):
        b = (k + nu) * (k + 1.0 + nu)
        dw = dw - p - zs * dp
        w = w - zs * p
        p = p + w / b
        dp = dp + dw / b
        off, p, w, dp, dw = _rescale(off, p, w, dp, dw)
    return p + w / (n + nu), dp + dw / (n + nu), off


def _round_robin(n):
    # circle-method pairings; every pair (p, q) appears once per sweep
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_eigs(a, tol, max_sweeps):
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy(), 0
    thresh = (tol * np.linalg.norm(a)) ** 2
    rounds = _round_robin(n)
    sweeps = 0
    while True:
        off = np.sum(a * a) - np.sum(a.diagonal() ** 2)
        if off <= thresh:
            return a.diagonal().copy(), sweeps
        if sweeps >= max_sweeps:
            return a.diagonal().copy(), -1
        sweeps += 1
        for ps, qs in rounds:
            apq = a[ps, qs]
            nz = apq != 0.0
            if not nz.any():
                continue
            ps, qs, apq = ps[nz], qs[nz], apq[nz]
            with np.errstate(over="ignore", divide="ignore"):
                theta = (a[qs, qs] - a[ps, ps]) / (2.0 * apq)
                # hypot avoids overflow of theta^2; theta = inf gives t = 0
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            col_p = a[:, ps].copy()
            col_q = a[:, qs]
            a[:, ps] = c * col_p - s * col_q
            a[:, qs] = s * col_p + c * col_q
            row_p = a[ps, :].copy()
            row_q = a[qs, :]
            a[ps, :] = c[:, None] * row_p - s[:, None] * row_q
            a[qs, :] = s[:, None] * row_p + c[:, None] * row_q
            a[ps, qs] = 0.0
            a[qs, ps] = 0.0
