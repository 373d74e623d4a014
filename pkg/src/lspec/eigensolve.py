"""Spectra of Hilbert L-matrices at scale.

Everything large-scale runs on the tridiagonal inverse ``T = L_n(nu)^{-1}``:
Sturm (inertia) counts are O(n) and bisection on them yields any selected
eigenvalue. Since ``mu = 1/t``, the small eigenvalues of ``L_n`` come from the
large eigenvalues of ``T`` and inherit relative accuracy close to machine
precision. The top of the spectrum (``mu`` near 4) is the bottom of ``T``,
where bisection only has absolute accuracy ``~ eps * ||T|| ~ eps * 4 n^2``;
for ``nu = 1`` those eigenvalues are instead located as roots of the
well-scaled polynomial ``q_n``.

A dense cyclic-Jacobi solver is kept as an independent oracle for small n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .charpoly import q_n
from .errors import BracketError, BudgetExceededError, DomainError
from .lmatrix import DenseSym, SymTridiagonal, hilbert_l_sequence, inverse_tridiagonal, jacobi_B
from .specfun import KAPPA

#: Largest order accepted by the O(n) Sturm routines (two float arrays).
MAX_STURM_N = 20_000_000
#: Largest order accepted by the dense Jacobi oracle.
MAX_DENSE_N = 2048
#: Largest root index handled by :func:`find_large_eigs`.
MAX_LARGE_J = 20

_EPS = np.finfo(float).eps
_SAFEMIN = np.finfo(float).tiny


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues with provenance.

    Attributes
    ----------
    values : ndarray
        Eigenvalues in ascending order.
    n, nu : int, float
        Matrix order and parameter.
    method : str
        ``"bisection"``, ``"bisection+qn"``, ``"jacobi"`` ...
    abs_tol : float
        Requested absolute tolerance of the underlying solver.
    errors : ndarray
        Per-eigenvalue error bar estimate (same shape as ``values``).
    indices : ndarray
        1-based positions of ``values`` in the full ascending spectrum.
    """

    values: np.ndarray
    n: int
    nu: float
    method: str
    abs_tol: float
    errors: np.ndarray = field(default=None)
    indices: np.ndarray = field(default=None)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if self.errors is None:
            object.__setattr__(self, "errors", np.zeros_like(v))
        if self.indices is None:
            object.__setattr__(self, "indices", np.arange(1, v.size + 1))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class CountQuery:
    """Number of eigenvalues of ``L_n(nu)`` above ``threshold``."""

    n: int
    nu: float
    threshold: float
    count: int


def _pivmin(T: SymTridiagonal) -> float:
    e2max = float(np.max(T.offdiag ** 2)) if T.n > 1 else 0.0
    return _SAFEMIN * max(1.0, e2max)


def _arrays(T: SymTridiagonal) -> tuple[np.ndarray, np.ndarray]:
    d = np.ascontiguousarray(T.diag, dtype=float)
    e2 = np.ascontiguousarray(T.offdiag ** 2, dtype=float)
    if e2.size == 0:
        e2 = np.zeros(1)
    return d, e2


def _check_size(n: int) -> None:
    if n > MAX_STURM_N:
        raise DomainError(f"n={n} exceeds the Sturm memory cap {MAX_STURM_N}")


def sturm_counts(T: SymTridiagonal, sigmas) -> np.ndarray:
    """Vectorised :func:`sturm_count` over an array of shifts."""
    d, e2 = _arrays(T)
    s = np.ascontiguousarray(np.atleast_1d(np.asarray(sigmas, dtype=float)))
    return kernels.sturm_counts(d, e2, s, _pivmin(T))


def sturm_count(T: SymTridiagonal, sigma: float) -> int:
    """Number of eigenvalues of ``T`` strictly below ``sigma``.

    Counts negative pivots of ``T - sigma I = L D L^T``; a pivot smaller in
    magnitude than ``pivmin`` is replaced by ``-pivmin``, which gives the
    exact count of a matrix within ``pivmin`` of ``T``.
    """
    return int(sturm_counts(T, [sigma])[0])


def eigs_bisection(T: SymTridiagonal, index_range: tuple[int, int] | None = None,
                   abs_tol: float = 0.0, rel_tol: float = 2 * _EPS) -> np.ndarray:
    """Selected eigenvalues of ``T`` by Sturm bisection.

    Parameters
    ----------
    T : SymTridiagonal
    index_range : (lo, hi), optional
        1-based inclusive range in the ascending order; default all.
    abs_tol, rel_tol : float
        Bisection stops once the bracket width is below
        ``abs_tol + rel_tol * max(|a|, |b|)`` or the midpoint no longer moves.

    Returns
    -------
    ndarray
        Eigenvalues ``lambda_lo .. lambda_hi`` in ascending order.
    """
    n = T.n
    lo, hi = index_range if index_range is not None else (1, n)
    if not 1 <= lo <= hi <= n:
        raise DomainError(f"index range ({lo}, {hi}) invalid for n={n}")
    if abs_tol < 0:
        raise DomainError("abs_tol must be nonnegative")
    _check_size(n)
    g_lo, g_hi = T.gershgorin()
    pad = 2 * _EPS * max(abs(g_lo), abs(g_hi)) + _SAFEMIN
    d, e2 = _arrays(T)
    ks = np.arange(lo, hi + 1, dtype=np.int64)
    vals = kernels.bisect_eigs(d, e2, ks, g_lo - pad, g_hi + pad, float(abs_tol), float(rel_tol), _pivmin(T))
    return np.sort(vals)


def _t_indices_for_mu(j: np.ndarray, n: int, k_neg: int) -> np.ndarray:
    # mu ascending: 1/t for negative t (t descending), then positive t descending
    return np.where(j <= k_neg, k_neg - j + 1, n + k_neg - j + 1)


def spectrum_L(n: int, nu: float, abs_tol: float = 0.0, indices=None, polish: bool = True) -> Spectrum:
    """Eigenvalues of ``L_n(nu)`` as reciprocals of those of its inverse.

    Parameters
    ----------
    n : int
    nu : float
        Any value that keeps ``L_n(nu)`` regular; negative ``nu`` gives mixed
        signs, handled by sign-aware reordering.
    abs_tol : float
        Absolute bisection tolerance on the inverse (0 = full precision).
    indices : sequence of int, optional
        1-based indices ``j`` of ``mu_j`` (ascending) to compute; default all.
    polish : bool
        For ``nu = 1`` replace the (at most 20) largest requested eigenvalues
        by roots of ``q_n`` (see :func:`find_large_eigs`).

    Returns
    -------
    Spectrum
        With per-value error bars: relative ``~ 4 eps`` for the bisection
        values plus ``(abs_tol + 8 eps ||T||) mu^2`` from the absolute error
        on the inverse; ``4 eps mu`` for polished values.
    """
    _check_size(n)
    seq = hilbert_l_sequence(n, nu)
    if n == 1:
        if indices is not None and list(np.atleast_1d(indices)) != [1]:
            raise DomainError("indices must lie in 1..1")
        mu = float(seq.a[0])
        return Spectrum(np.array([mu]), 1, float(nu), "exact", float(abs_tol),
                        np.array([_EPS * abs(mu)]), np.array([1]))
    T = inverse_tridiagonal(seq)
    k_neg = sturm_count(T, 0.0)
    if indices is None:
        j = np.arange(1, n + 1)
    else:
        j = np.unique(np.asarray(indices, dtype=int))
        if j.size == 0 or j[0] < 1 or j[-1] > n:
            raise DomainError(f"indices must lie in 1..{n}")
    tj = _t_indices_for_mu(j, n, k_neg)
    t = np.empty(j.size)
    order = np.argsort(tj)
    d, e2 = _arrays(T)
    g_lo, g_hi = T.gershgorin()
    pad = 2 * _EPS * max(abs(g_lo), abs(g_hi)) + _SAFEMIN
    t[order] = kernels.bisect_eigs(d, e2, tj[order].astype(np.int64), g_lo - pad, g_hi + pad,
                                   float(abs_tol), 2 * _EPS, _pivmin(T))
    mu = 1.0 / t
    tnorm = T.norm_inf()
    err = 4 * _EPS * np.abs(mu) + (abs_tol + 8 * _EPS * tnorm) * mu * mu
    method = "bisection"
    if polish and nu == 1.0 and k_neg == 0:
        top = j > n - MAX_LARGE_J
        if np.any(top):
            jj = n - j[top] + 1
            big = find_large_eigs(n, int(jj.max()))
            mu[top] = big[jj - 1]
            err[top] = 4 * _EPS * mu[top]
            method = "bisection+qn"
    srt = np.argsort(mu, kind="stable")
    return Spectrum(mu[srt], int(n), float(nu), method, float(abs_tol), err[srt], j[srt])


def count_above(n: int, nu: float, x: float) -> CountQuery:
    """``#{mu in sigma(L_n(nu)) : mu > x}`` for ``x > 0`` in O(n).

    Equal to the number of eigenvalues of the inverse in ``(0, 1/x)``, i.e.
    ``sturm(1/x) - sturm(0)``.
    """
    if not x > 0:
        raise DomainError("threshold must be positive")
    _check_size(n)
    T = inverse_tridiagonal(hilbert_l_sequence(n, nu))
    c = sturm_counts(T, [0.0, 1.0 / x])
    return CountQuery(int(n), float(nu), float(x), int(c[1] - c[0]))


def xi_guess(j, n: int):
    """Two-term guess ``pi j/log n - pi j kappa/log^2 n`` for the j-th root of ``q_n``."""
    L = math.log(n)
    j = np.asarray(j, dtype=float)
    return math.pi * j / L - math.pi * j * KAPPA / (L * L)


def _q_sign(xi: np.ndarray, n: int) -> np.ndarray:
    return np.sign(q_n(np.asarray(xi, dtype=float), n))


def _bracket_ok(T: SymTridiagonal, n: int, j: int, lo: float, hi: float) -> bool:
    if not 0.0 <= lo < hi:
        return False
    c = sturm_counts(T, [0.25 + lo * lo, 0.25 + hi * hi])
    if c[0] != j - 1 or c[1] != j:
        return False
    s = _q_sign(np.array([lo, hi]), n)
    return s[0] * s[1] < 0


def _sturm_bracket(T: SymTridiagonal, n: int, j: int) -> tuple[float, float]:
    """Bracket for the j-th root of ``q_n`` from the j-th eigenvalue of T."""
    d, e2 = _arrays(T)
    g_lo, g_hi = T.gershgorin()
    t = float(kernels.bisect_eigs(d, e2, np.array([j], dtype=np.int64), g_lo, g_hi, 0.0, 2 * _EPS, _pivmin(T))[0])
    width = 8 * _EPS * T.norm_inf()
    for scale in (4.0, 64.0, 1024.0):
        t_lo, t_hi = t - scale * width, t + scale * width
        lo = math.sqrt(max(t_lo - 0.25, 0.0))
        hi = math.sqrt(max(t_hi - 0.25, 0.0))
        if hi > lo:
            s = _q_sign(np.array([lo, hi]), n)
            if s[0] * s[1] < 0:
                return lo, hi
    raise BracketError(f"could not bracket root {j} of q_{n}")


def find_large_xi(n: int, j_max: int) -> np.ndarray:
    """Positive roots ``xi_1 < ... < xi_{j_max}`` of ``q_n``.

    Each root is bracketed around the two-term asymptotic guess with
    half-width ``pi/(2 log n)``; the bracket must show a sign change of
    ``q_n`` and, by Sturm counts on the inverse, contain exactly the j-th
    eigenvalue. If not, the half-width is doubled once; if that also fails
    the bracket is built from a bisection estimate of the eigenvalue of the
    inverse. The roots are then bisected on ``q_n`` until the midpoint stops
    moving (full double precision).

    Raises
    ------
    BracketError
        If no valid bracket is found.
    """
    if n < 2:
        raise DomainError("q_n has no positive roots for n < 2")
    if not 1 <= j_max <= min(MAX_LARGE_J, n):
        raise DomainError(f"j_max must be in 1..{min(MAX_LARGE_J, n)}")
    _check_size(n)
    T = inverse_tridiagonal(hilbert_l_sequence(n, 1.0))
    gap = math.pi / math.log(n)
    lo = np.empty(j_max)
    hi = np.empty(j_max)
    for j in range(1, j_max + 1):
        g = float(xi_guess(j, n))
        for half in (0.5 * gap, gap):
            a, b = max(g - half, 0.0), g + half
            if _bracket_ok(T, n, j, a, b):
                break
        else:
            a, b = _sturm_bracket(T, n, j)
        lo[j - 1], hi[j - 1] = a, b
    s_lo = _q_sign(lo, n)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        active = (mid > lo) & (mid < hi)
        if not active.any():
            break
        s_mid = _q_sign(mid[active], n)
        idx = np.flatnonzero(active)
        same = s_mid == s_lo[idx]
        lo[idx[same]] = mid[idx[same]]
        hi[idx[~same]] = mid[idx[~same]]
        zero = s_mid == 0
        lo[idx[zero]] = hi[idx[zero]] = mid[idx[zero]]
    return 0.5 * (lo + hi)


def find_large_eigs(n: int, j_max: int) -> np.ndarray:
    """Largest eigenvalues ``mu_{n-j+1,n}``, ``j = 1..j_max``, of ``L_n(1)``.

    Uses ``mu = 1/(1/4 + xi_j^2)`` with ``xi_j`` from :func:`find_large_xi`.
    The result is strictly decreasing in ``j``.
    """
    if n == 1:
        if j_max != 1:
            raise DomainError("L_1 has a single eigenvalue")
        return np.array([1.0])
    xi = find_large_xi(n, j_max)
    return 1.0 / (0.25 + xi * xi)


def dense_jacobi_eigs(M: DenseSym | np.ndarray, tol: float = 1e-13, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.

    Sweeps continue until the off-diagonal Frobenius norm is below
    ``tol * ||M||_F``.

    Raises
    ------
    BudgetExceededError
        If ``max_sweeps`` sweeps do not converge.
    """
    a = M.entries if isinstance(M, DenseSym) else np.asarray(M, dtype=float)
    n = a.shape[0]
    if n > MAX_DENSE_N:
        raise DomainError(f"dense oracle limited to n <= {MAX_DENSE_N}")
    vals, sweeps = kernels.jacobi_eigs(np.ascontiguousarray(a, dtype=float), float(tol), int(max_sweeps))
    if sweeps < 0:
        raise BudgetExceededError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return np.sort(vals)


def spectrum_B(n: int, nu: float, abs_tol: float = 0.0) -> Spectrum:
    """Eigenvalues of the Jacobi matrix ``B_n(nu)`` by bisection."""
    if not nu > 0:
        raise DomainError("spectrum_B needs nu > 0")
    _check_size(n)
    B = jacobi_B(nu, n)
    vals = eigs_bisection(B, (1, n), abs_tol)
    err = abs_tol + 8 * _EPS * B.norm_inf() * np.ones(n)
    return Spectrum(vals, int(n), float(nu), "bisection", float(abs_tol), err)
