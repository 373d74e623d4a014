"""Structural algebra of L-matrices.

An L-matrix of order ``n`` is built from a sequence ``a_0, ..., a_{n-1}`` by
``A[i, j] = a[max(i, j)]``: every entry on the reversed "L" through the
diagonal position ``(k, k)`` equals ``a_k``. The generalized Hilbert L-matrix
``L_n(nu)`` uses ``a_j = 1 / (j + nu)``.

Such matrices have a product-form determinant and, when regular, a symmetric
tridiagonal inverse. The tridiagonal form is the O(n) representation used by
every large-scale routine in this package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PoleError, SingularMatrixError

#: Smallest admissible gap ``|a_{j-1} - a_j|``; closer sequences are rejected.
MIN_GAP = 1e-300


def _check_nu(nu: float, n: int) -> None:
    if nu <= 0 and float(nu).is_integer() and -nu <= n - 1:
        raise PoleError(f"nu={nu} makes index {int(-nu)} a pole of 1/(j+nu)")


@dataclass(frozen=True)
class LSequence:
    """Defining sequence of an L-matrix.

    Parameters
    ----------
    a : array_like
        Values ``a_0, ..., a_{n-1}`` (``n >= 1``).
    nu : float, optional
        Set when the sequence is the Hilbert one, ``a_j = 1/(j+nu)``. Routines
        use the tag to switch to closed forms that avoid cancellation.
    """

    a: np.ndarray
    nu: float | None = None

    def __post_init__(self):
        a = np.array(self.a, dtype=float).reshape(-1)
        if a.size == 0:
            raise ValueError("an L-sequence needs at least one entry")
        if not np.all(np.isfinite(a)):
            raise ValueError("L-sequence entries must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)
        if self.nu is not None:
            nu = float(self.nu)
            _check_nu(nu, a.size)
            ref = 1.0 / (np.arange(a.size) + nu)
            if not np.allclose(a, ref, rtol=1e-14, atol=0.0):
                raise ValueError("entries do not match the nu tag")
            object.__setattr__(self, "nu", nu)

    @property
    def n(self) -> int:
        return int(self.a.size)


@dataclass(frozen=True)
class SymTridiagonal:
    """Symmetric tridiagonal matrix stored by its two nonzero diagonals."""

    diag: np.ndarray
    offdiag: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        d = np.array(self.diag, dtype=float).reshape(-1)
        e = np.array(self.offdiag, dtype=float).reshape(-1)
        if d.size == 0:
            raise ValueError("empty tridiagonal matrix")
        if e.size != d.size - 1:
            raise ValueError(f"offdiag must have length {d.size - 1}, got {e.size}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("tridiagonal entries must be finite")
        d.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return int(self.diag.size)

    def to_dense(self) -> np.ndarray:
        t = np.diag(self.diag)
        if self.n > 1:
            idx = np.arange(self.n - 1)
            t[idx, idx + 1] = self.offdiag
            t[idx + 1, idx] = self.offdiag
        return t

    def gershgorin(self) -> tuple[float, float]:
        """Interval containing the whole spectrum."""
        r = np.zeros(self.n)
        if self.n > 1:
            ae = np.abs(self.offdiag)
            r[:-1] += ae
            r[1:] += ae
        return float(np.min(self.diag - r)), float(np.max(self.diag + r))

    def norm_inf(self) -> float:
        lo, hi = self.gershgorin()
        return max(abs(lo), abs(hi))


@dataclass(frozen=True)
class DenseSym:
    """Dense symmetric matrix used as an oracle representation."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=float)
        if m.ndim == 1:
            m = m.reshape(self.n, self.n)
        if m.shape != (self.n, self.n):
            raise ValueError(f"expected a {self.n}x{self.n} matrix, got shape {m.shape}")
        if not np.array_equal(m, m.T):
            raise ValueError("matrix is not symmetric")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)


def hilbert_l_sequence(n: int, nu: float) -> LSequence:
    """Sequence ``a_j = 1/(j+nu)``, ``j = 0..n-1``, of the Hilbert L-matrix."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_nu(float(nu), n)
    return LSequence(1.0 / (np.arange(n) + float(nu)), nu=float(nu))


def dense_from_sequence(seq: LSequence) -> DenseSym:
    idx = np.arange(seq.n)
    return DenseSym(seq.n, seq.a[np.maximum.outer(idx, idx)])


def det_lmatrix(seq: LSequence) -> float:
    """Determinant from the product formula.

    ``det A_n = a_{n-1} * prod_{j=1}^{n-1} (a_{j-1} - a_j)``, accumulated left
    to right. Returns exactly ``0.0`` when a factor vanishes.
    """
    a = seq.a
    det = float(a[-1])
    for j in range(1, seq.n):
        det *= a[j - 1] - a[j]
    return det


def _gaps(seq: LSequence) -> np.ndarray:
    a = seq.a
    if a[-1] == 0.0:
        raise SingularMatrixError("last sequence entry is zero")
    gaps = a[:-1] - a[1:]
    bad = np.flatnonzero(np.abs(gaps) < MIN_GAP)
    if bad.size:
        j = int(bad[0])
        raise SingularMatrixError(f"a[{j}] and a[{j + 1}] are (numerically) equal")
    return gaps


def inverse_tridiagonal(seq: LSequence, use_closed_form: bool = True) -> SymTridiagonal:
    """Tridiagonal inverse of a regular L-matrix.

    With ``b_j = 1/(a_j - a_{j+1})`` the inverse has off-diagonal ``-b_j``,
    diagonal ``b_0, b_0+b_1, ..., b_{n-3}+b_{n-2}`` and last diagonal entry
    ``(a_{n-2}/a_{n-1}) b_{n-2}``. For ``n = 1`` it is ``[1/a_0]``.

    Parameters
    ----------
    seq : LSequence
    use_closed_form : bool
        For nu-tagged sequences, use ``b_j = (j+nu)(j+1+nu)`` and last entry
        ``(n+nu-1)^2`` directly, which is exact up to one rounding. Otherwise
        the differences of ``a`` are formed, losing roughly ``eps * j``
        relative accuracy in ``b_j``.

    Raises
    ------
    SingularMatrixError
        If some gap is below ``MIN_GAP`` or ``a_{n-1} = 0``.
    """
    n = seq.n
    if seq.nu is not None and use_closed_form:
        nu = seq.nu
        j = np.arange(n - 1, dtype=float)
        b = (j + nu) * (j + 1.0 + nu)
        last = (n - 1.0 + nu) ** 2
    else:
        gaps = _gaps(seq)
        if n == 1:
            return SymTridiagonal(np.array([1.0 / seq.a[0]]))
        b = 1.0 / gaps
        last = seq.a[-2] / seq.a[-1] * b[-1]
    if n == 1:
        return SymTridiagonal(np.array([1.0 / seq.a[0]]))
    diag = np.empty(n)
    diag[0] = b[0]
    diag[1:-1] = b[:-1] + b[1:]
    diag[-1] = last
    return SymTridiagonal(diag, -b)


def jacobi_B(nu: float, n: int) -> SymTridiagonal:
    """Jacobi matrix ``B_n(nu)`` with ``b_j = (j+nu)(j+1+nu)``.

    Diagonal ``b_0, b_0+b_1, ..., b_{n-2}+b_{n-1}``, off-diagonal ``-b_j``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    j = np.arange(n, dtype=float)
    b = (j + nu) * (j + 1.0 + nu)
    diag = b.copy()
    diag[1:] += b[:-1]
    return SymTridiagonal(diag, -b[:-1])


def rank_one_residual(nu: float, n: int) -> float:
    """Relative max-norm of ``B_n - L_n^{-1} - (n+nu-1)^2 e_n e_n^T``.

    The inverse is built from the differences of the sequence (not from the
    closed form) so the check exercises the generic path.
    """
    seq = hilbert_l_sequence(n, nu)
    t = inverse_tridiagonal(seq, use_closed_form=False)
    b = jacobi_B(nu, n)
    dd = b.diag - t.diag
    dd[-1] -= (n + nu - 1.0) ** 2
    de = b.offdiag - t.offdiag
    res = max(np.max(np.abs(dd)), np.max(np.abs(de)) if n > 1 else 0.0)
    return float(res / b.norm_inf())


def hilbert_hankel_dense(n: int, nu: float) -> DenseSym:
    """Hankel matrix ``H_n(nu)[i, j] = 1/(i+j+nu)``."""
    if n < 1:
        raise ValueError("n must be positive")
    nu = float(nu)
    if nu <= 0 and nu.is_integer() and -nu <= 2 * (n - 1):
        raise PoleError(f"nu={nu} puts a pole inside H_{n}")
    idx = np.arange(n)
    return DenseSym(n, 1.0 / (np.add.outer(idx, idx) + nu))
