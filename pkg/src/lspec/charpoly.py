"""Characteristic polynomials ``det(1 - z L_n(nu))`` and related functions.

Three independent evaluation routes are provided:

* the orthonormal-polynomial route through the Jacobi matrix ``B_n(nu)``
  (any ``nu``, complex ``z``);
* the terminating ``3F2`` closed form, valid for ``nu = 1``;
* the three-term (continuous dual Hahn) recurrence, also for ``nu = 1``.

Both recurrences are run in a "flux" form. Writing the three-term recurrence
as a first-order system in ``P_k`` and the scaled difference
``W_{k+1} = b_k (P_{k+1} - P_k)`` gives

    W_{k+1} = W_k - z P_k,        P_{k+1} = P_k + W_{k+1} / b_k,

which is algebraically identical but avoids the cancellation between the
large diagonal and off-diagonal terms (about ``eps * n`` relative loss per
evaluation instead of ``eps * n^2``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from . import kernels
from .errors import DomainError, PoleError
from .specfun import (
    SeriesPolicy,
    gamma_complex,
    hyp3f2_terminating,
    hyp3f2_unit,
    log_gamma,
    terminating_sum_rational,
)

Method = Literal["P_recurrence", "F32_terminating", "CDH_recurrence"]


@dataclass(frozen=True)
class ScaledValue:
    """Real number stored as ``sign * exp(log_mag)``.

    ``sign`` is -1, 0 or +1; ``log_mag`` is ``-inf`` exactly when the value is
    zero.
    """

    sign: int
    log_mag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if (self.sign == 0) != (self.log_mag == -math.inf):
            raise ValueError("zero needs sign 0 and log_mag -inf")

    @classmethod
    def from_float(cls, x: float, log_offset: float = 0.0) -> "ScaledValue":
        """Represent ``x * exp(log_offset)``."""
        if x == 0.0:
            return cls(0, -math.inf)
        return cls(1 if x > 0 else -1, math.log(abs(x)) + log_offset)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "ScaledValue":
        if q == 0:
            return cls(0, -math.inf)
        num, den = abs(q.numerator), q.denominator
        shift = num.bit_length() - den.bit_length()
        # bring the ratio into float range before taking the logarithm
        if shift > 0:
            den <<= shift
        else:
            num <<= -shift
        return cls(1 if q > 0 else -1, math.log(num / den) + shift * math.log(2.0))

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_mag)

    def __mul__(self, other: "ScaledValue") -> "ScaledValue":
        s = self.sign * other.sign
        return ScaledValue(s, self.log_mag + other.log_mag if s else -math.inf)

    def rel_diff(self, other: "ScaledValue") -> float:
        """``|x - y| / max(|x|, |y|)`` computed without overflow."""
        if self.sign == 0 and other.sign == 0:
            return 0.0
        if self.sign == 0 or other.sign == 0:
            return 1.0
        big = max(self.log_mag, other.log_mag)
        x = self.sign * math.exp(self.log_mag - big)
        y = other.sign * math.exp(other.log_mag - big)
        return abs(x - y)


@dataclass(frozen=True)
class ScaledArray:
    """Sequence of real values stored as ``mantissa * exp(log_scale)``."""

    mantissa: np.ndarray
    log_scale: np.ndarray

    def __len__(self) -> int:
        return int(self.mantissa.shape[0])

    def __getitem__(self, k: int) -> ScaledValue:
        return ScaledValue.from_float(float(self.mantissa[k]), float(self.log_scale[k]))

    @property
    def signs(self) -> np.ndarray:
        return np.sign(self.mantissa).astype(int)

    def to_float(self) -> np.ndarray:
        """Plain values; may overflow to ``inf`` for extreme sequences."""
        with np.errstate(over="ignore"):
            return self.mantissa * np.exp(self.log_scale)


@dataclass(frozen=True)
class CharPolyEval:
    """One evaluation of ``det(1 - z L_n(nu))`` with its provenance."""

    value: ScaledValue | complex
    n: int
    nu: float
    z: complex
    method: Method


def _check_nu(nu: float) -> None:
    if nu <= 0 and float(nu).is_integer():
        raise PoleError(f"nu={nu} is a pole of the L-matrix family")


def _p_recurrence(z: complex, n: int, nu: float) -> tuple[complex, complex, float]:
    det, ddet, off = kernels.p_flux(np.array([complex(z)]), int(n), float(nu))
    return complex(det[0]), complex(ddet[0]), float(off[0])


def charpoly_via_P(z: complex, n: int, nu: float) -> complex:
    """``det(1 - z L_n(nu))`` through the orthonormal polynomials of ``B_n``.

    With ``P_k`` the normalised polynomials of the Jacobi matrix ``B_n(nu)``
    one has ``det(1 - z L_n) = (n+nu) P_n - (n+nu-1) P_{n-1}``; in flux
    variables this is ``P_n + W_n / (n+nu)``. The recurrence is rescaled by
    powers of two whenever it leaves ``[2^-500, 2^500]``.

    Parameters
    ----------
    z : complex
    n : int
        Matrix order, ``n >= 1``.
    nu : float
        Parameter, not a nonpositive integer.

    Returns
    -------
    complex
        May overflow to ``inf``; use :func:`charpoly_eval` for a scaled result.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    _check_nu(nu)
    if n == 1:
        return 1.0 - complex(z) / nu
    det, _, off = _p_recurrence(z, n, nu)
    return complex(_times_exp(det.real, off), _times_exp(det.imag, off)) if off else det


def _times_exp(x: float, off: float) -> float:
    # x * exp(off) that saturates to +-inf instead of raising
    if x == 0.0:
        return 0.0
    log_mag = math.log(abs(x)) + off
    return math.copysign(math.exp(log_mag) if log_mag < 709.78 else math.inf, x)


def charpoly_nu1_3f2(z: complex, n: int, exact: bool | None = None) -> complex:
    """``det(1 - z L_n(1))`` as ``3F2(-n, 1/2+i w, 1/2-i w; 1, 1; 1)``, ``w = sqrt(z-1/4)``.

    For real ``z`` the series is summed exactly in rational arithmetic
    (only ``a2 + a3 = 1`` and ``a2 a3 = z`` enter the terms), since the
    alternating float sum loses most of its digits beyond ``n ~ 30``.
    Complex ``z`` uses float summation.
    """
    z = complex(z)
    if exact is None:
        exact = z.imag == 0.0
    if exact:
        if z.imag != 0.0:
            raise DomainError("exact summation needs real z")
        q = terminating_sum_rational(n, 1, z.real, 1, 1)
        return complex(float(q))
    w = cmath.sqrt(z - 0.25)
    return hyp3f2_terminating(n, 0.5 + 1j * w, 0.5 - 1j * w, 1.0, 1.0)


def charpoly_nu1_recurrence(z: float, n_max: int) -> ScaledArray:
    """``p_n(z) = det(1 - z L_n(1))`` for ``n = 0..n_max`` in one pass.

    Runs ``(n+1)^2 p_{n+1} + (z - 2n^2 - 2n - 1) p_n + n^2 p_{n-1} = 0``
    from ``p_0 = 1``, ``p_1 = 1 - z`` in flux form
    (``w_{k+1} = w_k - z p_k``, ``p_{k+1} = p_k + w_{k+1}/(k+1)^2``).
    """
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    mant, logscale = kernels.nu1_flux_sequence(float(z), int(n_max))
    return ScaledArray(mant, logscale)


def charpoly_eval(z: complex, n: int, nu: float = 1.0, method: Method = "P_recurrence") -> CharPolyEval:
    """Evaluate with an explicit method; real ``z`` yields a :class:`ScaledValue`."""
    z = complex(z)
    real = z.imag == 0.0
    if method == "P_recurrence":
        _check_nu(nu)
        if n == 1:
            v = 1.0 - z / nu
            value = ScaledValue.from_float(v.real) if real else v
        else:
            det, _, off = _p_recurrence(z, n, nu)
            value = (ScaledValue.from_float(det.real, off) if real
                     else complex(_times_exp(det.real, off), _times_exp(det.imag, off)))
    elif method in ("F32_terminating", "CDH_recurrence"):
        if nu != 1.0:
            raise DomainError(f"method {method} is only available for nu = 1")
        if method == "F32_terminating":
            if real:
                value = ScaledValue.from_fraction(terminating_sum_rational(n, 1, z.real, 1, 1))
            else:
                value = charpoly_nu1_3f2(z, n)
        else:
            if not real:
                raise DomainError("CDH_recurrence needs real z")
            mant, logscale = kernels.nu1_flux(np.array([z.real]), int(n))
            value = ScaledValue.from_float(float(mant[0]), float(logscale[0]))
    else:
        raise ValueError(f"unknown method {method!r}")
    return CharPolyEval(value, int(n), float(nu), z, method)


def q_n(xi, n: int):
    """``q_n(xi) = det(1 - (1/4 + xi^2) L_n(1))``; vectorised over ``xi``.

    Returns a float for scalar input and an array otherwise.
    """
    scalar = np.ndim(xi) == 0
    x = np.atleast_1d(np.asarray(xi, dtype=float))
    mant, logscale = kernels.nu1_flux(0.25 + x * x, int(n))
    out = mant * np.exp(logscale)
    return float(out[0]) if scalar else out


def _log_rgamma(z: complex) -> complex:
    """``log(1/Gamma(z))``; raises at poles where ``1/Gamma`` vanishes."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real.is_integer():
        raise PoleError(f"1/Gamma vanishes at {z.real:g}; the quotient is not evaluated there")
    return -log_gamma(z)


def phi_n(z: complex, n: int, nu: float, policy: SeriesPolicy | None = None) -> complex:
    """``Gamma(n+nu+1) / (Gamma(2z+1) Gamma(n+nu+z+3/2)) * 3F2(...; 1)``.

    The series is ``3F2(z+1/2, z+1/2, z+3/2; 2z+1, n+nu+z+3/2; 1)`` with
    convergence margin ``n + nu``. The gamma quotient is formed in log space.
    """
    z = complex(z)
    if n < 0 or n + nu <= 0:
        raise DomainError("phi_n needs n >= 0 and n + nu > 0")
    m = n + nu
    log_pref = log_gamma(m + 1.0) + _log_rgamma(2 * z + 1) + _log_rgamma(m + z + 1.5)
    s = hyp3f2_unit(z + 0.5, z + 0.5, z + 1.5, 2 * z + 1, m + z + 1.5, policy)
    return cmath.exp(log_pref) * s.value


def chi(z: complex, nu: float, policy: SeriesPolicy | None = None) -> complex:
    """``(z+1/2) Gamma(nu) Gamma(nu+1) / (Gamma(z+1/2) Gamma(z+nu+1/2)^2) * 3F2(...; 1)``.

    The series is ``3F2(nu-1, nu+1, z+1/2; z+nu+1/2, z+nu+1/2; 1)`` with
    convergence margin ``z + 1/2``; it terminates immediately for ``nu = 1``.
    """
    z = complex(z)
    _check_nu(nu)
    if z.real <= -0.5:
        raise DomainError("chi needs Re z > -1/2")
    log_pref = (
        cmath.log(z + 0.5)
        + log_gamma(nu)
        + log_gamma(nu + 1.0)
        + _log_rgamma(z + 0.5)
        + 2 * _log_rgamma(z + nu + 0.5)
    )
    # Gamma(nu) is negative for some nu < 0; log_gamma tracks that in the phase
    s = hyp3f2_unit(nu - 1.0, nu + 1.0, z + 0.5, z + nu + 0.5, z + nu + 0.5, policy)
    return cmath.exp(log_pref) * s.value


def _z_of_xi(xi: complex) -> complex:
    return -1j * cmath.sqrt(complex(xi) - 0.25)


def charpoly_asymptotic(xi: complex, n: int, nu: float) -> complex:
    """Leading large-``n`` term of ``det(1 - xi L_n(nu))`` for ``Im xi > 0``.

    ``(z+1/2) Gamma(2z) chi(z; nu) n^(z-1/2)`` with ``z = -i sqrt(xi - 1/4)``
    (principal root, so ``Re z > 0``).
    """
    xi = complex(xi)
    if xi.imag <= 0:
        raise DomainError("the leading term is stated for Im xi > 0; conjugate for Im xi < 0")
    z = _z_of_xi(xi)
    return (z + 0.5) * gamma_complex(2 * z) * chi(z, nu) * cmath.exp((z - 0.5) * math.log(n))


def log_derivative_ratio(xi: complex, n: int, nu: float) -> complex:
    """``d/dxi det(1 - xi L_n) / det(1 - xi L_n) / log n``.

    The derivative comes from differentiating the recurrence, which is exact
    for polynomials.
    """
    xi = complex(xi)
    if xi.imag == 0.0:
        raise DomainError("xi must be off the real axis")
    if n < 2:
        raise DomainError("n must be at least 2 (log n > 0)")
    _check_nu(nu)
    det, ddet, _ = _p_recurrence(xi, n, nu)
    return ddet / det / math.log(n)


def log_derivative_limit(xi: complex) -> complex:
    """Large-``n`` limit ``sign(Im xi) / (2 i sqrt(xi - 1/4))`` of the ratio above."""
    xi = complex(xi)
    return math.copysign(1.0, xi.imag) / (2j * cmath.sqrt(xi - 0.25))


def count_sign_changes(values) -> int:
    """Number of strict sign changes in a sequence, ignoring exact zeros."""
    s = np.sign(np.asarray(values, dtype=float))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def charpoly_root_count(n: int, z_lo: float, z_hi: float, points: int = 20001) -> int:
    """Sign changes of ``z -> det(1 - z L_n(1))`` on a grid over ``(z_lo, z_hi]``.

    The grid is uniform in ``sqrt(z - 1/4)`` where that is real (roots of
    the ``nu = 1`` polynomial crowd near ``1/4`` in ``z`` but are roughly
    evenly spread in ``log`` of that variable), and geometric otherwise.
    """
    if z_hi <= z_lo:
        return 0
    lo = max(z_lo, 0.25)
    zs = []
    if z_lo < 0.25:
        zs.append(np.linspace(z_lo, 0.25, 64, endpoint=False)[1:])
    if z_hi > lo:
        t_lo = math.sqrt(lo - 0.25)
        t_hi = math.sqrt(z_hi - 0.25)
        t_min = max(t_lo, 1e-6)
        ts = np.geomspace(t_min, t_hi, points)
        if t_lo < t_min:
            ts = np.concatenate([[t_lo], ts])
        zs.append(0.25 + ts * ts)
    grid = np.concatenate(zs)
    grid = grid[(grid > z_lo) & (grid <= z_hi)]
    mant, _ = kernels.nu1_flux(grid, int(n))
    return count_sign_changes(mant)


def cdh_S_sequence(x: float, n_max: int, a: float = 0.5, b: float = 0.5, c: float = 0.5) -> np.ndarray:
    """Continuous dual Hahn values ``S_0(x), ..., S_{n_max}(x)`` from their recurrence.

    ``S_{n+1} = ((n+a+b)(n+a+c) + n(n+b+c-1) - a^2 - x) S_n
    - n (n+a+b-1)(n+a+c-1)(n+b+c-1) S_{n-1}``, ``S_0 = 1``. Here ``x`` is the
    argument of ``S_n(x; a, b, c)`` (the square of the usual variable).
    With ``a = b = c = 1/2`` and ``x = z - 1/4`` one gets
    ``S_n = (n!)^2 det(1 - z L_n(1))``.
    """
    s = np.empty(n_max + 1)
    s[0] = 1.0
    prev = 0.0
    for n in range(n_max):
        nxt = ((n + a + b) * (n + a + c) + n * (n + b + c - 1) - a * a - x) * s[n]
        nxt -= n * (n + a + b - 1) * (n + a + c - 1) * (n + b + c - 1) * prev
        prev = s[n]
        s[n + 1] = nxt
    return s
