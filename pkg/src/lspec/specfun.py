"""Special-function kernel.

Gamma and log-gamma on the complex plane, Pochhammer symbols, terminating
and unit-argument 3F2 series, and the Airy-type function

    A(x) = (pi/3) sum_m [1/Gamma(m+2/3) + x/(3 Gamma(m+4/3))] (-x/3)^(3m) / m!

together with its positive zeros i_1 < i_2 < ...
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    BracketError,
    BudgetExceededError,
    ConvergenceError,
    DomainError,
    PoleError,
)

EULER_GAMMA = 0.57721566490153286
ZETA3 = 1.2020569031595943
KAPPA = EULER_GAMMA + 6.0 * math.log(2.0)


@dataclass(frozen=True)
class Constants:
    """Mathematical constants used by the asymptotic formulas."""

    euler_gamma: float = EULER_GAMMA
    zeta3: float = ZETA3

    @property
    def kappa(self) -> float:
        return self.euler_gamma + 6.0 * math.log(2.0)


CONSTANTS = Constants()


@dataclass(frozen=True)
class SeriesPolicy:
    """Stopping policy for slowly convergent series."""

    rel_tol: float = 1e-13
    max_terms: int = 100_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


class SeriesSum(NamedTuple):
    value: complex
    terms: int


# Lanczos coefficients, g = 607/128, 15 terms.
_EPS = 2.0 ** -52

_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEFFS = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005


def _is_nonpositive_integer(z) -> bool:
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _lanczos_log_gamma(z: complex) -> complex:
    # valid for Re z > 0
    tmp = z + _LANCZOS_G
    tmp = (z + 0.5) * cmath.log(tmp) - tmp
    ser = _LANCZOS_C0
    y = z
    for c in _LANCZOS_COEFFS:
        y += 1.0
        ser += c / y
    return tmp + cmath.log(_SQRT_2PI * ser / z)


def log_gamma(z) -> complex:
    """Logarithm of Gamma(z) for complex z.

    The imaginary part is determined only modulo 2*pi; ``exp(log_gamma(z))``
    is Gamma(z). Unlike :func:`gamma_complex` there is no restriction on
    ``|z|``, which makes it the tool for ratios such as
    Gamma(n+a)/Gamma(n+b) with large n.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {z.real:g}")
    if z.real < 0.5:
        return (
            math.log(math.pi)
            - cmath.log(cmath.sin(math.pi * z))
            - _lanczos_log_gamma(1.0 - z)
        )
    return _lanczos_log_gamma(z)


def gamma_complex(z) -> complex:
    """Gamma function for complex ``z`` with ``|z| <= 50``.

    Uses a Lanczos approximation on the right half-plane and the reflection
    formula Gamma(z) Gamma(1-z) = pi / sin(pi z) for Re z < 1/2.

    Raises
    ------
    PoleError
        If z is 0, -1, -2, ...
    DomainError
        If |z| > 50.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {z.real:g}")
    if abs(z) > 50.0:
        raise DomainError("gamma_complex is only supported on |z| <= 50")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * cmath.exp(_lanczos_log_gamma(1.0 - z)))
    return cmath.exp(_lanczos_log_gamma(z))


def pochhammer(alpha, n: int):
    """Rising factorial (alpha)_n = alpha (alpha+1) ... (alpha+n-1)."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    out = 1
    for k in range(n):
        out *= alpha + k
    return out


def hyp3f2_terminating(n: int, a2, a3, b1, b2, *, reverse: bool = False, exact: bool = False):
    """Terminating series 3F2(-n, a2, a3; b1, b2; 1).

    Terms are generated by the ratio
    t_{k+1}/t_k = (k-n)(a2+k)(a3+k) / ((b1+k)(b2+k)(k+1)), so no factorial
    is ever formed.

    Parameters
    ----------
    n : int
        Degree; the sum has n+1 terms.
    a2, a3, b1, b2 : complex
        Remaining parameters.
    reverse : bool
        Accumulate from the last term to the first.
    exact : bool
        Sum in exact rational arithmetic. Requires real b1, b2 and a
        conjugate-type pair with real a2 + a3 and a2 * a3; only those
        symmetric combinations enter the terms. Floating-point summation of
        this alternating sum loses about log10(binomial(n, n/2)) digits,
        so for real characteristic-polynomial arguments beyond n ~ 30 this
        is the only accurate way to evaluate the series.

    Returns
    -------
    complex or float
        Float when ``exact`` is set, complex otherwise.
    """
    if n < 0:
        raise DomainError("hyp3f2_terminating needs n >= 0")
    for b in (b1, b2):
        for k in range(n):
            if complex(b) + k == 0:
                raise PoleError(f"denominator parameter {b} hits a pole at term {k + 1}")
    if exact:
        return _hyp3f2_terminating_exact(n, a2, a3, b1, b2, reverse)
    a2, a3, b1, b2 = complex(a2), complex(a3), complex(b1), complex(b2)
    terms = [1.0 + 0.0j]
    t = 1.0 + 0.0j
    for k in range(n):
        t *= (k - n) * (a2 + k) * (a3 + k) / ((b1 + k) * (b2 + k) * (k + 1))
        terms.append(t)
    if reverse:
        terms.reverse()
    acc = 0.0 + 0.0j
    for t in terms:
        acc += t
    return acc


def _hyp3f2_terminating_exact(n, a2, a3, b1, b2, reverse):
    a2, a3 = complex(a2), complex(a3)
    s = a2 + a3
    p = a2 * a3
    if abs(s.imag) > 1e-12 * max(1.0, abs(s)) or abs(p.imag) > 1e-12 * max(1.0, abs(p)):
        raise DomainError("exact summation needs real a2 + a3 and a2 * a3")
    for b in (b1, b2):
        if complex(b).imag != 0.0:
            raise DomainError("exact summation needs real denominator parameters")
    return float(terminating_sum_rational(n, s.real, p.real, complex(b1).real, complex(b2).real, reverse))


def terminating_sum_rational(n: int, s, p, b1, b2, reverse: bool = False) -> Fraction:
    """Exact value of 3F2(-n, a2, a3; b1, b2; 1) from ``s = a2+a3``, ``p = a2*a3``.

    All inputs are converted to :class:`fractions.Fraction` (floats exactly),
    so the only rounding happens when the caller converts the result.
    """
    s, p, b1, b2 = (Fraction(v) for v in (s, p, b1, b2))
    terms = [Fraction(1)]
    t = Fraction(1)
    for k in range(n):
        # (a2+k)(a3+k) = k^2 + (a2+a3) k + a2 a3
        t = t * (k - n) * (k * k + s * k + p) / ((b1 + k) * (b2 + k) * (k + 1))
        terms.append(t)
    if reverse:
        terms.reverse()
    return sum(terms, Fraction(0))


def hyp3f2_unit(a1, a2, a3, b1, b2, policy: SeriesPolicy | None = None) -> SeriesSum:
    """Non-terminating 3F2(a1, a2, a3; b1, b2; 1).

    The series converges when the margin s = b1 + b2 - a1 - a2 - a3 has
    positive real part; its terms then decay like k^(-1-s). Two stopping
    rules are used:

    * while the term ratio is below 0.99, stop as soon as the geometric tail
      bound |t| r / (1 - r) drops under ``rel_tol`` times the partial sum;
    * in the algebraic regime, partial sums S_K at K = K0 2^m satisfy
      S_K = S - K^(-s) (c0 + c1/K + ...), and a Richardson table eliminating
      the exponents s, s+1, ... converges to S. Iteration stops when two
      consecutive diagonal entries agree to ``rel_tol``, or to the rounding
      floor of the partial sums times the gain of the extrapolation when
      that floor is higher (small margins).

    Returns
    -------
    SeriesSum
        ``(value, terms)`` with the number of terms summed.

    Raises
    ------
    ConvergenceError
        If Re(s) <= 0.
    BudgetExceededError
        If ``policy.max_terms`` terms do not reach ``rel_tol``.
    """
    policy = policy or SeriesPolicy()
    a = [complex(v) for v in (a1, a2, a3)]
    b = [complex(v) for v in (b1, b2)]

    stop = None
    for v in a:
        if _is_nonpositive_integer(v):
            m = int(round(-v.real))
            stop = m if stop is None else min(stop, m)
    for v in b:
        if _is_nonpositive_integer(v) and (stop is None or -v.real < stop):
            raise PoleError(f"denominator parameter {v} is a nonpositive integer")

    if stop is not None:
        acc, t = 0.0j, 1.0 + 0.0j
        for k in range(stop + 1):
            acc += t
            t *= (a[0] + k) * (a[1] + k) * (a[2] + k) / ((b[0] + k) * (b[1] + k) * (k + 1))
        return SeriesSum(acc, stop + 1)

    s = b[0] + b[1] - a[0] - a[1] - a[2]
    if s.real <= 0.0:
        raise ConvergenceError(f"3F2 at unit argument diverges: Re(margin) = {s.real:g} <= 0")

    scale = 1.0 + max(abs(v) for v in a + b)
    k0 = 32
    while k0 < 4.0 * scale:
        k0 *= 2
    checkpoint = k0
    table: list[list[complex]] = []

    acc, t = 0.0j, 1.0 + 0.0j
    abs_sum = 0.0
    k = 0
    while True:
        if k >= policy.max_terms:
            raise BudgetExceededError(
                f"3F2 series did not reach rel_tol={policy.rel_tol:g} within {policy.max_terms} terms"
            )
        acc += t
        abs_sum += abs(t)
        t_next = t * (a[0] + k) * (a[1] + k) * (a[2] + k) / ((b[0] + k) * (b[1] + k) * (k + 1))
        k += 1
        if t_next == 0:
            return SeriesSum(acc, k)
        r = abs(t_next / t)
        if r < 0.99 and abs(t_next) * r / (1.0 - r) + abs(t_next) < policy.rel_tol * abs(acc):
            return SeriesSum(acc + t_next, k + 1)
        t = t_next

        if k == checkpoint:
            # algebraic tail: sum_{j>=K} |t_j| ~ |t_K| K / Re(s)
            if abs(t) * (k / s.real + 1.0) * 2.0 < policy.rel_tol * abs(acc):
                return SeriesSum(acc, k)
            row = [acc]
            if table:
                prev = table[-1]
                for j in range(len(prev)):
                    f = 2.0 ** (s + j)
                    row.append((f * row[j] - prev[j]) / (f - 1.0))
            table.append(row)
            if len(table) >= 3:
                best, last = table[-1][-1], table[-2][-1]
                # rounding in the partial sums, magnified by the extrapolation
                gain = 1.0
                for j in range(len(row) - 1):
                    f = 2.0 ** (s + j)
                    gain *= abs(f + 1.0) / abs(f - 1.0)
                noise = 16.0 * _EPS * abs_sum * gain
                if abs(best - last) <= max(policy.rel_tol * abs(best), noise):
                    return SeriesSum(best, k)
            checkpoint *= 2


# ---------------------------------------------------------------------------
# Airy-type function
# ---------------------------------------------------------------------------

_AIRY_SERIES_RADIUS = 2.0
_AIRY_STEP = 0.5
_AIRY_DOMAIN = 30.0
_INV_GAMMA_2_3 = 1.0 / math.gamma(2.0 / 3.0)
_INV_GAMMA_4_3 = 1.0 / math.gamma(4.0 / 3.0)


def _airy_series(x: float) -> tuple[float, float]:
    """A(x) and A'(x) straight from the defining Maclaurin series."""
    y = -x / 3.0
    y3 = y * y * y
    u = _INV_GAMMA_2_3  # y^(3m) / (m! Gamma(m + 2/3))
    v = _INV_GAMMA_4_3  # y^(3m) / (m! Gamma(m + 4/3))
    q = y * y / math.gamma(5.0 / 3.0)  # y^(3m-1) / ((m-1)! Gamma(m + 2/3)), m >= 1
    val = u - y * v
    dval = v / 3.0
    for m in range(1, 200):
        u *= y3 / (m * (m - 1.0 / 3.0))
        v *= y3 / (m * (m + 1.0 / 3.0))
        term = u - y * v
        dterm = (3 * m + 1) * v / 3.0 - q
        q *= y3 / (m * (m + 2.0 / 3.0))
        val += term
        dval += dterm
        if abs(term) + abs(dterm) < 1e-18 * (abs(val) + abs(dval)):
            break
    c = math.pi / 3.0
    return c * val, c * dval


def _airy_taylor_step(x0: float, f: float, df: float, h: float) -> tuple[float, float]:
    """Advance (A, A') from x0 to x0 + h using the Taylor series of A'' = -(x/3) A."""
    coeffs = [f, df]
    val = f + df * h
    dval = df
    hpow = h  # h^(k+1)
    small = 0
    for k in range(200):
        # (k+2)(k+1) c_{k+2} = -(x0 c_k + c_{k-1}) / 3
        prev = coeffs[k - 1] if k >= 1 else 0.0
        c = -(x0 * coeffs[k] + prev) / (3.0 * (k + 2) * (k + 1))
        coeffs.append(c)
        dterm = (k + 2) * c * hpow
        hpow *= h
        term = c * hpow
        val += term
        dval += dterm
        if abs(term) + abs(dterm) <= 1e-17 * (abs(val) + abs(dval)):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return val, dval


def _airy_march(x_start: float, f: float, df: float, x_end: float) -> tuple[float, float]:
    steps = max(1, int(math.ceil(abs(x_end - x_start) / _AIRY_STEP)))
    h = (x_end - x_start) / steps
    x = x_start
    for _ in range(steps):
        f, df = _airy_taylor_step(x, f, df, h)
        x += h
    return f, df


def _airy_decaying_start(x: float) -> tuple[float, float]:
    # leading-order decaying solution for x << 0; only its direction matters
    t = -x / 3.0 ** (1.0 / 3.0)
    zeta = 2.0 / 3.0 * t ** 1.5
    f = t ** -0.25 * math.exp(-zeta)
    # d/dt [t^(-1/4) e^(-zeta)] = (-1/(4t) - sqrt(t)) f ; dt/dx = -3^(-1/3)
    df = (-0.25 / t - math.sqrt(t)) * f * (-(3.0 ** (-1.0 / 3.0)))
    return f, df


def airy_A_with_derivative(x: float) -> tuple[float, float]:
    """Return ``(A(x), A'(x))``; see :func:`airy_A`."""
    x = float(x)
    if not abs(x) <= _AIRY_DOMAIN:
        raise DomainError(f"airy_A is supported on |x| <= {_AIRY_DOMAIN:g}")
    if abs(x) <= _AIRY_SERIES_RADIUS:
        return _airy_series(x)
    if x > 0:
        f0, df0 = _airy_series(0.0)
        return _airy_march(0.0, f0, df0, x)
    # The decaying direction is unstable when marching towards -inf, so march
    # from far out towards the origin and normalise against the series.
    x_anchor = -_AIRY_SERIES_RADIUS
    x_far = x - 10.0
    f, df = _airy_decaying_start(x_far)
    f_x, df_x = _airy_march(x_far, f, df, x)
    f_a, _ = _airy_march(x, f_x, df_x, x_anchor)
    ref, _ = _airy_series(x_anchor)
    scale = ref / f_a
    return f_x * scale, df_x * scale


def airy_A(x: float) -> float:
    """Airy-type function A(x) on |x| <= 30.

    For |x| <= 2 the defining series is summed directly. Further out the
    series suffers cancellation of order exp(2 (|x|/3)^(3/2)), so the same
    entire function is continued through its Taylor expansions about
    successive centres, obtained from the differential equation
    A'' = -(x/3) A that the series satisfies.
    """
    return airy_A_with_derivative(x)[0]


@functools.lru_cache(maxsize=None)
def _airy_zeros(count: int) -> tuple[float, ...]:
    zeros = []
    h = 0.25
    x_prev, (f_prev, df_prev) = 0.0, _airy_series(0.0)
    while len(zeros) < count:
        x_next = x_prev + h
        if x_next > _AIRY_DOMAIN:
            raise BracketError(f"fewer than {count} zeros of A on (0, {_AIRY_DOMAIN:g}]")
        f_next, df_next = _airy_march(x_prev, f_prev, df_prev, x_next)
        if f_next == 0.0:
            zeros.append(x_next)
        elif (f_prev > 0) != (f_next > 0):
            zeros.append(_airy_refine(x_prev, f_prev, df_prev, x_next))
        x_prev, f_prev, df_prev = x_next, f_next, df_next
    return tuple(zeros)


def _airy_refine(lo: float, f_lo: float, df_lo: float, hi: float) -> float:
    # Newton from the bracket midpoint, guarded by bisection.
    x = 0.5 * (lo + hi)
    for _ in range(200):
        f, df = _airy_march(lo, f_lo, df_lo, x)
        if f == 0.0:
            return x
        if (f > 0) == (f_lo > 0):
            lo, f_lo, df_lo = x, f, df
        else:
            hi = x
        x_new = x - f / df if df != 0.0 else lo
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4e-16 * x or hi - lo <= 4e-16 * hi:
            return x_new
        x = x_new
    return x


def airy_zero(j: int) -> float:
    """The j-th positive zero i_j of :func:`airy_A`, for 1 <= j <= 20.

    Zeros are bracketed by a sign-change scan of A and refined by a
    bisection-guarded Newton iteration.
    """
    if not 1 <= j <= 20:
        raise DomainError("airy_zero supports 1 <= j <= 20")
    return _airy_zeros(20)[j - 1]
