"""Closed-form asymptotic predictors and helpers to compare them with exact spectra.

Notation: ``L = log n``, ``kappa = gamma + 6 log 2``, ``zeta3 = zeta(3)``,
and ``i_j`` are the positive zeros of the Airy-type function
:func:`lspec.specfun.airy_A`.

Trend checks never hard-code unknown remainder constants: they assert a
monotone approach along a geometric ``n`` grid plus a terminal tolerance read
from the packaged calibration file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Literal, Sequence

import numpy as np

from .charpoly import q_n
from .errors import DomainError
from .specfun import CONSTANTS, airy_zero, gamma_complex

PI = math.pi
CBRT3 = 3.0 ** (1.0 / 3.0)


@dataclass(frozen=True)
class Prediction:
    """Asymptotic value together with its truncation order and origin tag."""

    value: float
    order: int
    source: str

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError("prediction is not finite")
        if self.order < 1:
            raise ValueError("order must be at least 1")

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class ExpansionCoeffs:
    """Root-expansion coefficients ``x1..x3`` and Taylor coefficients ``gamma0..gamma3``.

    ``F(xi) = Gamma(1+2i xi)/Gamma(1/2+i xi)^3 = sum_k gamma_k xi^k`` and the
    first root of ``q_n`` behaves like ``pi/L + x1/L^2 + x2/L^3 + x3/L^4``.
    """

    x1: float
    x2: float
    x3: float
    gamma0: complex
    gamma1: complex
    gamma2: complex
    gamma3: complex


def expansion_coeffs() -> ExpansionCoeffs:
    """Closed-form coefficients in terms of ``kappa`` and ``zeta(3)``."""
    k = CONSTANTS.kappa
    z3 = CONSTANTS.zeta3
    p32 = PI ** 1.5
    return ExpansionCoeffs(
        x1=-PI * k,
        x2=PI * k * k,
        x3=-PI * k ** 3 + 13.0 * PI ** 3 * z3 / 3.0,
        gamma0=complex(1.0 / p32),
        gamma1=1j * k / p32,
        gamma2=complex((5 * PI ** 2 - 6 * k * k) / (12 * p32)),
        gamma3=1j * (k * (5 * PI ** 2 - 2 * k * k) - 52 * z3) / (12 * p32),
    )


def root_coeffs_from_gamma(g0: complex, g1: complex, g2: complex, g3: complex, j: int = 1) -> tuple[float, ...]:
    """Coefficients of ``xi_j = sum_k X_k / L^k`` (k = 1..4) from the Taylor data of ``F``.

    A root of the leading term satisfies ``xi L = pi j - arctan(Im F / Re F)``.
    With ``c1 = Im g1/g0``, ``c2 = g2/g0``, ``c3 = Im g3/g0`` one has
    ``arctan(Im F/Re F) = c1 xi + d3 xi^3 + O(xi^5)``,
    ``d3 = c3 - c1 c2 - c1^3/3``, and fixed-point iteration in ``1/L`` gives

        X1 = pi j, X2 = -c1 pi j, X3 = c1^2 pi j, X4 = -c1^3 pi j - d3 (pi j)^3.
    """
    g0 = complex(g0)
    c1 = complex(g1).imag / g0.real
    c2 = complex(g2).real / g0.real
    c3 = complex(g3).imag / g0.real
    d3 = c3 - c1 * c2 - c1 ** 3 / 3.0
    a = PI * j
    return (a, -c1 * a, c1 * c1 * a, -(c1 ** 3) * a - d3 * a ** 3)


def norm_coeffs() -> tuple[float, float, float, float]:
    """Coefficients ``c2..c5`` of ``||L_n|| = 4 + sum_k c_k / L^k``."""
    k = CONSTANTS.kappa
    z3 = CONSTANTS.zeta3
    p2 = PI * PI
    return (
        -16 * p2,
        32 * p2 * k,
        -16 * p2 * (3 * k * k - 4 * p2),
        32 * p2 * (6 * k * (k * k - 4 * p2) - 13 * p2 * z3) / 3.0,
    )


def _log_n(n: int, minimum: int = 3) -> float:
    if n < minimum:
        raise DomainError(f"n must be at least {minimum}")
    return math.log(n)


def counting_density(x: float) -> float:
    """Limit density ``(1/(2 pi)) sqrt((1-x)/x)`` on ``0 < x < 1``."""
    if not 0.0 < x < 1.0:
        raise DomainError("counting density is defined for 0 < x < 1")
    return math.sqrt((1.0 - x) / x) / (2.0 * PI)


def expected_count(x_abs: float, n: int) -> float:
    """Predicted ``#{mu > x_abs}``: ``(log n / pi) sqrt(1/x_abs - 1/4)``."""
    if not 0.0 < x_abs < 4.0:
        raise DomainError("x_abs must lie in (0, 4)")
    if n < 1:
        raise DomainError("n must be positive")
    return math.log(n) / PI * math.sqrt(1.0 / x_abs - 0.25)


def small_eig_prediction(j: int, n: int) -> Prediction:
    """``mu_{j,n} ~ (1/(4n^2)) (1 + i_j 3^(-1/3) n^(-2/3))``, independent of ``nu``."""
    if n < 1:
        raise DomainError("n must be positive")
    v = (1.0 + airy_zero(j) / CBRT3 * n ** (-2.0 / 3.0)) / (4.0 * n * n)
    return Prediction(v, 2, "small-eigenvalue Airy law")


def large_eig_prediction(j: int, n: int, order: int = 2) -> Prediction:
    """``mu_{n-j+1,n}`` near 4, truncated after ``order`` correction terms.

    ``order = 1``: ``4 - 16 pi^2 j^2 / L^2``;
    ``order = 2``: ``+ 32 pi^2 j^2 kappa / L^3``;
    ``order = 3``: adds the ``1/L^4`` norm coefficient (``j = 1`` only).
    """
    if j < 1:
        raise DomainError("j must be positive")
    if order not in (1, 2, 3):
        raise DomainError("order must be 1, 2 or 3")
    if order == 3 and j != 1:
        raise DomainError("the 1/log^4 term is only known for j = 1")
    L = _log_n(n)
    c = norm_coeffs()
    v = 4.0 + c[0] * j * j / L ** 2
    if order >= 2:
        v += c[1] * j * j / L ** 3
    if order >= 3:
        v += c[2] / L ** 4
    return Prediction(v, order, "large-eigenvalue log-power law")


def norm_expansion(n: int, order: int = 4) -> Prediction:
    """Truncated expansion of ``||L_n(1)||`` with ``order`` (1..4) correction terms."""
    if order not in (1, 2, 3, 4):
        raise DomainError("order must be in 1..4")
    L = _log_n(n)
    v = 4.0 + sum(c / L ** (k + 2) for k, c in enumerate(norm_coeffs()[:order]))
    return Prediction(v, order, "norm expansion")


def xi_expansion(n: int, order: int = 4) -> float:
    """``xi_{1,n} ~ pi/L + x1/L^2 + x2/L^3 + x3/L^4`` truncated to ``order`` terms."""
    if order not in (1, 2, 3, 4):
        raise DomainError("order must be in 1..4")
    L = _log_n(n)
    c = expansion_coeffs()
    coeffs = (PI, c.x1, c.x2, c.x3)
    return sum(coeffs[k] / L ** (k + 1) for k in range(order))


def F_ratio(xi: float) -> complex:
    """``F(xi) = Gamma(1 + 2i xi) / Gamma(1/2 + i xi)^3``."""
    return gamma_complex(1.0 + 2j * xi) / gamma_complex(0.5 + 1j * xi) ** 3


def qn_leading(xi, n: int):
    """Leading oscillatory term of ``q_n(xi)`` for ``xi > 0``.

    ``(1/(xi sqrt n)) [Im F(xi) cos(xi log n) + Re F(xi) sin(xi log n)]``.
    Vectorised over ``xi``.
    """
    scalar = np.ndim(xi) == 0
    x = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(x <= 0):
        raise DomainError("qn_leading needs xi > 0")
    F = np.array([F_ratio(v) for v in x])
    L = math.log(n)
    out = (F.imag * np.cos(x * L) + F.real * np.sin(x * L)) / (x * math.sqrt(n))
    return float(out[0]) if scalar else out


def qn_remainder_sup(n: int, xi_grid: Sequence[float] | None = None) -> float:
    """``sup_xi |q_n(xi) - qn_leading(xi, n)| * n * xi`` over a grid (default [0.1, 2], step 0.05)."""
    if xi_grid is None:
        xi_grid = np.round(np.arange(0.1, 2.0 + 1e-9, 0.05), 12)
    x = np.asarray(xi_grid, dtype=float)
    return float(np.max(np.abs(q_n(x, n) - qn_leading(x, n)) * n * x))


def qn_zero_value_check(n: int) -> float:
    """``q_n(0) pi^(3/2) sqrt(n) / log n``, expected to approach 1."""
    if n < 2:
        raise DomainError("n must be at least 2")
    return q_n(0.0, n) * PI ** 1.5 * math.sqrt(n) / math.log(n)


def mnt_prediction(j: int, n: int) -> float:
    """Predicted ``beta_{n-j+1,n}`` of ``B_n(nu)``: ``4 n^2 (1 - i_j 3^(-1/3) n^(-2/3))``."""
    if n < 1:
        raise DomainError("n must be positive")
    return 4.0 * n * n * (1.0 - airy_zero(j) / CBRT3 * n ** (-2.0 / 3.0))


HilbertKind = Literal["counting_density", "smallest_eig", "largest_eig"]


def hilbert_reference(kind: HilbertKind, *, x: float | None = None, n: int | None = None,
                      nu: float | None = None) -> float:
    """Reference asymptotics for the Hilbert (Hankel) matrix ``H_n(nu)``.

    ``counting_density``: ``(2/pi) log((1 + sqrt(1-x^2))/x)`` for ``x in (0,1)``
    (count of eigenvalues above ``pi x`` per unit ``log n``);
    ``smallest_eig``: ``2^(15/4) pi^(3/2) (1+sqrt2)^(2-2nu) sqrt(n) (1+sqrt2)^(-4n)``;
    ``largest_eig``: ``pi - pi^5 / (2 log^2 n)``.
    """
    if kind == "counting_density":
        if x is None or not 0.0 < x < 1.0:
            raise DomainError("x must lie in (0, 1)")
        return 2.0 / PI * math.log((1.0 + math.sqrt(1.0 - x * x)) / x)
    if kind == "smallest_eig":
        if nu is None or not nu > 0 or n is None or n < 1:
            raise DomainError("smallest_eig needs nu > 0 and n >= 1")
        s = 1.0 + math.sqrt(2.0)
        log_v = (3.75 * math.log(2.0) + 1.5 * math.log(PI) + (2.0 - 2.0 * nu) * math.log(s)
                 + 0.5 * math.log(n) - 4.0 * n * math.log(s))
        return math.exp(log_v)
    if kind == "largest_eig":
        L = _log_n(n if n is not None else 0)
        return PI - PI ** 5 / (2.0 * L * L)
    raise DomainError(f"unknown kind {kind!r}")


# --- residuals and trend analysis -------------------------------------------


def small_eig_residual(mu: float, n: int) -> float:
    """``(mu 4 n^2 - 1) n^(2/3)``, which tends to ``i_j 3^(-1/3)``."""
    return (mu * 4.0 * n * n - 1.0) * n ** (2.0 / 3.0)


def mnt_residual(beta: float, n: int) -> float:
    """``(1 - beta/(4 n^2)) n^(2/3)``, which tends to ``i_j 3^(-1/3)``."""
    return (1.0 - beta / (4.0 * n * n)) * n ** (2.0 / 3.0)


def scaled_error(exact: float, predicted: float, n: int, power: float) -> float:
    """``|exact - predicted| log(n)^power``."""
    return abs(exact - predicted) * math.log(n) ** power


@dataclass(frozen=True)
class TrendResult:
    """Outcome of a convergence-trend check along an ``n`` grid."""

    values: tuple[float, ...]
    target: float
    distances: tuple[float, ...]
    monotone: bool
    terminal_rel_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.monotone and self.terminal_rel_error <= self.tolerance


def trend_check(values: Sequence[float], target: float, tolerance: float) -> TrendResult:
    """Check that ``values`` approach ``target`` monotonically and end within ``tolerance`` (relative)."""
    vals = tuple(float(v) for v in values)
    dist = tuple(abs(v - target) for v in vals)
    mono = all(b < a for a, b in zip(dist, dist[1:]))
    term = dist[-1] / abs(target) if target != 0 else dist[-1]
    return TrendResult(vals, float(target), dist, mono, term, float(tolerance))


def within_factor(values: Sequence[float], factor: float) -> bool:
    """True when ``max(values) / min(values) <= factor`` (all values positive)."""
    v = np.asarray(values, dtype=float)
    return bool(np.all(v > 0) and v.max() / v.min() <= factor)


@lru_cache(maxsize=1)
def load_calibration() -> dict:
    """Tolerances for the trend checks, from the packaged ``calibration.json``."""
    text = resources.files("lspec").joinpath("data/calibration.json").read_text(encoding="utf-8")
    return json.loads(text)
