"""Invariant suite run by ``lspec validate``.

Each check returns a :class:`CheckResult` with the measured quantity and the
criterion it was compared against. Sizes are reduced so the whole suite
finishes in well under two minutes; randomised checks draw from
``numpy.random.default_rng(seed)`` so a given seed reproduces the same output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import asymptotics as asy
from . import charpoly as cp
from . import eigensolve as es
from . import lmatrix as lm
from . import specfun as sf


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: str
    expected: str


def _fmt(x: float) -> str:
    return "%.6g" % x


def _random_regular_sequence(rng: np.random.Generator, n: int) -> lm.LSequence:
    # distinct entries, non-monotone and of both signs half of the time
    a = rng.uniform(-2.0, 2.0, n) if rng.random() < 0.5 else np.sort(rng.uniform(0.1, 2.0, n))[::-1]
    while (n > 1 and np.min(np.abs(np.diff(a))) < 1e-3) or abs(a[-1]) < 1e-3:
        a = rng.uniform(-2.0, 2.0, n)
    return lm.LSequence(a)


# --- specfun -----------------------------------------------------------------


def check_gamma_reflection(rng, ctx) -> CheckResult:
    xs = np.linspace(0.01, 10.0, 200)
    err = max(abs(abs(sf.gamma_complex(0.5 + 1j * x)) ** 2 * math.cosh(math.pi * x) - math.pi) / math.pi for x in xs)
    return CheckResult("specfun.gamma_reflection", err <= 1e-11, _fmt(err), "<= 1e-11")


def check_pochhammer_split(rng, ctx) -> CheckResult:
    err = 0.0
    for _ in range(50):
        a = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        m, n = (int(v) for v in rng.integers(0, 21, 2))
        lhs = sf.pochhammer(a, m + n)
        rhs = sf.pochhammer(a, m) * sf.pochhammer(a + m, n)
        err = max(err, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    return CheckResult("specfun.pochhammer_split", err <= 1e-12, _fmt(err), "<= 1e-12")


def _terms_abs_sum(n, a2, a3, b1, b2) -> float:
    t, acc = 1.0 + 0.0j, 1.0
    for k in range(n):
        t *= (k - n) * (a2 + k) * (a3 + k) / ((b1 + k) * (b2 + k) * (k + 1))
        acc += abs(t)
    return acc


def check_hyp3f2_order(rng, ctx) -> CheckResult:
    # Float summation of an alternating sum is only accurate to eps * sum|t_k| / |S|,
    # so the order test uses well-conditioned draws (condition <= 10).
    err = 0.0
    used = 0
    while used < 30:
        n = int(rng.integers(0, 25))
        a2, a3 = rng.uniform(-3, 3, 2) + 1j * rng.uniform(-1, 1, 2)
        b1, b2 = rng.uniform(0.5, 3, 2)
        f = sf.hyp3f2_terminating(n, a2, a3, b1, b2)
        if _terms_abs_sum(n, a2, a3, b1, b2) > 10 * abs(f):
            continue
        r = sf.hyp3f2_terminating(n, a2, a3, b1, b2, reverse=True)
        used += 1
        err = max(err, abs(f - r) / abs(f))
    return CheckResult("specfun.hyp3f2_summation_order", err <= 1e-12, _fmt(err), "<= 1e-12 (condition <= 10)")


def check_airy_zeros(rng, ctx) -> CheckResult:
    zeros = [sf.airy_zero(j) for j in range(1, 11)]
    res = max(abs(sf.airy_A(z)) for z in zeros)
    inc = all(b > a for a, b in zip(zeros, zeros[1:]))
    classical = (2.338107410459767, 4.087949444130971, 5.520559828095551)
    cross = max(abs(zeros[k] - asy.CBRT3 * classical[k]) for k in range(3))
    ok = res <= 1e-10 and inc and cross <= 1e-9
    return CheckResult("specfun.airy_zeros", ok, f"residual {_fmt(res)}, increasing {inc}, classical {_fmt(cross)}",
                       "residual <= 1e-10, increasing, 3^(1/3)|a_j| within 1e-9")


# --- lmatrix -----------------------------------------------------------------


def check_inverse_identity(rng, ctx) -> CheckResult:
    worst = 0.0
    for _ in range(40):
        n = int(rng.integers(1, 65))
        seq = _random_regular_sequence(rng, n)
        prod = lm.dense_from_sequence(seq).entries @ lm.inverse_tridiagonal(seq).to_dense()
        worst = max(worst, np.max(np.abs(prod - np.eye(n))) / n)
    return CheckResult("lmatrix.inverse_identity", worst <= 1e-11, _fmt(worst), "<= 1e-11 * n")


def check_det_formula(rng, ctx) -> CheckResult:
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 13))
        seq = _random_regular_sequence(rng, n)
        ref = np.linalg.det(lm.dense_from_sequence(seq).entries)
        worst = max(worst, abs(lm.det_lmatrix(seq) - ref) / abs(ref))
    return CheckResult("lmatrix.det_product_formula", worst <= 1e-11, _fmt(worst), "<= 1e-11 relative")


def check_rank_one(rng, ctx) -> CheckResult:
    worst = max(lm.rank_one_residual(nu, n) for nu in (0.2, 0.5, 1.0, 2.7) for n in (2, 5, 50, 500))
    return CheckResult("lmatrix.rank_one_relation", worst <= 1e-10, _fmt(worst), "<= 1e-10 relative")


def check_positive_definite(rng, ctx) -> CheckResult:
    ok = True
    for _ in range(40):
        n = int(rng.integers(2, 30))
        seq = _random_regular_sequence(rng, n)
        a = seq.a
        expect_pd = bool(np.all(np.diff(a) < 0) and a[-1] > 0)
        neg = es.sturm_count(lm.inverse_tridiagonal(seq), 0.0)
        ok &= (neg == 0) == expect_pd
    return CheckResult("lmatrix.positive_definite_iff_decreasing", ok, str(ok), "True")


# --- charpoly ----------------------------------------------------------------


def check_three_methods(rng, ctx) -> CheckResult:
    worst = 0.0
    for n in (2, 10, 50, 200):
        for z in rng.uniform(-1, 5, 10):
            vals = [cp.charpoly_eval(z, n, 1.0, m).value for m in ("P_recurrence", "F32_terminating", "CDH_recurrence")]
            worst = max(worst, vals[0].rel_diff(vals[1]), vals[1].rel_diff(vals[2]), vals[0].rel_diff(vals[2]))
    return CheckResult("charpoly.three_method_agreement", worst <= 1e-9, _fmt(worst), "<= 1e-9 relative")


def check_recurrence_residual(rng, ctx) -> CheckResult:
    worst = 0.0
    for z in rng.uniform(-1, 5, 5):
        p = cp.charpoly_nu1_recurrence(z, 300).to_float()
        n = np.arange(1, 300)
        terms = np.stack([(n + 1.0) ** 2 * p[2:], (z - 2 * n * n - 2 * n - 1) * p[1:-1], n * n * p[:-2]])
        worst = max(worst, float(np.max(np.abs(terms.sum(0)) / np.max(np.abs(terms), axis=0))))
    return CheckResult("charpoly.recurrence_residual", worst <= 1e-12, _fmt(worst), "<= 1e-12 per step")


def check_root_count(rng, ctx) -> CheckResult:
    bad = [n for n in (1, 2, 5, 10, 20, 50) if cp.charpoly_root_count(n, 0.25, 4 * n * n + 1) != n]
    return CheckResult("charpoly.real_root_count", not bad, f"mismatch at {bad}" if bad else "all n", "n roots in (1/4, 4n^2+1]")


def check_quarter_positive(rng, ctx) -> CheckResult:
    s = cp.charpoly_nu1_recurrence(0.25, 10_000)
    ok = bool(np.all(s.mantissa[1:] > 0))
    return CheckResult("charpoly.det_at_quarter_positive", ok, f"min sign {int(s.signs[1:].min())}", "all > 0, n <= 1e4")


def check_cdh_identity(rng, ctx) -> CheckResult:
    worst = 0.0
    for z in rng.uniform(-1, 5, 5):
        S = cp.cdh_S_sequence(z - 0.25, 60)
        for n in range(1, 61):
            ref = float(sf.terminating_sum_rational(n, 1, z, 1, 1)) * math.factorial(n) ** 2
            worst = max(worst, abs(S[n] - ref) / abs(ref))
    return CheckResult("charpoly.continuous_dual_hahn_identity", worst <= 1e-10, _fmt(worst), "<= 1e-10 relative")


# --- eigensolve --------------------------------------------------------------


def check_inertia(rng, ctx) -> CheckResult:
    ok = True
    for _ in range(10):
        n = int(rng.integers(1, 65))
        T = lm.SymTridiagonal(rng.normal(size=n), rng.normal(size=n - 1))
        ev = es.dense_jacobi_eigs(T.to_dense())
        for s in rng.uniform(ev[0] - 1, ev[-1] + 1, 50):
            ok &= es.sturm_count(T, s) == int(np.sum(ev < s))
    return CheckResult("eigensolve.sturm_inertia", ok, str(ok), "True")


def check_reciprocal(rng, ctx) -> CheckResult:
    worst = 0.0
    for nu in (0.35, 0.5, 1.0, 2.7, -0.5):
        for n in (5, 20, 64):
            ref = es.dense_jacobi_eigs(lm.dense_from_sequence(lm.hilbert_l_sequence(n, nu)))
            got = es.spectrum_L(n, nu).values
            worst = max(worst, float(np.max(np.abs(got - ref) / np.max(np.abs(ref)))))
    return CheckResult("eigensolve.reciprocal_bijection", worst <= 1e-10, _fmt(worst), "<= 1e-10 relative")


def check_norm_bound(rng, ctx) -> CheckResult:
    worst = -math.inf
    for nu in (0.5, 1.0, 3.0):
        for n in (10, 100, 1000, 10_000):
            worst = max(worst, float(es.spectrum_L(n, nu, indices=[n]).values[-1]))
    return CheckResult("eigensolve.norm_below_4", worst <= 4 + 1e-9, _fmt(worst), "<= 4 + 1e-9")


def check_count_monotone(rng, ctx) -> CheckResult:
    ok = True
    for nu in (0.5, 1.0, 2.0):
        xs = np.linspace(0.01, 3.99, 40)
        c = [es.count_above(1000, nu, x).count for x in xs]
        ok &= all(b <= a for a, b in zip(c, c[1:]))
        ok &= es.count_above(1000, nu, 1e-12).count == 1000
    return CheckResult("eigensolve.count_monotone", ok, str(ok), "True")


def check_interlacing(rng, ctx) -> CheckResult:
    slack = ctx["cal"]["interlacing_slack"]
    worst = 0.0
    for nu in (0.5, 1.0, 2.0):
        for n in range(2, 51):
            mu = es.spectrum_L(n, nu).values
            beta = es.spectrum_B(n, nu).values
            beta_m = es.spectrum_B(n - 1, nu).values
            j = np.arange(1, n + 1)
            # Weyl: beta_j >= 1/mu_{n-j+1}
            worst = max(worst, float(np.max(1.0 / mu[::-1] - beta)))
            # chain: 1/beta_{n-j+1,n} <= mu_j <= 1/beta_{n-j,n-1}
            worst = max(worst, float(np.max(1.0 / beta[n - j] - mu)))
            inner = j < n
            worst = max(worst, float(np.max(mu[inner] - 1.0 / beta_m[n - j[inner] - 1])))
    return CheckResult("eigensolve.interlacing_chain", worst <= slack, _fmt(worst), f"<= {slack:g}")


# --- asymptotics -------------------------------------------------------------


def check_counting(rng, ctx) -> CheckResult:
    slack = ctx["cal"]["counting_abs_slack"]
    worst = 0.0
    for nu in (0.5, 1.0, 2.0):
        for n in (1000, 10_000):
            for x in (1.0, 2.0, 3.0):
                worst = max(worst, abs(es.count_above(n, nu, x).count - asy.expected_count(x, n)))
    return CheckResult("asymptotics.counting_law", worst <= slack, _fmt(worst), f"<= {slack:g}")


def check_small_eigs(rng, ctx) -> CheckResult:
    tol = ctx["cal"]["small_eig_terminal_rel"]
    grid = (100, 1000, 10_000)
    failed = []
    for nu in (0.5, 1.0, 3.0):
        for j in (1, 2):
            vals = [asy.small_eig_residual(es.spectrum_L(n, nu, indices=[j], polish=False).values[0], n) for n in grid]
            tr = asy.trend_check(vals, sf.airy_zero(j) / asy.CBRT3, tol)
            if not tr.passed:
                failed.append(f"nu={nu:g},j={j}")
    return CheckResult("asymptotics.small_eig_airy_trend", not failed, "failed: " + ";".join(failed) if failed else "all",
                       f"monotone and terminal <= {tol:g}")


def check_large_eigs(rng, ctx) -> CheckResult:
    factor = ctx["cal"]["large_eig_scaled_factor"]
    grid = (1000, 10_000, 100_000)
    mus = {n: es.find_large_eigs(n, 3) for n in grid}
    worst = 0.0
    for j in (1, 2, 3):
        for k in (1, 2):
            s = [asy.scaled_error(mus[n][j - 1], asy.large_eig_prediction(j, n, k).value, n, k + 2) for n in grid]
            worst = max(worst, max(s) / min(s))
    return CheckResult("asymptotics.large_eig_scaled_errors", worst <= factor, _fmt(worst), f"ratio <= {factor:g}")


def _series_reciprocal(c: np.ndarray, order: int) -> np.ndarray:
    """Power series of ``1 / sum_k c_k t^k`` through ``t^order`` (``c_0 != 0``)."""
    out = np.zeros(order + 1)
    out[0] = 1.0 / c[0]
    for k in range(1, order + 1):
        acc = sum(c[i] * out[k - i] for i in range(1, min(k, len(c) - 1) + 1))
        out[k] = -acc / c[0]
    return out


def check_expansion_consistency(rng, ctx) -> CheckResult:
    c = asy.expansion_coeffs()
    g1 = c.gamma1
    if ctx["inject"]:
        g1 = g1 * (1.0 + 1e-3)
    xs = asy.root_coeffs_from_gamma(c.gamma0, g1, c.gamma2, c.gamma3)
    xi = np.array([0.0, *xs])  # xi(t), t = 1/log n
    denom = np.polynomial.polynomial.polymul(xi, xi)
    denom[0] += 0.25
    series = _series_reciprocal(denom, 5)
    target = np.array([4.0, 0.0, *asy.norm_coeffs()])
    coef_err = float(np.max(np.abs(series - target)) / abs(target[2]))
    # numerical side: at 30 values of log n the truncated expansions differ by O(t^6)
    t = 1.0 / np.linspace(20.0, 200.0, 30)
    y = 1.0 / (0.25 + np.polynomial.polynomial.polyval(t, xi) ** 2)
    rem = (y - np.polynomial.polynomial.polyval(t, target)) / t ** 6
    fit = np.polynomial.polynomial.polyfit(t, rem, 3)
    fit_err = float(np.max(np.abs(np.polynomial.polynomial.polyval(t, fit) - rem)) * t.max() ** 6 / abs(target[2]))
    err = max(coef_err, fit_err)
    return CheckResult("asymptotics.expansion_consistency", err <= 1e-6,
                       f"coefficients {_fmt(coef_err)}, fit {_fmt(fit_err)}", "<= 1e-6 of leading coefficient")


def check_qn_remainder(rng, ctx) -> CheckResult:
    factor = ctx["cal"]["qn_remainder_factor"]
    sups = [asy.qn_remainder_sup(n) for n in (100, 1000, 10_000)]
    ok = all(s <= factor * sups[0] for s in sups[1:])
    return CheckResult("asymptotics.qn_remainder_bound", ok, ",".join(_fmt(s) for s in sups), f"<= {factor:g} x value at n=100")


def check_qn_zero(rng, ctx) -> CheckResult:
    vals = [asy.qn_zero_value_check(n) for n in (100, 1000, 10_000, 100_000)]
    d = [abs(v - 1) for v in vals]
    ok = all(b < a for a, b in zip(d, d[1:])) and all(v > 0 for v in vals)
    return CheckResult("asymptotics.qn_zero_trend", ok, ",".join(_fmt(v) for v in vals), "monotone approach to 1")


def check_mnt(rng, ctx) -> CheckResult:
    tol = ctx["cal"]["small_eig_terminal_rel"]
    failed = []
    for nu in (0.5, 1.0, 2.0):
        vals = []
        for n in (100, 1000, 10_000):
            B = lm.jacobi_B(nu, n)
            vals.append(asy.mnt_residual(es.eigs_bisection(B, (n, n))[0], n))
        if not asy.trend_check(vals, sf.airy_zero(1) / asy.CBRT3, tol).passed:
            failed.append(f"nu={nu:g}")
    return CheckResult("asymptotics.mnt_largest_beta", not failed, "failed: " + ";".join(failed) if failed else "all",
                       f"monotone and terminal <= {tol:g}")


def check_prop31(rng, ctx) -> CheckResult:
    rel = ctx["cal"]["prop31_rate_rel"]
    grid = ctx["cal"]["prop31_n_grid"]
    xi = 0.5 + 0.5j
    z = -1j * complex(xi - 0.25) ** 0.5
    expected = 4.0 ** min(1.0, 2 * z.real)
    failed = []
    for nu in (1.0, 0.5):
        e = [abs(cp.charpoly_via_P(xi, n, nu) / cp.charpoly_asymptotic(xi, n, nu) - 1) for n in grid]
        f = [a / b for a, b in zip(e, e[1:])]
        if not all(abs(x / expected - 1) <= rel for x in f):
            failed.append(f"nu={nu:g}:" + "/".join("%.3g" % x for x in f))
    return CheckResult("charpoly.asymptotic_error_rate", not failed, "failed " + ";".join(failed) if failed else "all",
                       f"factor {expected:.4g} +- {rel:.0%}")


CHECKS: list[Callable] = [
    check_gamma_reflection,
    check_pochhammer_split,
    check_hyp3f2_order,
    check_airy_zeros,
    check_inverse_identity,
    check_det_formula,
    check_rank_one,
    check_positive_definite,
    check_three_methods,
    check_recurrence_residual,
    check_root_count,
    check_quarter_positive,
    check_cdh_identity,
    check_prop31,
    check_inertia,
    check_reciprocal,
    check_norm_bound,
    check_count_monotone,
    check_interlacing,
    check_counting,
    check_small_eigs,
    check_large_eigs,
    check_expansion_consistency,
    check_qn_remainder,
    check_qn_zero,
    check_mnt,
]


def run_suite(seed: int = 0, inject_failure: bool = False) -> list[CheckResult]:
    """Run every check in order with a single seeded generator."""
    rng = np.random.default_rng(seed)
    ctx = {"cal": asy.load_calibration(), "inject": inject_failure}
    return [check(rng, ctx) for check in CHECKS]
