import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cplx
from lspec import charpoly as cp
from lspec.errors import DomainError, PoleError
from lspec.specfun import SeriesPolicy, gamma_complex, hyp3f2_unit

class TestScaledValue:
    def test_roundtrip(self):
        for x in (-3.5, 0.0, 1e-200, 7.25e250):
            assert float(cp.ScaledValue.from_float(x)) == pytest.approx(x, rel=1e-13)

    def test_multiplication(self):
        a = cp.ScaledValue.from_float(-2.0, 1000.0)
        b = cp.ScaledValue.from_float(3.0, -999.0)
        c = a * b
        assert c.sign == -1
        assert float(c) == pytest.approx(-6.0 * math.e, rel=1e-12)

    def test_invariants(self):
        with pytest.raises(ValueError):
            cp.ScaledValue(0, 1.0)
        with pytest.raises(ValueError):
            cp.ScaledValue(2, 0.0)

    def test_from_huge_fraction(self):
        from fractions import Fraction
        q = Fraction(10 ** 400, 3)
        v = cp.ScaledValue.from_fraction(q)
        assert v.sign == 1 and v.log_mag == pytest.approx(400 * math.log(10) - math.log(3), rel=1e-15)

class TestViaP:
    def test_examples(self):
        assert cp.charpoly_via_P(0.0, 37, 1.0) == pytest.approx(1.0)
        assert cp.charpoly_via_P(0.3 + 2j, 1, 1.0) == pytest.approx(0.7 - 2j)
        assert cp.charpoly_via_P(2.0, 2, 1.0) == pytest.approx(-1.0, rel=1e-15)

    def test_against_oracle(self, frozen):
        for e in frozen["charpoly"]:
            got = cp.charpoly_via_P(cplx(e["z"]), e["n"], e["nu"])
            ref = cplx(e["det"])
            assert abs(got - ref) <= 1e-12 * abs(ref), e

    def test_pole(self):
        with pytest.raises(PoleError):
            cp.charpoly_via_P(1.0, 3, -1.0)
        with pytest.raises(DomainError):
            cp.charpoly_via_P(1.0, 0, 1.0)

    def test_conjugation(self):
        xi = 0.5 + 0.5j
        a = cp.charpoly_via_P(xi, 300, 0.7)
        b = cp.charpoly_via_P(xi.conjugate(), 300, 0.7)
        assert abs(a.conjugate() - b) <= 1e-13 * abs(a)

    def test_scaled_eval_handles_overflow(self):
        v = cp.charpoly_eval(-1e6, 20000, 1.0).value
        assert isinstance(v, cp.ScaledValue) and v.sign == 1 and v.log_mag > 710
        assert cp.charpoly_via_P(-1e6, 20000, 1.0) == complex(math.inf, 0.0)

class TestThreeMethods:
    def test_nu1_3f2_examples(self):
        for n in (1, 5, 40, 200):
            assert cp.charpoly_nu1_3f2(0.25, n).real > 0
        assert abs(cp.charpoly_nu1_3f2(3 + math.sqrt(5), 2)) <= 1e-12
        a = cp.charpoly_nu1_3f2(0.1, 100)
        b = cp.charpoly_via_P(0.1, 100, 1.0)
        assert abs(a - b) <= 1e-10 * abs(b)

    def test_3f2_complex_path_small_n(self):
        z = 0.7 + 0.4j
        for n in (1, 2, 7, 15):
            a = cp.charpoly_nu1_3f2(z, n)
            b = cp.charpoly_via_P(z, n, 1.0)
            assert abs(a - b) <= 1e-11 * max(abs(b), 1.0)

    def test_3f2_real_output_for_real_z(self):
        v = cp.charpoly_nu1_3f2(0.6, 12, exact=False)
        assert abs(v.imag) <= 1e-12 * max(abs(v), 1.0)

    def test_three_way_agreement(self):
        rng = np.random.default_rng(11)
        for n in (2, 10, 50, 200):
            for z in rng.uniform(-1, 5, 20):
                vals = [cp.charpoly_eval(z, n, 1.0, m).value
                        for m in ("P_recurrence", "F32_terminating", "CDH_recurrence")]
                assert vals[0].rel_diff(vals[1]) <= 1e-9
                assert vals[0].rel_diff(vals[2]) <= 1e-9

    def test_recurrence_examples(self):
        s = cp.charpoly_nu1_recurrence(0.0, 10)
        assert np.allclose(s.to_float(), 1.0)
        assert cp.charpoly_nu1_recurrence(1.0, 2)[2] .__float__() == pytest.approx(-0.25)
        a = float(cp.charpoly_nu1_recurrence(0.2, 50)[50])
        b = cp.charpoly_nu1_3f2(0.2, 50).real
        assert a == pytest.approx(b, rel=1e-11)

    def test_seed_p0(self):
        # p_0 = 1 and p_1 = 1 - z must reproduce the closed forms for n = 2, 3
        for z in (-0.7, 0.3, 2.2):
            s = cp.charpoly_nu1_recurrence(z, 3).to_float()
            assert s[2] == pytest.approx(1 - 1.5 * z + z * z / 4, rel=1e-14)
            assert s[3] == pytest.approx(cp.charpoly_nu1_3f2(z, 3).real, rel=1e-13)

    def test_recurrence_residual(self):
        z = 0.9
        p = cp.charpoly_nu1_recurrence(z, 60).to_float()
        for n in range(1, 60):
            terms = [(n + 1) ** 2 * p[n + 1], (z - 2 * n * n - 2 * n - 1) * p[n], n * n * p[n - 1]]
            assert abs(sum(terms)) <= 1e-12 * max(abs(t) for t in terms)

    def test_method_restrictions(self):
        with pytest.raises(DomainError):
            cp.charpoly_eval(1.0, 5, 0.5, "F32_terminating")
        with pytest.raises(DomainError):
            cp.charpoly_eval(1j, 5, 1.0, "CDH_recurrence")
        with pytest.raises(ValueError):
            cp.charpoly_eval(1.0, 5, 1.0, "nope")

class TestRoots:
    @pytest.mark.parametrize("n", [1, 2, 7, 30, 200])
    def test_root_count(self, n):
        assert cp.charpoly_root_count(n, 0.25, 4 * n * n + 1) == n

    def test_quarter_positive(self):
        for n in (1, 10, 100, 1000, 10 ** 4):
            assert float(cp.charpoly_nu1_recurrence(0.25, n)[n]) > 0

    def test_sign_changes(self):
        assert cp.count_sign_changes([1, 0, -1, -2, 0, 3]) == 2
        assert cp.count_sign_changes([]) == 0

class TestQn:
    def test_examples(self):
        assert cp.q_n(0.0, 1) == pytest.approx(0.75)
        xi = math.sqrt(3 + math.sqrt(5) - 0.25)
        assert abs(cp.q_n(xi, 2)) <= 1e-12

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0, 5), st.integers(1, 3000))
    def test_even(self, xi, n):
        assert cp.q_n(xi, n) == cp.q_n(-xi, n)

    def test_vectorised(self):
        xs = np.linspace(0, 1, 7)
        v = cp.q_n(xs, 50)
        assert v.shape == (7,)
        assert v[3] == cp.q_n(xs[3], 50)

class TestChiPhi:
    def test_against_oracle(self, frozen):
        for e in frozen["chi"]:
            got = cp.chi(cplx(e["z"]), e["nu"])
            assert abs(got - cplx(e["chi"])) <= 1e-12 * abs(cplx(e["chi"]))
        for e in frozen["phi"]:
            got = cp.phi_n(cplx(e["z"]), e["n"], e["nu"])
            assert abs(got - cplx(e["phi"])) <= 1e-12 * abs(cplx(e["phi"]))

    def test_chi_nu1_closed_form(self):
        for z in (0.5, 0.1 + 0.7j, 2.0):
            closed = (z + 0.5) / (gamma_complex(z + 0.5) * gamma_complex(z + 1.5) ** 2)
            assert abs(cp.chi(z, 1.0) - closed) <= 1e-13 * abs(closed)

    def test_chi_small_margin(self):
        nu = 0.5
        v = cp.chi(-0.4, nu)
        assert math.isfinite(abs(v))
        slow = hyp3f2_unit(nu - 1, nu + 1, 0.1, nu + 0.1, nu + 0.1).terms
        fast = hyp3f2_unit(nu - 1, nu + 1, 1.5, nu + 1.5, nu + 1.5).terms
        assert slow > fast

    def test_chi_domain(self):
        with pytest.raises(DomainError):
            cp.chi(-0.6, 1.0)
        with pytest.raises(PoleError):
            cp.chi(0.3, -2.0)

    def test_phi_positive(self):
        v = cp.phi_n(0.0, 10, 1.0)
        assert abs(v.imag) <= 1e-15 and v.real > 0

    def test_phi_large_n(self):
        z = 0.3 + 0.2j
        errs = []
        for n in (100, 1000, 10000):
            v = n ** (0.5 + z) * gamma_complex(1 + 2 * z) * cp.phi_n(z, n, 1.0)
            errs.append(abs(v - 1))
        assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-3

    def test_phi_pole_guard(self):
        with pytest.raises(PoleError):
            cp.phi_n(-0.5, 5, 1.0)
        with pytest.raises(DomainError):
            cp.phi_n(0.3, 0, -1.0)

class TestAsymptotic:
    def test_ratio_tends_to_one(self):
        xi = 0.5 + 0.5j
        errs = [abs(cp.charpoly_via_P(xi, n, 1.0) / cp.charpoly_asymptotic(xi, n, 1.0) - 1)
                for n in (100, 1000, 10000)]
        assert errs[0] > errs[1] > errs[2]

    def test_rate_nu_half(self):
        # |ratio - 1| shrinks like 4^{-min(1, 2 Re z)} on n -> 4n
        xi = 0.5 + 0.5j
        z = -1j * cmath.sqrt(xi - 0.25)
        target = 4 ** min(1.0, 2 * z.real)
        errs = [abs(cp.charpoly_via_P(xi, n, 0.5) / cp.charpoly_asymptotic(xi, n, 0.5) - 1)
                for n in (400, 1600, 6400)]
        for a, b in zip(errs, errs[1:]):
            assert abs(a / b / target - 1) <= 0.30

    def test_domain(self):
        with pytest.raises(DomainError):
            cp.charpoly_asymptotic(0.5 - 0.5j, 100, 1.0)

class TestLogDerivative:
    def test_limit_value(self):
        assert cp.log_derivative_limit(1 + 1j) == pytest.approx(1 / (2j * cmath.sqrt(0.75 + 1j)))
        assert cp.log_derivative_limit(1 - 1j) == pytest.approx(-1 / (2j * cmath.sqrt(0.75 - 1j)))

    def test_derivative_matches_difference(self):
        xi, n = 0.8 + 0.3j, 500
        h = 1e-6
        fd = (cp.charpoly_via_P(xi + h, n, 1.0) - cp.charpoly_via_P(xi - h, n, 1.0)) / (2 * h)
        ratio = cp.log_derivative_ratio(xi, n, 1.0) * math.log(n)
        assert ratio == pytest.approx(fd / cp.charpoly_via_P(xi, n, 1.0), rel=1e-7)

    def test_conjugate_symmetry(self):
        a = cp.log_derivative_ratio(1 + 1j, 2000, 1.0)
        b = cp.log_derivative_ratio(1 - 1j, 2000, 1.0)
        assert b == pytest.approx(a.conjugate(), rel=1e-12)

    def test_trend(self):
        xi = 1 + 1j
        lim = cp.log_derivative_limit(xi)
        errs = [abs(cp.log_derivative_ratio(xi, n, 1.0) / lim - 1) for n in (10 ** 2, 4 * 10 ** 2, 16 * 10 ** 2, 10 ** 4)]
        assert all(a > b for a, b in zip(errs, errs[1:]))

    def test_one_over_log_law(self):
        # the relative error decays like c / log n; at 1e4 it is about 14 %, and 10 % is met at 1e6
        xi = 1 + 1j
        lim = cp.log_derivative_limit(xi)
        e4 = abs(cp.log_derivative_ratio(xi, 10 ** 4, 1.0) / lim - 1)
        e6 = abs(cp.log_derivative_ratio(xi, 10 ** 6, 1.0) / lim - 1)
        assert e6 <= 0.10
        assert e4 * math.log(1e4) == pytest.approx(e6 * math.log(1e6), rel=0.05)

    def test_domain(self):
        with pytest.raises(DomainError):
            cp.log_derivative_ratio(2.0, 10, 1.0)
        with pytest.raises(DomainError):
            cp.log_derivative_ratio(2.0 + 1j, 1, 1.0)

class TestContinuousDualHahn:
    @pytest.mark.parametrize("n", [1, 5, 20, 60])
    def test_identity(self, n):
        for z in (0.1, 0.9, 3.0):
            s = cp.cdh_S_sequence(z - 0.25, n)[n]
            ref = math.factorial(n) ** 2 * cp.charpoly_nu1_3f2(z, n).real
            assert s == pytest.approx(ref, rel=1e-10, abs=1e-300)
