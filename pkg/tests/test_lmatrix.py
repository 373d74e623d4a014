from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lspec import lmatrix as lm
from lspec.errors import PoleError, SingularMatrixError


def _exact_det(a):
    n = len(a)
    m = [[Fraction(a[max(i, j)]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


class TestSequence:
    def test_dense_entries(self):
        seq = lm.LSequence([3.0, 2.0, 1.0])
        assert np.array_equal(lm.dense_from_sequence(seq).entries,
                              [[3, 2, 1], [2, 2, 1], [1, 1, 1]])

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            lm.LSequence([])
        with pytest.raises(ValueError):
            lm.LSequence([1.0, np.nan])
        with pytest.raises(ValueError):
            lm.LSequence([1.0, 0.3], nu=1.0)

    def test_hilbert_tag(self):
        seq = lm.hilbert_l_sequence(4, 1.0)
        assert seq.nu == 1.0 and seq.n == 4
        assert np.allclose(seq.a, [1, 1 / 2, 1 / 3, 1 / 4])

    @pytest.mark.parametrize("nu", [0.0, -1.0, -3.0])
    def test_pole(self, nu):
        with pytest.raises(PoleError):
            lm.hilbert_l_sequence(5, nu)

    def test_negative_nu_beyond_range_is_fine(self):
        lm.hilbert_l_sequence(3, -3.0)  # poles only at j = 3, outside 0..2
        lm.hilbert_l_sequence(5, -0.5)

    def test_immutable(self):
        seq = lm.hilbert_l_sequence(3, 1.0)
        with pytest.raises(ValueError):
            seq.a[0] = 5.0


class TestDeterminant:
    def test_n1(self):
        assert lm.det_lmatrix(lm.LSequence([2.5])) == 2.5

    def test_hilbert_small(self):
        assert lm.det_lmatrix(lm.hilbert_l_sequence(2, 1.0)) == pytest.approx(0.25)
        assert lm.det_lmatrix(lm.hilbert_l_sequence(3, 1.0)) == pytest.approx(1 / 36)

    def test_equal_entries_give_zero(self):
        assert lm.det_lmatrix(lm.LSequence([1.0, 1.0, 0.5])) == 0.0

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(-20, 20), min_size=1, max_size=7))
    def test_matches_exact_elimination(self, ints):
        a = [float(x) for x in ints]
        got = lm.det_lmatrix(lm.LSequence(a))
        ref = float(_exact_det(a))
        assert got == pytest.approx(ref, rel=1e-12, abs=1e-12)


class TestInverse:
    def test_product_formula(self):
        seq = lm.LSequence([5.0, 3.0, 2.5, -1.0])
        T = lm.inverse_tridiagonal(seq)
        A = lm.dense_from_sequence(seq).entries
        assert np.allclose(T.to_dense() @ A, np.eye(4), atol=1e-13)

    def test_closed_form_matches_differences(self):
        for nu in (1.0, 0.5, 2.7, -0.5):
            seq = lm.hilbert_l_sequence(30, nu)
            a = lm.inverse_tridiagonal(seq, use_closed_form=True)
            b = lm.inverse_tridiagonal(seq, use_closed_form=False)
            assert np.allclose(a.diag, b.diag, rtol=1e-11)
            assert np.allclose(a.offdiag, b.offdiag, rtol=1e-11)

    def test_n1(self):
        T = lm.inverse_tridiagonal(lm.LSequence([4.0]))
        assert T.n == 1 and T.diag[0] == 0.25

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            lm.inverse_tridiagonal(lm.LSequence([1.0, 1.0, 0.5]))
        with pytest.raises(SingularMatrixError):
            lm.inverse_tridiagonal(lm.LSequence([1.0, 0.0]))

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(-10, 10), min_size=2, max_size=12, unique=True).filter(
        lambda a: a[-1] != 0 and min(abs(x - y) for x, y in zip(a, a[1:])) > 1e-2))
    def test_inverse_identity(self, a):
        seq = lm.LSequence(a)
        T = lm.inverse_tridiagonal(seq, use_closed_form=False)
        A = lm.dense_from_sequence(seq).entries
        scale = np.abs(T.to_dense()).max() * np.abs(A).max() * len(a)
        assert np.abs(T.to_dense() @ A - np.eye(len(a))).max() <= 1e-12 * scale

    def test_hilbert_inverse_entries(self):
        T = lm.inverse_tridiagonal(lm.hilbert_l_sequence(3, 1.0))
        assert np.array_equal(T.diag, [2.0, 8.0, 9.0])
        assert np.array_equal(T.offdiag, [-2.0, -6.0])


class TestJacobiB:
    def test_structure(self):
        B = lm.jacobi_B(1.0, 3)
        assert np.array_equal(B.diag, [2.0, 8.0, 18.0])
        assert np.array_equal(B.offdiag, [-2.0, -6.0])

    @pytest.mark.parametrize("nu", [0.5, 1.0, 3.0])
    @pytest.mark.parametrize("n", [1, 2, 10, 100])
    def test_rank_one_update(self, nu, n):
        assert lm.rank_one_residual(nu, n) <= 1e-12

    def test_positive_definite(self):
        lo, _ = lm.jacobi_B(1.0, 50).gershgorin()
        assert lo >= 0.0
        assert np.linalg.eigvalsh(lm.jacobi_B(1.0, 50).to_dense()).min() > 0


class TestContainers:
    def test_tridiagonal_validation(self):
        with pytest.raises(ValueError):
            lm.SymTridiagonal([1.0, 2.0], [1.0, 2.0])
        with pytest.raises(ValueError):
            lm.SymTridiagonal([])

    def test_gershgorin_contains_spectrum(self):
        T = lm.SymTridiagonal([1.0, -2.0, 3.0], [0.5, -1.5])
        lo, hi = T.gershgorin()
        ev = np.linalg.eigvalsh(T.to_dense())
        assert lo <= ev.min() and ev.max() <= hi

    def test_densesym_symmetry(self):
        with pytest.raises(ValueError):
            lm.DenseSym(2, [[1.0, 2.0], [3.0, 4.0]])
        with pytest.raises(ValueError):
            lm.DenseSym(3, np.eye(2))

    def test_hankel(self):
        H = lm.hilbert_hankel_dense(3, 1.0).entries
        assert H[0, 0] == 1.0 and H[2, 2] == pytest.approx(0.2)
        with pytest.raises(PoleError):
            lm.hilbert_hankel_dense(3, -4.0)
