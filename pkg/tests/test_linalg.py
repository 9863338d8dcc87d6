import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uncertainty_bounds import linalg
from uncertainty_bounds.errors import NonSquare, NotHermitian, NotPSD, ValidationError
from uncertainty_bounds.quantum import random_observable

SHIFT = np.array([[0, 1], [0, 0]], dtype=complex)


class TestEigenvalues:
    def test_diagonal(self):
        assert linalg.hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])) == pytest.approx([1, 2, 3], abs=1e-14)

    def test_pauli_x(self):
        assert linalg.hermitian_eigenvalues([[0, 1], [1, 0]]) == pytest.approx([-1, 1], abs=1e-14)

    def test_complex_2x2(self):
        m = np.array([[2, 1 + 1j], [1 - 1j, 0]])
        want = [1 - math.sqrt(3), 1 + math.sqrt(3)]
        assert linalg.hermitian_eigenvalues(m) == pytest.approx(want, abs=1e-13)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            linalg.hermitian_eigenvalues(SHIFT)

    def test_rejects_non_square(self):
        with pytest.raises(NonSquare):
            linalg.hermitian_eigenvalues(np.zeros((2, 3)))

    @given(st.integers(0, 2**32 - 1), st.integers(1, 7))
    def test_matches_lapack(self, seed, d):
        a = random_observable(np.random.default_rng(seed), d).matrix
        assert np.allclose(linalg.hermitian_eigenvalues(a), np.linalg.eigvalsh(a), atol=1e-11)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 6))
    def test_eigenvectors_diagonalise(self, seed, d):
        a = random_observable(np.random.default_rng(seed), d).matrix
        vals, vecs = linalg.hermitian_eigh(a)
        assert np.allclose(vecs.conj().T @ vecs, np.eye(d), atol=1e-12)
        assert np.allclose(a @ vecs, vecs * vals, atol=1e-11)


class TestOperatorNorm:
    def test_shift(self):
        assert linalg.operator_norm(SHIFT) == pytest.approx(1.0, abs=1e-14)

    def test_diagonal(self):
        assert linalg.operator_norm(np.diag([3.0, -5.0])) == pytest.approx(5.0, abs=1e-13)

    def test_unitary(self, rng):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        q, _ = np.linalg.qr(g)
        assert linalg.operator_norm(q) == pytest.approx(1.0, abs=1e-12)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 6))
    def test_matches_svd(self, seed, d):
        g = np.random.default_rng(seed)
        m = g.normal(size=(d, d)) + 1j * g.normal(size=(d, d))
        assert linalg.operator_norm(m) == pytest.approx(np.linalg.norm(m, 2), rel=1e-10)


class TestNumericalRadius:
    def test_shift(self):
        assert linalg.numerical_radius_sweep(SHIFT) == pytest.approx(0.5, abs=1e-12)

    def test_hermitian_is_spectral_radius(self, rng):
        a = random_observable(rng, 5).matrix
        assert linalg.numerical_radius_sweep(a) == pytest.approx(np.max(np.abs(np.linalg.eigvalsh(a))), abs=1e-10)

    def test_lemma_a1_layout(self):
        m = np.array([[0, 3, 0], [1, 0, 0], [0, 0, 0]], dtype=complex)
        assert linalg.numerical_radius_sweep(m) == pytest.approx(2.0, abs=1e-10)

    def test_zero(self):
        assert linalg.numerical_radius_sweep(np.zeros((3, 3))) == 0.0

    @given(st.integers(0, 2**32 - 1), st.integers(1, 5))
    def test_between_half_norm_and_norm(self, seed, d):
        g = np.random.default_rng(seed)
        m = g.normal(size=(d, d)) + 1j * g.normal(size=(d, d))
        w, n = linalg.numerical_radius_sweep(m), np.linalg.norm(m, 2)
        assert 0.5 * n - 1e-10 <= w <= n + 1e-10

    @given(st.integers(0, 2**32 - 1), st.integers(2, 5), st.floats(0.0, 2 * math.pi))
    def test_rotation_invariant(self, seed, d, phi):
        g = np.random.default_rng(seed)
        m = g.normal(size=(d, d)) + 1j * g.normal(size=(d, d))
        assert linalg.numerical_radius_sweep(np.exp(1j * phi) * m) == pytest.approx(
            linalg.numerical_radius_sweep(m), rel=1e-9
        )

    def test_options_validated(self):
        with pytest.raises(ValidationError):
            linalg.RadiusOptions(coarse_grid=4)
        with pytest.raises(ValidationError):
            linalg.RadiusOptions(refine_tolerance=0.0)


class TestBoundary:
    def test_normal_matrix_on_real_segment(self):
        pts = linalg.numerical_range_boundary(np.diag([0.0, 1.0]), 4)
        assert np.allclose(pts.imag, 0, atol=1e-12)
        assert np.all((pts.real >= -1e-12) & (pts.real <= 1 + 1e-12))

    def test_commutator_with_projection_is_imaginary(self, rng):
        a = random_observable(rng, 4).matrix
        x = rng.normal(size=4) + 1j * rng.normal(size=4)
        x /= np.linalg.norm(x)
        p = np.outer(x, x.conj())
        pts = linalg.numerical_range_boundary(a @ p - p @ a, 32)
        assert np.allclose(pts.real, 0, atol=1e-12)

    def test_shift_disc(self):
        pts = linalg.numerical_range_boundary(SHIFT, 64)
        mods = np.abs(pts)
        assert np.all(mods <= 0.5 + 1e-12)
        assert mods.max() == pytest.approx(0.5, abs=1e-3)

    def test_needs_three_points(self):
        with pytest.raises(ValidationError):
            linalg.numerical_range_boundary(SHIFT, 2)


class TestSqrtAndKron:
    def test_identity(self):
        assert np.allclose(linalg.psd_sqrt(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        assert np.allclose(linalg.psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-13)

    def test_pure_bloch_state_is_own_root(self):
        s = 1 / math.sqrt(2)
        rho = 0.5 * np.array([[1 + s, s], [s, 1 - s]], dtype=complex)
        assert np.allclose(linalg.psd_sqrt(rho), rho, atol=1e-7)

    def test_rejects_negative(self):
        with pytest.raises(NotPSD):
            linalg.psd_sqrt(np.diag([1.0, -0.5]))

    def test_kron_identity(self):
        assert np.array_equal(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_vec_row_major(self):
        assert np.array_equal(linalg.vec([[1, 2], [3, 4]]), [1, 2, 3, 4])

    @given(st.integers(0, 2**32 - 1), st.integers(1, 4))
    def test_vec_left_multiplication(self, seed, d):
        g = np.random.default_rng(seed)
        a = g.normal(size=(d, d)) + 1j * g.normal(size=(d, d))
        t = g.normal(size=(d, d)) + 1j * g.normal(size=(d, d))
        assert np.allclose(linalg.kron(a, np.eye(d)) @ linalg.vec(t), linalg.vec(a @ t))
        assert np.array_equal(linalg.unvec(linalg.vec(t), d), t)
