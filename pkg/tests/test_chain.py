import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uncertainty_bounds import chain, linalg
from uncertainty_bounds.errors import TooFewObservables
from uncertainty_bounds.instances import lemma_a1_matrix, lemma_a1_matrix_2x2, norm_counterexample, pauli_triple
from uncertainty_bounds.quantum import Observable, QuantumState, correlations, lift_mixed, pauli

from conftest import make_instance

X, Y, Z = (pauli(p) for p in "XYZ")
KET0 = QuantumState.from_vector([1.0, 0.0])
seeds = st.integers(0, 2**32 - 1)


class TestChainDirect:
    def test_eigenstate_gives_zero(self):
        assert np.allclose(chain.chain_direct([Z, Z, Z], KET0), 0)

    def test_xy_at_ket0(self):
        d2 = chain.chain_direct([X, Y], KET0)
        assert linalg.operator_norm(d2) == pytest.approx(1.0, abs=1e-14)

    def test_pauli_triple_radius(self):
        x = QuantumState.from_vector([math.cos(math.pi / 8), math.sin(math.pi / 8)])
        d3 = chain.chain_direct([X, Y, Z], x)
        assert linalg.numerical_radius_sweep(d3) == pytest.approx(0.5, abs=1e-10)

    def test_needs_two(self):
        with pytest.raises(TooFewObservables):
            chain.chain_direct([X], KET0)

    @given(seeds, st.integers(2, 5), st.integers(2, 6))
    def test_rank_at_most_two(self, seed, d, k):
        obs, x = make_instance(seed, d, k)
        sv = np.linalg.svd(chain.chain_direct(obs, x), compute_uv=False)
        assert np.all(sv[2:] <= 1e-10 * max(1.0, sv[0]))


class TestCoefficients:
    def test_k2(self, rng):
        obs, x = make_instance(3, 3, 2)
        c = chain.chain_coefficients(obs, x)
        v = x.vector
        a1x, a2x = obs[0].matrix @ v, obs[1].matrix @ v
        assert c.a == pytest.approx(-np.vdot(a1x, a2x))
        assert c.b == pytest.approx(np.vdot(v, a2x).real)
        assert c.c == pytest.approx(np.vdot(v, a1x).real)
        assert c.d == -1

    @given(seeds, st.integers(2, 5), st.integers(2, 7))
    def test_reconstruction(self, seed, d, k):
        obs, x = make_instance(seed, d, k)
        rec = chain.chain_coefficients(obs, x).reconstruct(obs, x)
        assert np.max(np.abs(rec - chain.chain_direct(obs, x))) <= 1e-9


class TestClosedForms:
    @pytest.mark.parametrize("abc,want", [((1, 0, 1), 1.0), ((0, 2, 0), 1.0), ((3, 4, 1), 2 * math.sqrt(2))])
    def test_examples(self, abc, want):
        assert chain.lemma_a1_radius(*abc) == pytest.approx(want, abs=1e-14)
        assert linalg.numerical_radius_sweep(lemma_a1_matrix(*abc)) == pytest.approx(want, abs=1e-10)

    @given(st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
    def test_matches_sweep(self, a, b, c):
        assert chain.lemma_a1_radius(a, b, c) == pytest.approx(
            linalg.numerical_radius_sweep(lemma_a1_matrix(a, b, c)), abs=1e-8 * (1 + abs(a) + abs(b) + abs(c)))
        assert chain.lemma_a1_radius_2x2(a, c) == pytest.approx(
            linalg.numerical_radius_sweep(lemma_a1_matrix_2x2(a, c)), abs=1e-8 * (1 + abs(a) + abs(c)))


class TestEffectiveMatrix:
    @given(seeds, st.integers(2, 5), st.integers(2, 7))
    def test_frame_entries(self, seed, d, k):
        obs, x = make_instance(seed, d, k)
        eff = chain.effective_matrix(obs, x)
        dk = chain.chain_direct(obs, x)
        basis = [e for e in eff.frame if e is not None]
        for i in range(2):
            for j, e in enumerate(basis):
                assert eff.f[i, j] == pytest.approx(np.vdot(basis[i], dk @ e), abs=1e-10)

    @given(seeds, st.integers(2, 5), st.integers(2, 7))
    def test_sparsity_by_parity(self, seed, d, k):
        obs, x = make_instance(seed, d, k)
        f = chain.effective_matrix(obs, x).f
        zero = [(0, 1), (0, 2), (1, 0)] if k % 2 == 0 else [(0, 0), (1, 1), (1, 2)]
        for i, j in zero:
            assert abs(f[i, j]) <= 1e-10 * max(1.0, np.abs(f).max())

    @given(seeds, st.integers(2, 5), st.integers(2, 7))
    def test_radius_matches_sweep(self, seed, d, k):
        obs, x = make_instance(seed, d, k)
        exact = chain.radius_exact(chain.effective_matrix(obs, x))
        assert exact == pytest.approx(linalg.numerical_radius_sweep(chain.chain_direct(obs, x)), abs=1e-8)

    @given(seeds, st.integers(2, 5), st.integers(2, 7))
    def test_correlation_route_agrees(self, seed, d, k):
        obs, x = make_instance(seed, d, k)
        a = chain.effective_matrix(obs, x)
        b = chain.effective_from_correlations(correlations(obs, x))
        assert np.allclose(np.abs(a.f), np.abs(b.f), atol=1e-10)
        assert chain.radius_exact(a) == pytest.approx(chain.radius_exact(b), abs=1e-10)

    @given(seeds, st.integers(2, 5), st.integers(2, 7))
    def test_norm_matches_svd(self, seed, d, k):
        obs, x = make_instance(seed, d, k)
        norm, _ = chain.norm_exact(chain.effective_matrix(obs, x))
        assert norm == pytest.approx(np.linalg.norm(chain.chain_direct(obs, x), 2), abs=1e-10)

    @pytest.mark.parametrize("r3", [0.0, 0.3, -0.8, 1.0])
    def test_xy_k2(self, r3):
        (lx, ly), x = lift_mixed([X, Y], QuantumState.from_bloch((0, 0, r3)))
        assert chain.radius_exact(chain.effective_matrix([lx, ly], x)) == pytest.approx(0.5 * (abs(r3) + 1), abs=1e-12)

    def test_degenerate_first_deviation(self):
        eff = chain.effective_matrix([Z, X], KET0)
        assert chain.radius_exact(eff) == 0.0

    def test_pauli_triple_equality_point(self):
        obs, s = pauli_triple()
        lobs, x = lift_mixed(obs, s)
        assert chain.radius_exact(chain.effective_matrix(lobs, x)) == pytest.approx(0.5, abs=1e-12)

    def test_counterexample_chain_is_e11(self):
        obs, x = norm_counterexample()
        d4 = chain.chain_direct(obs, x)
        e11 = np.zeros((3, 3))
        e11[0, 0] = 1
        assert np.allclose(d4, e11)
        norm, branch = chain.norm_exact(chain.effective_matrix(obs, x))
        assert (norm, branch) == (pytest.approx(1.0), "f11")

    def test_z_z_at_plus(self):
        x = QuantumState.from_vector([1.0, 1.0], normalize=True)
        norm, _ = chain.norm_exact(chain.effective_matrix([Z, Observable("Z'", Z.matrix)], x))
        assert norm == pytest.approx(1.0, abs=1e-14)


class TestPatternEntries:
    def test_k2_entries(self):
        obs, x = make_instance(21, 3, 2)
        eff = chain.effective_matrix(obs, x)
        c = correlations(obs, x)
        assert eff.f[0, 0] == pytest.approx(c.means[0] * c.means[1] - c.pair_moments[0, 1], abs=1e-13)
        assert abs(eff.f[1, 1]) == pytest.approx(c.deviations[0] * abs(eff.beta_prime), abs=1e-13)
        assert abs(eff.f[1, 2]) == pytest.approx(c.deviations[0] * eff.gamma_prime, abs=1e-13)

    def test_k3_entries(self):
        obs, x = make_instance(22, 4, 3)
        eff = chain.effective_matrix(obs, x)
        c = correlations(obs, x)
        assert abs(eff.f[0, 1]) == pytest.approx(abs(c.alphas[0, 1]) * abs(eff.beta_prime), abs=1e-13)
        assert eff.f[1, 0] == pytest.approx((c.means[1] * c.means[2] - c.pair_moments[1, 2]) * c.deviations[0], abs=1e-13)
        assert abs(eff.f[0, 0]) < 1e-13

    @given(seeds, st.integers(2, 5), st.integers(2, 7))
    def test_beta_prime_from_alpha(self, seed, d, k):
        obs, x = make_instance(seed, d, k)
        eff = chain.effective_matrix(obs, x)
        c = correlations(obs, x)
        if c.deviations[0] > 1e-8:
            assert eff.beta_prime == pytest.approx(c.alphas[0, k - 1] / c.deviations[0], abs=1e-10)
            assert eff.frame[1] is not None
            assert np.vdot(eff.frame[1], obs[0].matrix @ x.vector) == pytest.approx(c.deviations[0], abs=1e-12)

    @given(seeds, st.integers(2, 5), st.integers(1, 3))
    def test_even_f11_is_product_of_odd_links(self, seed, d, n):
        obs, x = make_instance(seed, d, 2 * n)
        al = np.abs(correlations(obs, x).alphas)
        want = np.prod([al[2 * j - 2, 2 * j - 1] for j in range(1, n + 1)])
        assert abs(chain.effective_matrix(obs, x).f[0, 0]) == pytest.approx(want, rel=1e-9, abs=1e-12)

    @given(seeds, st.integers(2, 4), st.integers(2, 6), st.floats(0, 2 * math.pi))
    def test_radius_phase_invariant(self, seed, d, k, phi):
        obs, x = make_instance(seed, d, k)
        y = QuantumState.from_vector(np.exp(1j * phi) * x.vector)
        assert chain.radius_exact(chain.effective_matrix(obs, y)) == pytest.approx(
            chain.radius_exact(chain.effective_matrix(obs, x)), abs=1e-12)
