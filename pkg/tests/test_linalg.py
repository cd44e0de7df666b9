"""Tests for the spectral linear-algebra substrate."""

import numpy as np
import pytest

from qumetrics.linalg import (
    EigenDecomposition,
    NotPositiveSemidefiniteError,
    eig_hermitian,
    hermitize,
    matrix_power,
    partial_trace,
    random_ginibre_density,
    random_observable,
    random_orthogonal,
    random_unitary,
    tensor,
    trace,
    trace_product,
    trace_quad,
)
from qumetrics.states import hansen_unnormalized

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

# Closed-form spectrum of the integer Hansen matrix: the swap symmetry
# (1<->4, 2<->3) splits it into two antisymmetric 1x1 blocks with values
# 1 and 4 and the symmetric 2x2 block [[13, 10], [10, 8]] whose roots are
# (21 +- sqrt(425))/2.
HANSEN_STAR_EIGS = np.array(
    [(21 + np.sqrt(425)) / 2, 4.0, 1.0, (21 - np.sqrt(425)) / 2]
)


class TestEigHermitian:
    def test_identity(self):
        w, v = eig_hermitian(np.eye(2))
        np.testing.assert_allclose(w, [1.0, 1.0])
        np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)

    def test_already_diagonal(self):
        w, v = eig_hermitian(np.diag([3.0, -1.0]))
        np.testing.assert_allclose(w, [3.0, -1.0])
        np.testing.assert_allclose(np.abs(v), np.eye(2), atol=1e-12)

    def test_hansen_matrix_closed_form(self):
        w, _ = eig_hermitian(hansen_unnormalized())
        np.testing.assert_allclose(w, HANSEN_STAR_EIGS, atol=1e-10)

    def test_hansen_eigs_are_characteristic_roots(self):
        # independent oracle: each closed-form eigenvalue must be a root of
        # det(A - x I), evaluated through LU-based determinants
        a = hansen_unnormalized()
        for x in HANSEN_STAR_EIGS:
            assert abs(np.linalg.det(a - x * np.eye(4))) < 1e-8 * 26**3

    @pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
    def test_reconstruction_and_orthonormality(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(100):
            a = random_observable(n, rng)
            w, v = eig_hermitian(a)
            scale = max(1.0, np.abs(a).max())
            assert np.abs((v * w) @ v.conj().T - a).max() <= 1e-10 * scale
            assert np.abs(v.conj().T @ v - np.eye(n)).max() <= 1e-10
            assert np.all(np.diff(w) <= 0)

    def test_deterministic_with_phase_convention(self):
        a = random_observable(5, 11)
        first = eig_hermitian(a)
        second = eig_hermitian(a)
        np.testing.assert_array_equal(first.eigenvalues, second.eigenvalues)
        np.testing.assert_array_equal(first.eigenvectors, second.eigenvectors)
        for j in range(5):
            column = first.eigenvectors[:, j]
            lead = column[np.flatnonzero(np.abs(column) > 1e-12)[0]]
            assert lead.real > 0
            assert abs(lead.imag) < 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="not Hermitian"):
            eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_returns_named_tuple(self):
        result = eig_hermitian(np.eye(3))
        assert isinstance(result, EigenDecomposition)


class TestMatrixPower:
    @pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 0.75, 1.0])
    def test_scalar_matrix(self, alpha):
        n = 4
        expected = n ** (-alpha) * np.eye(n)
        np.testing.assert_allclose(matrix_power(np.eye(n) / n, alpha), expected, atol=1e-14)

    @pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
    def test_pure_projector_is_fixed_point(self, alpha):
        psi = np.array([1.0, 1.0j, -1.0]) / np.sqrt(3)
        projector = np.outer(psi, psi.conj())
        np.testing.assert_allclose(
            matrix_power(projector, alpha), projector, atol=1e-12
        )

    def test_hansen_quarter_power_trace(self):
        # oracle: scalar powers of the closed-form eigenvalues
        expected = np.sum((HANSEN_STAR_EIGS / 26.0) ** 0.25)
        assert abs(expected - 2.308199025377811) < 1e-12
        fourth_root = matrix_power(hansen_unnormalized() / 26.0, 0.25)
        assert abs(np.trace(fourth_root).real - expected) < 1e-12

    def test_square_root_squares_back(self):
        rng = np.random.default_rng(3)
        for n in (2, 4, 6):
            rho = random_ginibre_density(n, rng)
            root = matrix_power(rho, 0.5)
            assert np.abs(root @ root - rho).max() <= 1e-9

    @pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 0.9])
    def test_complementary_powers_multiply_back(self, alpha):
        rho = random_ginibre_density(5, 17)
        product = matrix_power(rho, alpha) @ matrix_power(rho, 1.0 - alpha)
        assert np.abs(product - rho).max() <= 1e-9

    def test_zero_eigenvalue_convention(self):
        np.testing.assert_allclose(
            matrix_power(np.diag([1.0, 0.0]), 0.3), np.diag([1.0, 0.0]), atol=1e-14
        )

    def test_alpha_zero_gives_support_projector(self):
        result = matrix_power(np.diag([0.5, 0.5, 0.0]), 0.0)
        np.testing.assert_allclose(result, np.diag([1.0, 1.0, 0.0]), atol=1e-14)

    def test_rejects_indefinite_matrix(self):
        with pytest.raises(NotPositiveSemidefiniteError) as excinfo:
            matrix_power(np.diag([0.6, 0.6, -0.2]), 0.5)
        assert excinfo.value.eigenvalue == pytest.approx(-0.2)

    @pytest.mark.parametrize("alpha", [-0.1, 1.5])
    def test_rejects_alpha_outside_unit_interval(self, alpha):
        with pytest.raises(ValueError, match="alpha"):
            matrix_power(np.eye(2), alpha)


class TestTraces:
    def test_trace_identity(self):
        assert trace(np.eye(4)) == 4.0

    def test_trace_product_purity(self):
        rho = np.eye(4) / 4
        assert trace_product(rho, rho) == pytest.approx(0.25, abs=1e-15)

    def test_trace_quad_ground_state_flip(self):
        rho = np.diag([1.0, 0.0])
        root = matrix_power(rho, 0.5)
        assert trace_quad(root, SIGMA_X, root, SIGMA_X) == pytest.approx(0.0, abs=1e-15)

    def test_trace_quad_matches_explicit_product(self):
        rng = np.random.default_rng(5)
        for n in (2, 3, 5):
            a = random_ginibre_density(n, rng)
            b = random_ginibre_density(n, rng)
            x = random_observable(n, rng)
            y = random_observable(n, rng)
            explicit = np.trace(a @ x @ b @ y)
            got = trace_quad(a, x, b, y)
            assert abs(got - explicit) <= 1e-10 * max(1.0, abs(explicit))

    def test_trace_quad_discards_roundoff_imaginary_part(self):
        rho = random_ginibre_density(3, 9)
        x = random_observable(3, 10)
        value = trace_quad(matrix_power(rho, 0.3), x, matrix_power(rho, 0.7), x)
        assert isinstance(value, float)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            trace_product(np.eye(2), np.eye(3))
        with pytest.raises(ValueError):
            trace_quad(np.eye(2), np.eye(2), np.eye(3), np.eye(3))


class TestTensorAndPartialTrace:
    def test_identity_tensor(self):
        np.testing.assert_array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonal_tensor(self):
        got = tensor(np.diag([2.0, 3.0]), np.diag([5.0, 7.0]))
        np.testing.assert_allclose(got, np.diag([10.0, 14.0, 15.0, 21.0]))

    def test_projector_tensor_mixed(self):
        got = tensor(np.diag([1.0, 0.0]), np.eye(2) / 2)
        np.testing.assert_allclose(got, np.diag([0.5, 0.5, 0.0, 0.0]))

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 4)])
    def test_partial_trace_recovers_factors(self, dims):
        rng = np.random.default_rng(sum(dims))
        a = random_ginibre_density(dims[0], rng)
        b = random_ginibre_density(dims[1], rng)
        product = tensor(a, b)
        assert np.abs(partial_trace(product, 2, dims) - a).max() <= 1e-12
        assert np.abs(partial_trace(product, 1, dims) - b).max() <= 1e-12

    def test_singlet_reduces_to_maximally_mixed(self):
        singlet = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)
        projector = np.outer(singlet, singlet)
        np.testing.assert_allclose(
            partial_trace(projector, 2, (2, 2)), np.eye(2) / 2, atol=1e-15
        )

    def test_maximally_mixed_reduction(self):
        np.testing.assert_allclose(
            partial_trace(np.eye(4) / 4, 1, (2, 2)), np.eye(2) / 2, atol=1e-15
        )

    def test_bad_dims_rejected(self):
        with pytest.raises(ValueError, match="factor"):
            partial_trace(np.eye(6), 1, (2, 2))
        with pytest.raises(ValueError, match="subsystem"):
            partial_trace(np.eye(4), 3, (2, 2))


class TestRandomGenerators:
    def test_dimension_one_density(self):
        np.testing.assert_allclose(random_ginibre_density(1, 0), [[1.0]])

    @pytest.mark.parametrize("n", [2, 3, 4, 8])
    def test_unitary_is_unitary(self, n):
        u = random_unitary(n, 42)
        assert np.abs(u.conj().T @ u - np.eye(n)).max() <= 1e-10

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_density_invariants(self, n):
        rho = random_ginibre_density(n, 42)
        assert abs(np.trace(rho).real - 1.0) <= 1e-12
        assert np.linalg.eigvalsh(rho).min() >= -1e-14
        assert np.abs(rho - rho.conj().T).max() == 0.0

    def test_rank_deficient_density(self):
        rho = random_ginibre_density(4, 1, rank=2)
        eigs = np.linalg.eigvalsh(rho)
        assert np.sum(eigs > 1e-12) == 2

    def test_observable_is_exactly_hermitian(self):
        x = random_observable(5, 3)
        assert np.abs(x - x.conj().T).max() == 0.0

    def test_orthogonal_is_orthogonal(self):
        o = random_orthogonal(9, 4)
        assert np.abs(o.T @ o - np.eye(9)).max() <= 1e-10

    def test_seeded_determinism(self):
        np.testing.assert_array_equal(
            random_ginibre_density(4, 123), random_ginibre_density(4, 123)
        )
        np.testing.assert_array_equal(random_unitary(4, 123), random_unitary(4, 123))

    def test_hermitize(self):
        a = np.array([[1.0, 2.0], [0.0, 3.0]])
        h = hermitize(a)
        np.testing.assert_array_equal(h, h.conj().T)
