"""Tests for the orthonormal observable basis and commutator helpers."""

import json

import numpy as np
import pytest

from qumetrics.linalg import random_observable, random_orthogonal
from qumetrics.measures import wyd_info
from qumetrics.observables import (
    ObservableBasis,
    as_observable,
    commutator,
    commutes,
    load_observable,
    rotate_basis,
    standard_basis,
)
from qumetrics.states import matrix_to_dict, random_density

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class TestStandardBasis:
    def test_dimension_one(self):
        basis = standard_basis(1)
        assert len(basis) == 1
        np.testing.assert_allclose(basis[0], [[1.0]])

    def test_dimension_two_elements(self):
        basis = standard_basis(2)
        assert len(basis) == 4
        np.testing.assert_allclose(basis[0], np.diag([1.0, 0.0]))
        np.testing.assert_allclose(basis[1], np.diag([0.0, 1.0]))
        np.testing.assert_allclose(basis[2], SIGMA_X / np.sqrt(2))
        np.testing.assert_allclose(basis[3], SIGMA_Y / np.sqrt(2))

    @pytest.mark.parametrize("n", [2, 3, 4, 6])
    def test_gram_matrix_is_identity(self, n):
        basis = standard_basis(n)
        assert np.abs(basis.gram() - np.eye(n * n)).max() <= 1e-12

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_spans_hermitian_space(self, n):
        rng = np.random.default_rng(n)
        basis = standard_basis(n)
        for _ in range(5):
            a = random_observable(n, rng)
            rebuilt = sum(
                np.trace(a @ h).real * h for h in basis
            )
            assert np.abs(rebuilt - a).max() <= 1e-10

    def test_elements_are_hermitian(self):
        for h in standard_basis(4):
            assert np.abs(h - h.conj().T).max() == 0.0

    def test_rejects_non_orthonormal_construction(self):
        bad = (np.eye(1), )
        with pytest.raises(ValueError, match="elements"):
            ObservableBasis(2, bad)
        with pytest.raises(ValueError, match="orthonormal"):
            ObservableBasis(1, (np.array([[2.0]]),))


class TestRotateBasis:
    def test_identity_rotation(self):
        basis = standard_basis(2)
        rotated = rotate_basis(basis, np.eye(4))
        for original, new in zip(basis, rotated):
            np.testing.assert_allclose(new, original)

    def test_permutation_reorders(self):
        basis = standard_basis(2)
        perm = np.eye(4)[[1, 0, 2, 3]]
        rotated = rotate_basis(basis, perm)
        np.testing.assert_allclose(rotated[0], basis[1])
        np.testing.assert_allclose(rotated[1], basis[0])

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_random_rotation_stays_orthonormal(self, n):
        basis = standard_basis(n)
        o = random_orthogonal(n * n, n)
        rotated = rotate_basis(basis, o)
        assert np.abs(rotated.gram() - np.eye(n * n)).max() <= 1e-10

    def test_rotated_elements_stay_hermitian(self):
        rotated = rotate_basis(standard_basis(3), random_orthogonal(9, 0))
        for h in rotated:
            assert np.abs(h - h.conj().T).max() == 0.0

    def test_rejects_non_orthogonal(self):
        with pytest.raises(ValueError, match="orthogonal"):
            rotate_basis(standard_basis(2), np.full((4, 4), 0.5) + np.eye(4))

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError, match="4x4"):
            rotate_basis(standard_basis(2), np.eye(3))

    @pytest.mark.parametrize("n", [2, 3])
    def test_measure_sum_is_rotation_invariant(self, n):
        # the uncertainty summed over a basis must not depend on the basis
        rng = np.random.default_rng(50 + n)
        rho = random_density(n, rng)
        basis = standard_basis(n)
        rotated = rotate_basis(basis, random_orthogonal(n * n, rng))
        for alpha in (0.25, 0.5, 0.8):
            plain = sum(wyd_info(rho, h, alpha) for h in basis)
            turned = sum(wyd_info(rho, h, alpha) for h in rotated)
            assert abs(plain - turned) <= 1e-8


class TestCommutators:
    def test_identity_commutes(self):
        a = random_observable(3, 1)
        assert np.abs(commutator(a, np.eye(3))).max() == 0.0
        assert commutes(a, np.eye(3))

    def test_diagonal_matrices_commute(self):
        assert commutes(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))

    def test_pauli_commutator(self):
        np.testing.assert_allclose(commutator(SIGMA_X, SIGMA_Y), 2j * SIGMA_Z)
        assert not commutes(SIGMA_X, SIGMA_Y)

    def test_scale_aware_default_tolerance(self):
        a = 1e6 * SIGMA_X
        b = 1e6 * SIGMA_X + 1e-7 * SIGMA_Y
        # absolute commutator is ~0.2, but tiny against the 1e12 scale
        assert commutes(a, b)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            commutator(np.eye(2), np.eye(3))


class TestObservableIO:
    def test_as_observable_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            as_observable(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_load_relaxes_trace_requirement(self, tmp_path):
        x = random_observable(3, 2) * 5.0  # trace far from 1 is fine
        path = tmp_path / "obs.json"
        path.write_text(json.dumps(matrix_to_dict(x)))
        np.testing.assert_allclose(load_observable(path), x)

    def test_load_rejects_non_hermitian(self, tmp_path):
        path = tmp_path / "obs.json"
        path.write_text(
            json.dumps(matrix_to_dict(np.array([[0.0, 1.0], [0.0, 0.0]])))
        )
        with pytest.raises(ValueError, match="Hermitian"):
            load_observable(path)
