"""Tests for deficit_lab.quantum.state."""

import dataclasses

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from deficit_lab.errors import (
    DimensionMismatchError,
    InvalidEnsembleError,
    InvalidStateError,
    UnknownSubsystemError,
)
from deficit_lab.quantum.linalg import allclose, identity, random_unitary
from deficit_lab.quantum.state import (
    DensityMatrix,
    Ensemble,
    PureState,
    entropy,
    holevo_chi,
    information_content,
    mutual_information,
    partial_trace,
    product_state,
    random_density_matrix,
    random_pure_state,
    restrict_alice,
    shannon_entropy,
    state_from_ensemble,
)

from .conftest import rng_for, seeds

dims_strategy = st.tuples(st.integers(min_value=2, max_value=3), st.integers(min_value=2, max_value=3))


class TestDensityMatrix:
    def test_single_system_default_dims(self):
        rho = DensityMatrix(identity(3) / 3)
        assert rho.dims == (3, 1)
        assert rho.dimension == 3

    def test_rejects_wrong_trace(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(identity(2))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.diag([1.5, -0.5]))

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_rejects_dims_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            DensityMatrix(identity(4) / 4, (2, 3))

    def test_state_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            DensityMatrix(identity(2))

    def test_tolerates_rounding_noise(self):
        rho = DensityMatrix(np.diag([1.0 + 5e-10, -5e-10]))
        assert entropy(rho) == pytest.approx(0.0, abs=1e-8)

    def test_matrix_is_read_only(self, bell):
        with pytest.raises(ValueError):
            bell.matrix[0, 0] = 1.0

    def test_frozen(self, bell):
        with pytest.raises(dataclasses.FrozenInstanceError):
            bell.dims = (4, 1)

    def test_equality(self, bell):
        again = state_from_ensemble([0.5, 0.5], [[1, 0], [0, 1]]).density()
        assert again == bell
        assert bell != bell.with_dims((4, 1))


class TestPureState:
    def test_rejects_unnormalized(self):
        with pytest.raises(InvalidStateError):
            PureState(np.array([1.0, 1.0]))

    def test_density(self):
        rho = PureState(np.array([0.6, 0.8])).density()
        assert allclose(rho.matrix, np.array([[0.36, 0.48], [0.48, 0.64]]))


class TestPartialTrace:
    def test_bell_marginals(self, bell):
        assert allclose(partial_trace(bell, "A").matrix, identity(2) / 2)
        assert allclose(partial_trace(bell, "B").matrix, identity(2) / 2)

    def test_product_factors(self, product):
        assert allclose(partial_trace(product, "A").matrix, np.diag([0.7, 0.3]))
        assert allclose(partial_trace(product, "B").matrix, np.array([[0.6, 0.2], [0.2, 0.4]]))

    def test_unequal_dims(self):
        rho = product_state(DensityMatrix(identity(3) / 3), DensityMatrix(np.diag([1.0, 0.0])))
        assert partial_trace(rho, "A").dims == (3, 1)
        assert allclose(partial_trace(rho, "B").matrix, np.diag([1.0, 0.0]))

    def test_unknown_label(self, bell):
        with pytest.raises(UnknownSubsystemError):
            partial_trace(bell, "C")


class TestEntropy:
    def test_maximally_mixed_qubit(self):
        assert entropy(DensityMatrix(identity(2) / 2)) == pytest.approx(1.0, abs=1e-12)

    def test_binary_entropy_quarter(self):
        assert entropy(DensityMatrix(np.diag([0.25, 0.75]))) == pytest.approx(0.811278, abs=1e-6)

    def test_pure_state_is_zero(self, bell):
        assert entropy(bell) == pytest.approx(0.0, abs=1e-12)

    def test_shannon(self):
        assert shannon_entropy([0.5, 0.25, 0.25]) == pytest.approx(1.5)
        assert shannon_entropy([1.0, 0.0]) == 0.0

    def test_information_content(self, bell):
        assert information_content(bell) == pytest.approx(2.0, abs=1e-12)
        assert information_content(DensityMatrix(identity(4) / 4, (2, 2))) == pytest.approx(0.0, abs=1e-12)

    def test_mutual_information(self, bell, classical, product):
        assert mutual_information(bell) == pytest.approx(2.0, abs=1e-10)
        assert mutual_information(classical) == pytest.approx(1.0, abs=1e-10)
        assert mutual_information(product) == pytest.approx(0.0, abs=1e-10)

    @given(seeds, dims_strategy)
    def test_subadditivity_and_araki_lieb(self, seed, dims):
        rho = random_density_matrix(dims, rng_for(seed))
        s_ab = entropy(rho)
        s_a = entropy(partial_trace(rho, "A"))
        s_b = entropy(partial_trace(rho, "B"))
        assert s_ab <= s_a + s_b + 1e-9
        assert abs(s_a - s_b) <= s_ab + 1e-9
        assert mutual_information(rho) >= -1e-9

    @given(seeds, dims_strategy)
    def test_unitary_invariance(self, seed, dims):
        rng = rng_for(seed)
        rho = random_density_matrix(dims, rng)
        u = random_unitary(dims[0] * dims[1], rng)
        rotated = DensityMatrix(u @ rho.matrix @ u.conj().T, dims)
        assert entropy(rotated) == pytest.approx(entropy(rho), abs=1e-9)

    @given(seeds, dims_strategy)
    def test_pure_marginals_match(self, seed, dims):
        rho = random_pure_state(dims, rng_for(seed)).density()
        assert entropy(partial_trace(rho, "A")) == pytest.approx(entropy(partial_trace(rho, "B")), abs=1e-9)


class TestEnsemble:
    def test_holevo_of_zero_and_plus(self):
        zero = PureState(np.array([1.0, 0.0])).density()
        plus = PureState(np.array([1.0, 1.0]) / np.sqrt(2)).density()
        assert holevo_chi(Ensemble([0.5, 0.5], (zero, plus))) == pytest.approx(0.600876, abs=1e-6)

    def test_average(self):
        zero = PureState(np.array([1.0, 0.0])).density()
        one = PureState(np.array([0.0, 1.0])).density()
        ensemble = Ensemble([0.25, 0.75], (zero, one))
        assert len(ensemble) == 2
        assert allclose(ensemble.average().matrix, np.diag([0.25, 0.75]))

    def test_rejects_bad_weights(self):
        zero = PureState(np.array([1.0, 0.0])).density()
        with pytest.raises(InvalidEnsembleError):
            Ensemble([0.6, 0.6], (zero, zero))
        with pytest.raises(InvalidEnsembleError):
            Ensemble([1.0], (zero, zero))

    def test_rejects_mixed_dimensions(self):
        zero = PureState(np.array([1.0, 0.0])).density()
        wide = DensityMatrix(identity(3) / 3)
        with pytest.raises(InvalidEnsembleError):
            Ensemble([0.5, 0.5], (zero, wide))


class TestConstructors:
    def test_state_from_ensemble_layout(self):
        psi = state_from_ensemble([0.36, 0.64], [[1, 0], [0, 1]])
        assert psi.dims == (2, 2)
        np.testing.assert_allclose(psi.amplitudes, [0.6, 0, 0, 0.8])

    def test_state_from_ensemble_three_states(self):
        states = [[1, 0], [0, 1], np.array([1, 1]) / np.sqrt(2)]
        psi = state_from_ensemble([0.5, 0.25, 0.25], states)
        assert psi.dims == (3, 2)
        rho_b = partial_trace(psi.density(), "B").matrix
        expected = 0.5 * np.diag([1, 0]) + 0.25 * np.diag([0, 1]) + 0.25 * np.full((2, 2), 0.5)
        assert allclose(rho_b, expected)

    def test_state_from_ensemble_rejects_unnormalized(self):
        with pytest.raises(InvalidStateError):
            state_from_ensemble([0.5, 0.5], [[1, 0], [1, 1]])

    def test_product_state_dims(self, product):
        assert product.dims == (2, 2)

    def test_restrict_alice_full_basis(self, product):
        assert allclose(restrict_alice(product, identity(2)).matrix, product.matrix)

    def test_restrict_alice_rejects_wrong_rows(self, product):
        with pytest.raises(DimensionMismatchError):
            restrict_alice(product, identity(3))

    @given(seeds, st.integers(min_value=1, max_value=4))
    def test_random_density_rank(self, seed, rank):
        rho = random_density_matrix((2, 2), rng_for(seed), rank=rank)
        assert np.linalg.matrix_rank(rho.matrix, tol=1e-12) == rank
