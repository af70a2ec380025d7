import math

import numpy as np
import pytest

import twinfo as T
from twinfo.states import StateValidationError

from conftest import DIM_PAIRS, H_THREE_QUARTERS, bell_vector, product_state, random_state


def _density(diag_entries):
    return T.validate_density(np.diag(diag_entries).astype(complex))


def test_von_neumann_pure():
    assert T.von_neumann_entropy(_density([1.0, 0.0])) == 0.0


def test_von_neumann_maximally_mixed():
    assert T.von_neumann_entropy(_density([0.5, 0.5])) == pytest.approx(1.0, abs=1e-12)


def test_von_neumann_three_quarters():
    assert T.von_neumann_entropy(_density([0.75, 0.25])) == pytest.approx(
        H_THREE_QUARTERS, abs=1e-12
    )


def test_shannon_entropy_values():
    assert T.shannon_entropy([1.0, 0.0]) == 0.0
    assert T.shannon_entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-12)
    assert T.shannon_entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-12)


def test_shannon_entropy_rejects_bad_distributions():
    with pytest.raises(StateValidationError):
        T.shannon_entropy([0.5, 0.6])
    with pytest.raises(StateValidationError):
        T.shannon_entropy([1.5, -0.5])


def test_relative_entropy_self_is_zero():
    for seed in range(5):
        rho = T.validate_density(T.sample_random_density(T.Dims(2, 2), 4, seed))
        assert T.relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-10)


def test_relative_entropy_pure_vs_mixed():
    sigma = _density([1.0, 0.0])
    rho = _density([0.5, 0.5])
    assert T.relative_entropy(sigma, rho) == pytest.approx(1.0, abs=1e-12)


def test_relative_entropy_disjoint_supports():
    sigma = _density([1.0, 0.0])
    rho = _density([0.0, 1.0])
    assert T.relative_entropy(sigma, rho) == math.inf


def test_relative_entropy_dimension_mismatch():
    with pytest.raises(ValueError):
        T.relative_entropy(_density([1.0, 0.0]), _density([0.5, 0.25, 0.25]))


def test_relative_entropy_positive_for_distinct_states():
    sigma = _density([0.6, 0.4])
    rho = _density([0.5, 0.5])
    assert T.relative_entropy(sigma, rho) > 1e-3


def test_relative_entropy_nonnegative_on_random_pairs():
    dims = T.Dims(2, 3)
    for seed in range(100):
        sigma = T.validate_density(T.sample_random_density(dims, dims.total, seed, stream=1))
        rho = T.validate_density(T.sample_random_density(dims, dims.total, seed, stream=2))
        assert T.relative_entropy(sigma, rho) >= 0.0


def test_mutual_information_product_state():
    state = product_state(T.Dims(2, 3), seed=4)
    assert T.mutual_information(state) < 1e-9
    assert T.mutual_information_via_relative(state) < 1e-9


def test_mutual_information_bell(bell):
    assert T.mutual_information(bell) == pytest.approx(2.0, abs=1e-10)
    assert T.mutual_information_via_relative(bell) == pytest.approx(2.0, abs=1e-10)


def test_mutual_information_dephased_bell():
    state = T.dephase_in_schmidt_basis(bell_vector(), T.Dims(2, 2))
    assert T.mutual_information(state) == pytest.approx(1.0, abs=1e-10)


def test_mutual_information_forms_agree_on_seeded_state():
    state = random_state(T.Dims(2, 3), rank=6, seed=11)
    assert abs(T.mutual_information(state) - T.mutual_information_via_relative(state)) < 1e-9


@pytest.mark.parametrize("d1,d2", DIM_PAIRS)
def test_mutual_information_identity_randomized(d1, d2):
    dims = T.Dims(d1, d2)
    for k in range(1000):
        state = random_state(dims, rank=(k % dims.total) + 1, seed=k, stream=31)
        assert abs(T.mutual_information(state) - T.mutual_information_via_relative(state)) < 1e-9


@pytest.mark.parametrize("d1,d2", DIM_PAIRS)
def test_lieb_bound(d1, d2):
    dims = T.Dims(d1, d2)
    for k in range(300):
        state = random_state(dims, rank=(k % dims.total) + 1, seed=k, stream=37)
        s1 = T.von_neumann_entropy(state.rho1)
        s2 = T.von_neumann_entropy(state.rho2)
        assert T.mutual_information(state) <= 2.0 * min(s1, s2) + 1e-9


@pytest.mark.parametrize("d1,d2", DIM_PAIRS)
def test_pure_state_equalities(d1, d2):
    dims = T.Dims(d1, d2)
    for k in range(100):
        phi = T.sample_random_pure(dims, seed=k, stream=41)
        state = T.bipartite_from_pure(phi, dims)
        s1 = T.von_neumann_entropy(state.rho1)
        s2 = T.von_neumann_entropy(state.rho2)
        assert abs(s1 - s2) < 1e-8
        assert abs(T.mutual_information(state) - 2.0 * s1) < 1e-8


def test_zero_mutual_information_iff_product():
    dims = T.Dims(2, 2)
    for seed in range(50):
        state = product_state(dims, seed, stream=43)
        product = T.tensor_product(state.rho1.matrix, state.rho2.matrix)
        assert T.mutual_information(state) < 1e-9
        assert np.linalg.norm(state.rho12.matrix - product) < 1e-6
    for seed in range(50):
        phi = T.sample_random_pure(dims, seed, stream=47)
        state = T.bipartite_from_pure(phi, dims)
        product = T.tensor_product(state.rho1.matrix, state.rho2.matrix)
        if np.linalg.norm(state.rho12.matrix - product) >= 1e-6:
            assert T.mutual_information(state) >= 1e-9


def test_entanglement_entropy_values():
    dims = T.Dims(2, 2)
    assert T.entanglement_entropy(np.array([1, 0, 0, 0], dtype=complex), dims) == 0.0
    assert T.entanglement_entropy(bell_vector(), dims) == pytest.approx(1.0, abs=1e-12)
    phi = np.zeros(4, dtype=complex)
    phi[0] = np.sqrt(0.75)
    phi[3] = np.sqrt(0.25)
    assert T.entanglement_entropy(phi, dims) == pytest.approx(H_THREE_QUARTERS, abs=1e-12)


def test_entanglement_entropy_matches_both_reductions():
    dims = T.Dims(2, 3)
    phi = T.sample_random_pure(dims, seed=13)
    state = T.bipartite_from_pure(phi, dims)
    e = T.entanglement_entropy(phi, dims)
    assert e == pytest.approx(T.von_neumann_entropy(state.rho1), abs=1e-8)
    assert e == pytest.approx(T.von_neumann_entropy(state.rho2), abs=1e-8)


def test_entanglement_entropy_rejects_non_unit():
    with pytest.raises(StateValidationError):
        T.entanglement_entropy(np.ones(4, dtype=complex), T.Dims(2, 2))
