import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envarium import (
    Bipartition,
    StateVector,
    ValidationError,
    apply_unitary_on_subset,
    global_phase_distance,
    new_ground_state,
    partial_trace_over_e,
    reshape_to_matrix,
    schmidt_decompose,
)
from envarium.bipartite import state_from_matrix

from oracles import random_state, random_unitary, reshape_by_enumeration

S2 = 1 / np.sqrt(2)
BELL = StateVector([S2, 0, 0, S2])


def ghz(n):
    v = np.zeros(2**n)
    v[0] = v[-1] = S2
    return StateVector(v)


def random_partition(rng, n):
    perm = [int(q) for q in rng.permutation(n)]
    k = int(rng.integers(1, n))
    return Bipartition(perm[:k], perm[k:])


def test_bipartition_validation():
    with pytest.raises(ValidationError):
        Bipartition([], [0])
    with pytest.raises(ValidationError):
        Bipartition([0], [0])
    with pytest.raises(ValidationError):
        reshape_to_matrix(ghz(3), Bipartition([0], [1]))


def test_bell_reshape_is_scaled_identity():
    np.testing.assert_allclose(reshape_to_matrix(BELL, Bipartition([1], [0])), S2 * np.eye(2))


def test_product_reshape_rank_one():
    m = reshape_to_matrix(new_ground_state(2), Bipartition([1], [0]))
    np.testing.assert_array_equal(m, [[1, 0], [0, 0]])


def test_reshape_matches_index_oracle():
    rng = np.random.default_rng(3)
    psi = StateVector(random_state(rng, 3))
    for s, e in ([[2, 1], [0]], [[1, 2], [0]], [[0], [2, 1]], [[2, 0], [1]]):
        got = reshape_to_matrix(psi, Bipartition(s, e))
        np.testing.assert_array_equal(got, reshape_by_enumeration(psi.amplitudes, s, e))
        assert np.sum(np.abs(got) ** 2) == pytest.approx(1.0)


def test_state_from_matrix_inverts_reshape():
    rng = np.random.default_rng(4)
    psi = StateVector(random_state(rng, 4))
    part = Bipartition([3, 0], [1, 2])
    back = state_from_matrix(reshape_to_matrix(psi, part), part)
    np.testing.assert_allclose(back.amplitudes, psi.amplitudes)


def test_reduced_states():
    np.testing.assert_allclose(partial_trace_over_e(BELL, Bipartition([1], [0])), np.eye(2) / 2)
    np.testing.assert_allclose(
        partial_trace_over_e(new_ground_state(2), Bipartition([1], [0])), [[1, 0], [0, 0]]
    )
    rho = partial_trace_over_e(ghz(3), Bipartition([2, 1], [0]))
    np.testing.assert_allclose(rho, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


def test_schmidt_examples():
    np.testing.assert_allclose(schmidt_decompose(BELL, Bipartition([1], [0])).coefficients, [S2, S2])
    prod = schmidt_decompose(new_ground_state(2), Bipartition([1], [0]))
    np.testing.assert_allclose(prod.coefficients, [1, 0])
    assert prod.rank == 1
    five = schmidt_decompose(ghz(5), Bipartition([4, 3, 2], [1, 0]))
    np.testing.assert_allclose(five.coefficients, [S2, S2, 0, 0], atol=1e-15)
    assert five.rank == 2


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 5))
def test_density_and_schmidt_invariants(seed, n):
    rng = np.random.default_rng(seed)
    psi = StateVector(random_state(rng, n))
    part = random_partition(rng, n)
    rho = partial_trace_over_e(psi, part)
    assert abs(np.trace(rho) - 1) < 1e-10
    assert np.max(np.abs(rho - rho.conj().T)) < 1e-10
    assert np.min(np.linalg.eigvalsh(rho)) > -1e-10

    sd = schmidt_decompose(psi, part)
    c = sd.coefficients
    assert np.all(np.diff(c) <= 1e-15) and np.all(c >= 0)
    assert abs(np.sum(c**2) - 1) < 1e-10
    for basis in (sd.s_basis, sd.e_basis):
        assert np.max(np.abs(basis.conj().T @ basis - np.eye(basis.shape[1]))) < 1e-10
    rebuilt = state_from_matrix(sd.reconstruct(), part)
    assert global_phase_distance(rebuilt, psi) < 1e-8

    eig = np.sort(np.linalg.eigvalsh(rho))[::-1][: len(c)]
    np.testing.assert_allclose(eig, c**2, atol=1e-8)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 4))
def test_schmidt_coefficients_invariant_under_local_unitaries(seed, n):
    rng = np.random.default_rng(seed)
    psi = StateVector(random_state(rng, n))
    part = random_partition(rng, n)
    moved = apply_unitary_on_subset(psi, random_unitary(rng, part.dim_s), part.s_qubits)
    moved = apply_unitary_on_subset(moved, random_unitary(rng, part.dim_e), part.e_qubits)
    np.testing.assert_allclose(
        schmidt_decompose(moved, part).coefficients, schmidt_decompose(psi, part).coefficients, atol=1e-8
    )
