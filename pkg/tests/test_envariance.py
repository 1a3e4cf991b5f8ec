import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envarium import (
    GATES,
    Bipartition,
    NotEnvariantError,
    StateVector,
    ValidationError,
    check_envariance,
    construct_assisting_unitary,
    new_ground_state,
    verify_pair,
)
from envarium.bipartite import partial_trace_over_e, state_from_matrix

from oracles import brute_force_restore, phase_aligned_distance, random_state, random_unitary

X, H, I2 = GATES["x"], GATES["h"], GATES["i"]
S2 = 1 / np.sqrt(2)
BELL = StateVector([S2, 0, 0, S2])
PAIR = Bipartition([1], [0])


def ghz(n):
    v = np.zeros(2**n)
    v[0] = v[-1] = S2
    return StateVector(v)


def assert_equal_up_to_phase(a, b, atol=1e-10):
    assert phase_aligned_distance(np.asarray(a), np.asarray(b)) < atol


def test_bell_swap_is_envariant():
    rep = check_envariance(BELL, X, PAIR)
    assert rep.envariant
    assert rep.residual_restore < 1e-10
    assert_equal_up_to_phase(rep.assisting_unitary, X)
    np.testing.assert_allclose(rep.intermediate_state.amplitudes, [0, S2, S2, 0])


def test_product_state_counterexample():
    rep = check_envariance(new_ground_state(2), X, PAIR)
    assert not rep.envariant
    assert rep.assisting_unitary is None
    assert rep.residual_condition == pytest.approx(np.sqrt(2))
    assert rep.residual_condition > rep.tolerance_used


def test_identity_always_envariant():
    rng = np.random.default_rng(1)
    for n, part in ((2, PAIR), (3, Bipartition([0], [2, 1])), (4, Bipartition([3, 1], [0, 2]))):
        psi = StateVector(random_state(rng, n))
        rep = check_envariance(psi, np.eye(part.dim_s), part)
        assert rep.envariant
        np.testing.assert_allclose(rep.assisting_unitary, np.eye(part.dim_e), atol=1e-10)


def test_bell_hadamard_envariant():
    rep = check_envariance(BELL, H, PAIR)
    assert rep.envariant
    assert_equal_up_to_phase(rep.assisting_unitary, H)


def test_ghz3_two_flips_restored_by_one():
    w = construct_assisting_unitary(ghz(3), np.kron(X, X), Bipartition([2, 1], [0]))
    assert_equal_up_to_phase(w, X)


def test_ghz5_three_flips_restored_by_two():
    part = Bipartition([4, 3, 2], [1, 0])
    u_s = np.kron(np.kron(X, X), X)
    w = construct_assisting_unitary(ghz(5), u_s, part)
    xx = np.kron(X, X)
    # rho_E is supported on |00>, |11>; W matches XX there and is the identity on |01>, |10>
    support = np.eye(4)[:, [0, 3]]
    assert_equal_up_to_phase(w @ support, xx @ support)
    np.testing.assert_allclose(w[:, [1, 2]], np.eye(4)[:, [1, 2]], atol=1e-12)
    assert verify_pair(ghz(5), u_s, w, part) < 1e-10
    assert verify_pair(ghz(5), u_s, xx, part) < 1e-10


def test_bell_hx_matches_brute_force_minimizer():
    u_s = H @ X
    w = construct_assisting_unitary(BELL, u_s, PAIR)
    dist, w_bf = brute_force_restore(BELL.amplitudes, u_s)
    assert dist < 1e-6
    assert_equal_up_to_phase(w, w_bf, atol=1e-6)
    assert verify_pair(BELL, u_s, w, PAIR) < 1e-10


def test_construct_raises_when_not_envariant():
    with pytest.raises(NotEnvariantError) as info:
        construct_assisting_unitary(new_ground_state(2), X, PAIR)
    assert info.value.residual_condition == pytest.approx(np.sqrt(2))


def test_verify_pair_examples():
    assert verify_pair(BELL, X, X, PAIR) < 1e-10
    assert verify_pair(BELL, X, I2, PAIR) == pytest.approx(np.sqrt(2))
    assert verify_pair(new_ground_state(2), X, X, PAIR) == pytest.approx(np.sqrt(2))


def test_dimension_and_unitarity_errors():
    with pytest.raises(ValidationError):
        check_envariance(BELL, np.eye(4), PAIR)
    with pytest.raises(ValidationError):
        check_envariance(BELL, [[1, 1], [0, 1]], PAIR)
    with pytest.raises(ValidationError):
        verify_pair(BELL, X, np.eye(4), PAIR)
    with pytest.raises(ValidationError):
        check_envariance(ghz(3), X, PAIR)


def envariant_instance(rng, n):
    """A random state and a u_S that commutes with its reduced state on S."""
    perm = [int(q) for q in rng.permutation(n)]
    k = int(rng.integers(1, n))
    part = Bipartition(perm[:k], perm[k:])
    psi = StateVector(random_state(rng, n))
    _, vecs = np.linalg.eigh(partial_trace_over_e(psi, part))
    u_s = vecs @ np.diag(np.exp(2j * np.pi * rng.random(part.dim_s))) @ vecs.conj().T
    return psi, u_s, part


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 5))
def test_soundness_and_report_invariants(seed, n):
    rng = np.random.default_rng(seed)
    psi, u_s, part = envariant_instance(rng, n)
    rep = check_envariance(psi, u_s, part)
    assert rep.envariant
    w = rep.assisting_unitary
    assert np.max(np.abs(w.conj().T @ w - np.eye(part.dim_e))) < 1e-10
    assert rep.residual_restore <= rep.tolerance_used
    assert verify_pair(psi, u_s, w, part) <= rep.tolerance_used

    # a generic u_S does not preserve a generic reduced state
    rep2 = check_envariance(psi, random_unitary(rng, part.dim_s), part)
    assert not rep2.envariant
    assert rep2.assisting_unitary is None
    assert rep2.residual_condition > rep2.tolerance_used


def relabel_e(psi, part, perm):
    """Move each E qubit q to perm[q]; returns the relabelled state and partition."""
    n = psi.num_qubits
    mapping = {q: q for q in range(n)}
    mapping.update(perm)
    out = np.zeros_like(psi.amplitudes)
    for idx, amp in enumerate(psi.amplitudes):
        new = 0
        for q in range(n):
            new |= ((idx >> q) & 1) << mapping[q]
        out[new] = amp
    return StateVector(out), Bipartition(part.s_qubits, [mapping[q] for q in part.e_qubits])


@pytest.mark.parametrize("seed", range(10))
def test_basis_independence_under_e_relabelling(seed):
    rng = np.random.default_rng(100 + seed)
    part = Bipartition([3, 1], [0, 2])
    if seed % 2:
        psi, u_s, part = envariant_instance(rng, 4)
    else:
        psi, u_s = StateVector(random_state(rng, 4)), random_unitary(rng, 4)
    targets = list(part.e_qubits)
    shuffled = [int(q) for q in rng.permutation(targets)]
    psi2, part2 = relabel_e(psi, part, dict(zip(targets, shuffled)))
    a, b = check_envariance(psi, u_s, part), check_envariance(psi2, u_s, part2)
    assert a.envariant == b.envariant
    assert abs(a.residual_restore - b.residual_restore) < 1e-8


def test_equal_schmidt_states_envariant_under_all_unitaries():
    rng = np.random.default_rng(7)
    for _ in range(100):
        assert check_envariance(BELL, random_unitary(rng, 2), PAIR).envariant
    # maximally entangled 2+2 qubits, rotated locally on E
    part = Bipartition([3, 2], [1, 0])
    me = state_from_matrix(np.eye(4) / 2 @ random_unitary(rng, 4).T, part)
    for _ in range(20):
        assert check_envariance(me, random_unitary(rng, 4), part).envariant


def test_best_restore_matches_brute_force_for_non_envariant_states():
    rng = np.random.default_rng(21)
    for _ in range(10):
        psi = StateVector(random_state(rng, 2))
        u_s = random_unitary(rng, 2)
        rep = check_envariance(psi, u_s, PAIR)
        dist, _ = brute_force_restore(psi.amplitudes, u_s)
        assert not rep.envariant
        assert rep.residual_restore == pytest.approx(dist, abs=1e-6)
