"""State representation, gauge fixing, and the projection metric."""

from __future__ import annotations

import math

import numpy as np
import pytest

from wignerlab import (
    OrthoSystem,
    PureState,
    basis_state,
    block_split,
    distance,
    is_cosp,
    is_orthogonal,
    operator_norm_distance,
    pure_state,
    random_unitary,
    sample_pure_state,
    standard_cosp,
    state_from_json,
    state_from_params,
    state_to_json,
    transition_probability,
    two_by_two_params,
)

T_1 = state_from_params(0.5, 1.0 + 0j)


def test_projector_examples():
    assert np.allclose(basis_state(2, 0).projector(), [[1, 0], [0, 0]])
    assert np.allclose(T_1.projector(), [[0.5, 0.5], [0.5, 0.5]])
    p = pure_state([1.0, 1j]).projector()
    assert np.allclose(p, [[0.5, -0.5j], [0.5j, 0.5]])


def test_transition_probability_examples():
    p = pure_state([3.0, 4.0])
    assert transition_probability(p, p) == 1.0
    assert transition_probability(basis_state(2, 0), basis_state(2, 1)) == 0.0
    assert transition_probability(basis_state(2, 0), T_1) == pytest.approx(0.5)


def test_distance_examples():
    p = pure_state([1.0, 2.0, 3.0])
    assert distance(p, p) == 0.0
    assert distance(basis_state(2, 0), basis_state(2, 1)) == pytest.approx(1.0)
    # tr(PQ) = 0.5 pair -> sqrt(0.5)
    assert distance(basis_state(2, 0), T_1) == pytest.approx(math.sqrt(0.5))


def test_metric_identity_against_spectral_oracle():
    # d(P, Q) must equal the largest |eigenvalue| of P - Q
    rng = np.random.default_rng(11)
    for dim in (2, 3, 5):
        for _ in range(50):
            p = sample_pure_state(rng, dim)
            q = sample_pure_state(rng, dim)
            eigs = np.linalg.eigvalsh(p.projector() - q.projector())
            assert distance(p, q) == pytest.approx(
                float(np.max(np.abs(eigs))), abs=1e-10
            )


def test_operator_norm_distance_examples():
    e1, e2 = basis_state(2, 0), basis_state(2, 1)
    assert operator_norm_distance(e1.projector(), e1.projector()) == 0.0
    assert operator_norm_distance(e1.projector(), e2.projector()) == pytest.approx(1.0)
    rng = np.random.default_rng(12)
    p = sample_pure_state(rng, 4)
    q = sample_pure_state(rng, 4)
    assert operator_norm_distance(p.projector(), q.projector()) == pytest.approx(
        distance(p, q), abs=1e-10
    )


def test_operator_norm_distance_rejects_non_hermitian():
    with pytest.raises(ValueError):
        operator_norm_distance(np.array([[0.0, 1.0], [0.0, 0.0]]), np.eye(2))


def test_distance_stays_accurate_for_nearly_equal_states():
    v = pure_state([1.0, 1.0, 1.0])
    w = pure_state(v.vec + np.array([0.0, 1e-8j, -1e-8j]))
    d = distance(v, w)
    eigs = np.linalg.eigvalsh(v.projector() - w.projector())
    assert d == pytest.approx(float(np.max(np.abs(eigs))), abs=1e-12)
    assert 1e-9 < d < 1e-7


def test_gauge_phase_invariance():
    rng = np.random.default_rng(13)
    raw = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    base = pure_state(raw)
    for phase in (1j, -1.0, np.exp(0.7j)):
        regauged = pure_state(phase * raw)
        assert np.allclose(regauged.vec, base.vec, atol=1e-15)
        assert regauged == base
    k = np.flatnonzero(np.abs(base.vec) > 1e-12)[0]
    assert abs(base.vec[k].imag) <= 1e-12 and base.vec[k].real > 0.0


def test_gauge_pivot_skips_leading_zeros():
    s = pure_state([0.0, -2j, 0.0])
    assert np.allclose(s.vec, [0.0, 1.0, 0.0])


def test_pure_state_rejects_degenerate_input():
    with pytest.raises(ValueError):
        pure_state([0.0, 0.0])
    with pytest.raises(ValueError):
        pure_state([1.0])
    with pytest.raises(ValueError):
        pure_state(np.ones((2, 2)))


def test_constructor_enforces_canonical_form():
    with pytest.raises(ValueError):
        PureState(np.array([1.0, 1.0], dtype=complex))  # not normalized
    with pytest.raises(ValueError):
        PureState(np.array([1j, 0.0], dtype=complex))  # gauge violated


def test_state_vector_is_immutable():
    s = pure_state([1.0, 2.0])
    with pytest.raises(ValueError):
        s.vec[0] = 0.0


def test_ray_equality_tolerance():
    s = pure_state([1.0, 1.0])
    t = pure_state([1.0 + 1e-7, 1.0])
    assert s == t
    assert s != basis_state(2, 0)
    assert s != pure_state([1.0, 1.0, 0.0])  # dimension mismatch


def test_orthogonality_examples():
    assert is_orthogonal(basis_state(2, 0), basis_state(2, 1))
    p = pure_state([2.0, 1.0])
    assert not is_orthogonal(p, p)
    assert is_orthogonal(pure_state([1.0, 1.0]), pure_state([1.0, -1.0]))


def test_ortho_system_examples():
    cosp = OrthoSystem((basis_state(2, 0), basis_state(2, 1)))
    assert is_cosp(cosp, 2)
    assert not is_cosp(OrthoSystem((basis_state(2, 0),)), 2)
    mixed = OrthoSystem(
        (
            pure_state([1.0, 1.0, 0.0]),
            pure_state([1.0, -1.0, 0.0]),
            basis_state(3, 2),
        )
    )
    assert is_cosp(mixed, 3)
    assert len(standard_cosp(4)) == 4


def test_ortho_system_rejects_non_orthogonal_members():
    with pytest.raises(ValueError):
        OrthoSystem((basis_state(2, 0), pure_state([1.0, 1.0])))
    with pytest.raises(ValueError):
        OrthoSystem((basis_state(2, 0), basis_state(3, 0)))
    with pytest.raises(ValueError):
        OrthoSystem(())


def test_two_by_two_params_examples():
    assert two_by_two_params(basis_state(2, 0)) == (1.0, 1.0 + 0j)
    assert two_by_two_params(basis_state(2, 1)) == (0.0, 1.0 + 0j)
    p, z = two_by_two_params(state_from_params(0.5, 1j))
    assert p == pytest.approx(0.5) and z == pytest.approx(1j)


def test_two_by_two_params_generic_matrix():
    z = np.exp(1j * np.pi / 4)
    s = state_from_params(0.25, z)
    expected = np.array(
        [
            [0.25, z * math.sqrt(0.1875)],
            [np.conj(z) * math.sqrt(0.1875), 0.75],
        ]
    )
    assert np.allclose(s.projector(), expected, atol=1e-12)
    p_out, z_out = two_by_two_params(s)
    assert p_out == pytest.approx(0.25) and z_out == pytest.approx(z)


def test_state_from_params_examples():
    assert state_from_params(1.0, -1j) == basis_state(2, 0)
    assert np.allclose(T_1.projector(), 0.5 * np.ones((2, 2)))
    t_i = state_from_params(0.5, 1j)
    assert np.allclose(t_i.projector(), [[0.5, 0.5j], [-0.5j, 0.5]])


def test_state_from_params_validates_inputs():
    with pytest.raises(ValueError):
        state_from_params(1.5, 1.0)
    with pytest.raises(ValueError):
        state_from_params(0.5, 2.0)


def test_block_split_examples():
    weight, upper, lower, coupling = block_split(basis_state(2, 0).projector(), 1)
    assert weight == 1.0
    assert np.allclose(upper, [[1.0]])
    assert lower is None
    assert np.allclose(coupling, [[0.0]])

    weight, upper, lower, coupling = block_split(T_1.projector(), 1)
    assert weight == pytest.approx(0.5)
    assert np.allclose(upper, [[1.0]]) and np.allclose(lower, [[1.0]])
    assert np.allclose(coupling, [[0.5]])


def test_block_split_reassembles_random_state():
    s = sample_pure_state(np.random.default_rng(14), 3)
    mat = s.projector()
    weight, upper, lower, coupling = block_split(mat, 2)
    rebuilt = np.zeros((3, 3), dtype=complex)
    rebuilt[:2, :2] = weight * upper
    rebuilt[2:, 2:] = (1.0 - weight) * lower
    rebuilt[:2, 2:] = coupling
    rebuilt[2:, :2] = coupling.conj().T
    assert np.max(np.abs(rebuilt - mat)) <= 1e-10


def test_block_split_rejects_non_projections():
    with pytest.raises(ValueError):
        block_split(np.eye(3) / 3.0, 1)  # idempotence fails
    with pytest.raises(ValueError):
        block_split(np.eye(2), 1)  # trace 2
    with pytest.raises(ValueError):
        block_split(basis_state(2, 0).projector(), 2)  # split out of range


def test_sampling_is_seed_deterministic():
    a = sample_pure_state(np.random.default_rng(99), 5)
    b = sample_pure_state(np.random.default_rng(99), 5)
    assert np.array_equal(a.vec, b.vec)


def test_sampling_law_is_unbiased_on_first_coordinate():
    rng = np.random.default_rng(15)
    mean = np.mean(
        [transition_probability(sample_pure_state(rng, 2), basis_state(2, 0))
         for _ in range(10000)]
    )
    assert abs(mean - 0.5) < 0.02


def test_sampled_states_satisfy_invariants():
    rng = np.random.default_rng(16)
    for dim in (2, 4):
        s = sample_pure_state(rng, dim)
        PureState(s.vec)  # re-validates norm and gauge


def test_random_unitary_is_unitary_and_deterministic():
    u = random_unitary(4, 21)
    assert np.max(np.abs(u.conj().T @ u - np.eye(4))) < 1e-12
    assert np.array_equal(u, random_unitary(4, 21))
    assert not np.allclose(u, random_unitary(4, 22))


def test_state_json_round_trip():
    rng = np.random.default_rng(17)
    for dim in (2, 5):
        s = sample_pure_state(rng, dim)
        obj = state_to_json(s)
        assert obj["dim"] == dim
        assert all(len(pair) == 2 for pair in obj["vec"])
        restored = state_from_json(obj)
        assert np.allclose(restored.vec, s.vec, atol=1e-15)
        assert restored == s


def test_state_from_json_restores_gauge():
    # serialized amplitudes with a global phase are re-canonicalized
    s = pure_state([1.0, 1j])
    rotated = {
        "dim": 2,
        "vec": [[float((1j * c).real), float((1j * c).imag)] for c in s.vec],
    }
    assert state_from_json(rotated) == s
    with pytest.raises(ValueError):
        state_from_json({"dim": 3, "vec": [[1.0, 0.0]]})
