"""Map families: symmetries, amplitude-modulus maps, embeddings, collapses."""

from __future__ import annotations

import math

import numpy as np
import pytest

from wignerlab import (
    basis_state,
    block_embed,
    composed_phi_form,
    constant,
    distance,
    entrywise_abs,
    fold,
    identity_map,
    opaque_map,
    proper_subspace_map,
    pure_state,
    random_unitary,
    rotation,
    sample_pure_state,
    separable_embed,
    standard_map,
    state_from_params,
    transition_probability,
    transpose_map,
    wigner_map,
)


def test_wigner_identity_fixes_states():
    phi = identity_map(3)
    s = sample_pure_state(np.random.default_rng(0), 3)
    assert phi(s) == s


def test_transpose_conjugates_amplitudes():
    s = pure_state([1.0, 1j])
    out = transpose_map(2)(s)
    assert np.allclose(out.vec, pure_state([1.0, -1j]).vec)


def test_wigner_conjugation_matches_matrix_oracle():
    u = np.diag([1.0, 1j])
    t_1 = state_from_params(0.5, 1.0 + 0j)
    image = wigner_map(u)(t_1)
    assert np.allclose(image.projector(), [[0.5, -0.5j], [0.5j, 0.5]])
    # generic case: image projector equals U P U*
    w = random_unitary(3, 3)
    s = sample_pure_state(np.random.default_rng(4), 3)
    assert np.allclose(
        wigner_map(w)(s).projector(), w @ s.projector() @ w.conj().T, atol=1e-12
    )


def test_antiunitary_matches_transpose_oracle():
    u = random_unitary(3, 5)
    s = sample_pure_state(np.random.default_rng(6), 3)
    image = wigner_map(u, antiunitary=True)(s)
    assert np.allclose(
        image.projector(), u @ s.projector().T @ u.conj().T, atol=1e-12
    )


def test_wigner_maps_are_isometries():
    rng = np.random.default_rng(7)
    u = random_unitary(4, 8)
    for anti in (False, True):
        phi = wigner_map(u, antiunitary=anti)
        for _ in range(100):
            p, q = sample_pure_state(rng, 4), sample_pure_state(rng, 4)
            assert abs(distance(phi(p), phi(q)) - distance(p, q)) <= 1e-12


def test_wigner_map_rejects_non_unitary():
    with pytest.raises(ValueError):
        wigner_map(np.ones((2, 2)))


def test_abs_map_examples():
    phi = entrywise_abs(2)
    assert phi(pure_state([1.0, -1.0])) == pure_state([1.0, 1.0])
    nonneg = pure_state([3.0, 4.0])
    assert phi(nonneg) == nonneg
    out = entrywise_abs(3)(pure_state([1.0, 1j, -1.0]))
    assert np.allclose(out.projector(), np.full((3, 3), 1.0 / 3.0))


def test_abs_map_takes_entrywise_moduli_of_the_projection():
    rng = np.random.default_rng(9)
    phi = entrywise_abs(4)
    s = sample_pure_state(rng, 4)
    assert np.allclose(phi(s).projector(), np.abs(s.projector()), atol=1e-12)
    assert phi(phi(s)) == phi(s)  # idempotent


def test_abs_map_in_rotated_basis():
    b = random_unitary(3, 10)
    phi_b = entrywise_abs(3, basis=b)
    s = sample_pure_state(np.random.default_rng(11), 3)
    expected = pure_state(b @ np.abs(b.conj().T @ s.vec))
    assert phi_b(s) == expected
    with pytest.raises(ValueError):
        entrywise_abs(2, basis=b)  # dimension mismatch


def test_phase_lift_fixed_points():
    tau = standard_map(fold())
    assert tau(basis_state(2, 0)) == basis_state(2, 0)
    assert tau(basis_state(2, 1)) == basis_state(2, 1)
    assert standard_map(rotation(1.0))(state_from_params(0.3, 1j)) == state_from_params(
        0.3, 1j
    )


def test_phase_lift_substitutes_the_phase():
    tau = standard_map(constant(1.0))
    assert tau(state_from_params(0.5, 1j)) == state_from_params(0.5, 1.0 + 0j)
    g = rotation(np.exp(0.4j))
    s = state_from_params(0.2, np.exp(1.1j))
    assert standard_map(g)(s) == state_from_params(0.2, g(np.exp(1.1j)))


def test_composed_form_reduces_to_abs_map_at_identity():
    eye = np.eye(3, dtype=complex)
    phi = composed_phi_form(eye, eye)
    s = sample_pure_state(np.random.default_rng(12), 3)
    assert phi(s) == entrywise_abs(3)(s)
    nonneg = pure_state([1.0, 2.0, 3.0])
    assert phi(nonneg) == nonneg


def test_composed_form_is_nonexpansive_on_sampled_pairs():
    rng = np.random.default_rng(13)
    phi = composed_phi_form(random_unitary(3, 14), random_unitary(3, 15))
    for _ in range(100):
        p, q = sample_pure_state(rng, 3), sample_pure_state(rng, 3)
        assert distance(phi(p), phi(q)) <= distance(p, q) + 1e-12


def test_block_embed_with_trivial_predicate_is_isometric():
    phi = block_embed(3, predicate=lambda s: False)
    rng = np.random.default_rng(16)
    for _ in range(20):
        p, q = sample_pure_state(rng, 3), sample_pure_state(rng, 3)
        ip, iq = phi(p), phi(q)
        assert np.allclose(ip.vec[3:], 0.0) and np.allclose(iq.vec[3:], 0.0)
        assert abs(distance(ip, iq) - distance(p, q)) <= 1e-12


def test_block_embed_tears_pairs_across_the_boundary():
    phi = block_embed(2)
    # d(P, Q) = |cos 2a| for the swap pair; pick a so the input distance is 0.3
    a = math.acos(0.3) / 2.0
    p = pure_state([math.cos(a), math.sin(a)])
    q = pure_state([math.sin(a), math.cos(a)])
    assert distance(p, q) == pytest.approx(0.3)
    assert distance(phi(p), phi(q)) == pytest.approx(1.0)
    assert transition_probability(phi(p), phi(q)) == 0.0


def test_separable_embed_single_anchor_examples():
    x = pure_state([1.0, 1j, -1.0])
    phi = separable_embed([x])
    assert np.allclose(phi(x).vec, [1.0, 0.0])  # t = 1 after renormalization
    perp = pure_state([1.0, -1j, 0.0])
    assert transition_probability(x, perp) <= 1e-12
    assert np.allclose(phi(perp).vec, [0.0, 1.0])


def test_separable_embed_never_shrinks_transition_probability():
    rng = np.random.default_rng(17)
    anchors = [sample_pure_state(rng, 3) for _ in range(4)]
    phi = separable_embed(anchors)
    for _ in range(100):
        p, q = sample_pure_state(rng, 3), sample_pure_state(rng, 3)
        assert transition_probability(phi(p), phi(q)) >= (
            transition_probability(p, q) - 1e-12
        )


def test_separable_embed_validates_anchors():
    with pytest.raises(ValueError):
        separable_embed([])
    with pytest.raises(ValueError):
        separable_embed([basis_state(2, 0), basis_state(3, 0)])


def test_subspace_collapse_examples():
    phi = proper_subspace_map(3, 2, alpha0=0)
    inside = pure_state([0.6, 0.8, 0.0])
    assert phi(inside) == inside  # nonnegative, already in the span
    assert phi(basis_state(3, 0)) == basis_state(3, 0)
    assert phi(pure_state([0.0, 0.0, 1.0])) == basis_state(3, 0)
    # inside the span the collapse acts as the amplitude-modulus map
    s = pure_state([1.0, -1j, 0.0])
    assert phi(s) == pure_state([1.0, 1.0, 0.0])


def test_subspace_collapse_absorbs_outside_weight_at_alpha0():
    phi = proper_subspace_map(4, 2, alpha0=1)
    s = pure_state([0.5, 0.5j, 0.5, -0.5])
    out = phi(s)
    assert out.vec[2] == 0.0 and out.vec[3] == 0.0
    assert abs(out.vec[0]) == pytest.approx(0.5)
    # alpha0 soaks up its own weight plus everything outside the span
    assert abs(out.vec[1]) == pytest.approx(math.sqrt(0.25 + 0.5))


def test_subspace_collapse_validates_parameters():
    with pytest.raises(ValueError):
        proper_subspace_map(3, 3)
    with pytest.raises(ValueError):
        proper_subspace_map(3, 0)
    with pytest.raises(ValueError):
        proper_subspace_map(4, 2, alpha0=2)


def test_state_map_validates_input_dimension():
    phi = entrywise_abs(3)
    with pytest.raises(ValueError):
        phi(basis_state(2, 0))
    wrapped = opaque_map(lambda s: s, 2, 2)
    assert wrapped(basis_state(2, 1)) == basis_state(2, 1)
    with pytest.raises(ValueError):
        wrapped(basis_state(4, 0))
