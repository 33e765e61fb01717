"""Witness search: determinism, soundness, and the documented outcomes."""

from __future__ import annotations

import numpy as np
import pytest

from wignerlab import (
    OrthoSystem,
    basis_state,
    block_embed,
    check_inclusion_lemma,
    check_isometry,
    check_noncontractive,
    check_nonexpansive,
    check_orthogonality_preserving,
    check_nonexpansive_circle,
    distance,
    entrywise_abs,
    find_cosp_in_image,
    identity_map,
    opaque_map,
    power,
    pure_state,
    random_unitary,
    sample_pure_state,
    separable_embed,
    standard_cosp,
    standard_map,
    state_from_params,
    transition_probability,
    wigner_map,
)


def test_abs_map_has_no_nonexpansive_witness():
    report = check_nonexpansive(entrywise_abs(4), 4, n_samples=2000, seed=42)
    assert report.holds
    assert report.worst_gap <= 1e-12
    assert report.samples == 2000 and report.seed == 42


def test_wigner_map_passes_every_metric_check():
    u = random_unitary(3, 30)
    phi = wigner_map(u)
    for check in (check_nonexpansive, check_noncontractive, check_isometry):
        report = check(phi, 3, n_samples=1500, seed=42)
        assert report.holds
        assert abs(report.worst_gap) <= 1e-12
    assert check_orthogonality_preserving(phi, 3, n_samples=1500).holds


def test_phase_lift_of_squaring_yields_large_witness():
    report = check_nonexpansive(standard_map(power(2)), 2, n_samples=1000, seed=42)
    assert not report.holds
    assert report.witness.gap >= 0.25


def test_witness_is_sound():
    # every reported number must be recomputable from the witness pair
    phi = standard_map(power(2))
    report = check_nonexpansive(phi, 2, n_samples=500, seed=1)
    w = report.witness
    assert w is not None
    assert distance(w.P, w.Q) == pytest.approx(w.d_in, abs=1e-12)
    assert distance(phi(w.P), phi(w.Q)) == pytest.approx(w.d_out, abs=1e-12)
    assert w.d_out - w.d_in == pytest.approx(w.gap, abs=1e-12)


def test_circle_witness_lifts_to_the_phase_map():
    circle_violation = check_nonexpansive_circle(power(2))
    assert circle_violation is not None
    # the same phases at balanced weight violate the state-map inequality
    p = state_from_params(0.5, circle_violation.z1)
    q = state_from_params(0.5, circle_violation.z2)
    tau = standard_map(power(2))
    assert distance(tau(p), tau(q)) > distance(p, q) + 1e-9


def test_balanced_states_realize_circle_chords():
    # tr(T_u T_w) = (1 + Re(u * conj(w))) / 2
    rng = np.random.default_rng(31)
    for _ in range(20):
        u, w = np.exp(2j * np.pi * rng.random(2))
        tp = transition_probability(state_from_params(0.5, u), state_from_params(0.5, w))
        assert tp == pytest.approx((1.0 + (u * np.conj(w)).real) / 2.0, abs=1e-12)


def test_block_embed_is_noncontractive_but_not_isometric():
    phi = block_embed(2)
    assert check_noncontractive(phi, 2, n_samples=2000, seed=42).holds
    report = check_isometry(phi, 2, n_samples=2000, seed=42)
    assert not report.holds
    assert report.witness.d_out == pytest.approx(1.0)


def test_identity_map_passes_noncontractive():
    assert check_noncontractive(identity_map(2), 2, n_samples=1000).holds


def test_abs_map_contracts_an_orthogonal_pair_to_zero():
    plus = pure_state([1.0, 1.0])
    minus = pure_state([1.0, -1.0])
    assert distance(plus, minus) == pytest.approx(1.0)
    phi = entrywise_abs(2)
    assert phi(plus) == phi(minus)
    report = check_noncontractive(phi, 2, n_samples=2000, seed=42)
    assert not report.holds
    assert report.witness.gap >= 0.9  # refinement drives the pair to collapse


def test_abs_map_is_not_orthogonality_preserving_in_dim2():
    report = check_orthogonality_preserving(entrywise_abs(2), 2, n_samples=2000)
    assert not report.holds
    w = report.witness
    assert transition_probability(w.P, w.Q) <= 1e-9
    assert w.gap == pytest.approx(
        transition_probability(entrywise_abs(2)(w.P), entrywise_abs(2)(w.Q))
    )


def test_noncontractive_map_preserves_orthogonality():
    assert check_orthogonality_preserving(block_embed(2), 2, n_samples=2000).holds


def test_separable_embed_is_strictly_contracting_somewhere():
    rng = np.random.default_rng(32)
    phi = separable_embed([sample_pure_state(rng, 3) for _ in range(6)])
    report = check_isometry(phi, 3, n_samples=1000, seed=42)
    assert not report.holds
    assert report.witness.d_out < report.witness.d_in


def test_inclusion_holds_for_abs_and_wigner_maps():
    pre = OrthoSystem((basis_state(3, 0), basis_state(3, 1)))
    assert check_inclusion_lemma(entrywise_abs(3), pre, n_samples=400).holds
    assert check_inclusion_lemma(wigner_map(random_unitary(3, 33)), pre, 400).holds
    assert check_inclusion_lemma(identity_map(3), standard_cosp(3), 400).holds


def test_inclusion_finds_a_leaky_map():
    # identity on the basis, but superpositions escape the span entirely
    def leak(s):
        if max(abs(s.vec[0]), abs(s.vec[1]), abs(s.vec[2])) > 1.0 - 1e-9:
            return s
        return basis_state(3, 2)

    phi = opaque_map(leak, 3, 3)
    pre = OrthoSystem((basis_state(3, 0), basis_state(3, 1)))
    report = check_inclusion_lemma(phi, pre, n_samples=400)
    assert not report.holds
    assert report.witness.gap == pytest.approx(1.0)


def test_inclusion_requires_an_orthogonal_image_family():
    collapse = opaque_map(lambda s: basis_state(3, 0), 3, 3)
    pre = OrthoSystem((basis_state(3, 0), basis_state(3, 1)))
    with pytest.raises(ValueError):
        check_inclusion_lemma(collapse, pre, n_samples=100)


def test_cosp_search_outcomes():
    found = find_cosp_in_image(entrywise_abs(3), 3)
    assert found is not None and len(found) == 3
    assert find_cosp_in_image(wigner_map(random_unitary(3, 34)), 3) is not None
    collapse = opaque_map(lambda s: basis_state(3, 0), 3, 3)
    assert find_cosp_in_image(collapse, 3) is None


def test_reports_are_seed_deterministic():
    a = check_nonexpansive(entrywise_abs(3), 3, n_samples=1200, seed=7)
    b = check_nonexpansive(entrywise_abs(3), 3, n_samples=1200, seed=7)
    assert a.to_json() == b.to_json()
    c = check_nonexpansive(entrywise_abs(3), 3, n_samples=1200, seed=8)
    assert c.worst_gap != a.worst_gap


def test_reports_do_not_depend_on_thread_count(monkeypatch):
    monkeypatch.setenv("WIGNERLAB_THREADS", "1")
    serial = check_noncontractive(entrywise_abs(2), 2, n_samples=1500, seed=3)
    monkeypatch.setenv("WIGNERLAB_THREADS", "3")
    threaded = check_noncontractive(entrywise_abs(2), 2, n_samples=1500, seed=3)
    assert serial.to_json() == threaded.to_json()


def test_check_validates_arguments():
    with pytest.raises(ValueError):
        check_nonexpansive(entrywise_abs(3), 2, n_samples=100)
    with pytest.raises(ValueError):
        check_nonexpansive(entrywise_abs(3), 3, n_samples=0)
    with pytest.raises(ValueError):
        check_nonexpansive(entrywise_abs(3), 3, n_samples=100, seed=-1)


def test_report_json_shape():
    report = check_isometry(entrywise_abs(2), 2, n_samples=600, seed=42)
    obj = report.to_json()
    assert set(obj) == {"property", "samples", "worst_gap", "witness", "seed"}
    assert obj["property"] == "isometry"
    assert set(obj["witness"]) == {"P", "Q", "d_in", "d_out", "gap"}
