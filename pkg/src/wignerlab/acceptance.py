"""Acceptance criteria for the package, runnable as a self-test.

Each criterion is a function returning a :class:`CriterionResult`; the
test suite asserts them one by one and the CLI selftest prints them as a
table.  Seeds and tolerances are fixed so results are reproducible.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass

import numpy as np

from .circle import (
    CONJUGATION,
    CONSTANT_ONE,
    IDENTITY,
    classify_homomorphism,
    conjugate_rotation,
    constant,
    fold,
    power,
    rotation,
    unit_grid,
)
from .classify import (
    ENTRYWISE_ABS,
    STANDARD_DIM2,
    WIGNER_ANTIUNITARY,
    WIGNER_UNITARY,
    classify,
    classify_dim2,
    probe_grid,
)
from .maps import (
    block_embed,
    composed_phi_form,
    entrywise_abs,
    proper_subspace_map,
    separable_embed,
    standard_map,
    wigner_map,
)
from .states import (
    OrthoSystem,
    basis_state,
    is_cosp,
    operator_norm_distance,
    pure_state,
    random_unitary,
    sample_pure_state,
    transition_probability,
)
from .verify import (
    check_inclusion_lemma,
    check_isometry,
    check_noncontractive,
    check_nonexpansive,
)


@dataclass(frozen=True)
class CriterionResult:
    num: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_json(self) -> dict:
        return {
            "num": self.num,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


def _result(num, name, t0, passed, detail, budget) -> CriterionResult:
    elapsed = time.time() - t0
    if elapsed >= budget:
        passed = False
        detail += f"; runtime {elapsed:.1f}s exceeded budget {budget}s"
    return CriterionResult(num, name, bool(passed), detail, elapsed)


def criterion_01() -> CriterionResult:
    """Metric identity between the overlap formula and the spectral norm."""
    t0 = time.time()
    worst = 0.0
    for dim in (2, 3, 4, 8):
        rng = np.random.default_rng(np.random.SeedSequence((101, dim)))
        for _ in range(1000):
            p = sample_pure_state(rng, dim)
            q = sample_pure_state(rng, dim)
            via_trace = math.sqrt(1.0 - transition_probability(p, q))
            via_norm = operator_norm_distance(p.projector(), q.projector())
            worst = max(worst, abs(via_trace - via_norm))
    return _result(
        1, "metric identity", t0, worst <= 1e-10, f"worst |diff| {worst:.2e}", 5.0
    )


def criterion_02() -> CriterionResult:
    """Entrywise-absolute-value map is nonexpansive in dims 2..6."""
    t0 = time.time()
    worst = -math.inf
    witnesses = 0
    for dim in range(2, 7):
        rep = check_nonexpansive(entrywise_abs(dim), dim, 10000, 200, seed=42)
        worst = max(worst, rep.worst_gap)
        witnesses += 0 if rep.holds else 1
    passed = witnesses == 0 and worst <= 1e-12
    return _result(
        2,
        "abs map nonexpansive",
        t0,
        passed,
        f"witnesses {witnesses}, worst gap {worst:.2e}",
        10.0,
    )


def criterion_03() -> CriterionResult:
    """Entrywise-absolute-value map contracts strictly somewhere in dim 2."""
    t0 = time.time()
    rep = check_isometry(entrywise_abs(2), 2, 10000, seed=42)
    gap = rep.witness.gap if rep.witness is not None else 0.0
    return _result(
        3, "abs map not an isometry", t0, gap >= 0.5, f"witness |gap| {gap:.3f}", 5.0
    )


def criterion_04() -> CriterionResult:
    """Phase-map lifts inherit circle behaviour: two pass, squaring fails."""
    t0 = time.time()
    ok_fold = check_nonexpansive(standard_map(fold()), 2, 10000, 200, seed=42).holds
    ok_const = check_nonexpansive(
        standard_map(constant(1.0)), 2, 10000, 200, seed=42
    ).holds
    rep = check_nonexpansive(standard_map(power(2)), 2, 1000, 200, seed=42)
    gap = rep.witness.gap if rep.witness is not None else 0.0
    passed = ok_fold and ok_const and gap >= 0.25
    detail = f"fold holds {ok_fold}, constant holds {ok_const}, squaring gap {gap:.3f}"
    return _result(4, "phase-lift equivalence", t0, passed, detail, 10.0)


def _classifier_cases():
    for i in range(50):
        dim = (3, 4, 5)[i % 3]
        u = random_unitary(dim, 1000 + i)
        yield WIGNER_UNITARY, dim, wigner_map(u), None
        u = random_unitary(dim, 2000 + i)
        yield WIGNER_ANTIUNITARY, dim, wigner_map(u, antiunitary=True), None
        pre = random_unitary(dim, 3000 + i)
        post = random_unitary(dim, 4000 + i)
        hint = OrthoSystem(
            tuple(pure_state(pre.conj().T[:, j]) for j in range(dim))
        )
        yield ENTRYWISE_ABS, dim, composed_phi_form(pre, post), hint


def criterion_05() -> CriterionResult:
    """Classifier recovers branch, model, and diagonal gauge on 150 models."""
    t0 = time.time()
    correct = 0
    total = 0
    worst_residual = 0.0
    for expected, dim, model, hint in _classifier_cases():
        total += 1
        res = classify(model, dim, preimage_hint=hint)
        if (
            res.branch == expected
            and res.residual <= 1e-8
            and res.diag_u is not None
            and res.diag_u[0, 0] == 1.0
        ):
            correct += 1
            worst_residual = max(worst_residual, res.residual)
    passed = correct == total
    detail = f"{correct}/{total} correct, worst residual {worst_residual:.2e}"
    return _result(5, "classifier round trip", t0, passed, detail, 60.0)


def criterion_06() -> CriterionResult:
    """Dimension-2 classification recovers the phase map and its class."""
    t0 = time.time()
    cases = [
        (rotation(cmath.exp(1j * math.pi / 3)), "rotation"),
        (conjugate_rotation(1.0), "conj_rotation"),
        (constant(1.0), "half_circle"),
        (fold(), "half_circle"),
    ]
    failures = []
    for g, expected_kind in cases:
        res = classify_dim2(standard_map(g))
        if res.branch != STANDARD_DIM2:
            failures.append(f"{g.kind}: {res.reason}")
            continue
        err = max(abs(res.g(z) - g(z)) for z in probe_grid())
        if err > 1e-8:
            failures.append(f"{g.kind}: recovery error {err:.2e}")
        elif res.g_form.kind != expected_kind:
            failures.append(f"{g.kind}: tagged {res.g_form.kind}")
        elif expected_kind in ("rotation", "conj_rotation") and abs(
            res.g_form.c - g.param
        ) > 1e-8:
            failures.append(f"{g.kind}: coefficient off")
    detail = "all four phase maps recovered" if not failures else "; ".join(failures)
    return _result(6, "dim-2 recovery", t0, not failures, detail, 5.0)


def _disjoint_support_pair(rng, dim):
    # orthogonal pair with disjoint coordinate support: entrywise moduli
    # stay supported apart, so the image family is orthogonal as required
    v = np.zeros(dim, dtype=complex)
    w = np.zeros(dim, dtype=complex)
    v[: dim // 2] = sample_pure_state(rng, dim // 2).vec
    w[dim // 2 :] = sample_pure_state(rng, dim - dim // 2).vec
    return pure_state(v), pure_state(w)


def criterion_07() -> CriterionResult:
    """Dominated states stay dominated by the orthogonal image family."""
    t0 = time.time()
    rng = np.random.default_rng(701)
    dim = 4
    cases = []
    q1, q2 = _disjoint_support_pair(rng, dim)
    cases.append(("abs", entrywise_abs(dim), OrthoSystem((q1, q2))))
    pre = random_unitary(dim, 702)
    post = random_unitary(dim, 703)
    r1, r2 = _disjoint_support_pair(rng, dim)
    cases.append(
        (
            "composed",
            composed_phi_form(pre, post),
            OrthoSystem(
                (pure_state(pre.conj().T @ r1.vec), pure_state(pre.conj().T @ r2.vec))
            ),
        )
    )
    a = sample_pure_state(rng, dim)
    raw = sample_pure_state(rng, dim).vec
    raw = raw - np.vdot(a.vec, raw) * a.vec
    cases.append(("wigner", wigner_map(random_unitary(dim, 704)), OrthoSystem((a, pure_state(raw)))))
    worst = -math.inf
    for _, map_, preimages in cases:
        rep = check_inclusion_lemma(map_, preimages, 1000, seed=42)
        worst = max(worst, rep.worst_gap)
    passed = worst <= 1e-9
    return _result(7, "inclusion of dominated states", t0, passed, f"worst gap {worst:.2e}", 10.0)


def criterion_08() -> CriterionResult:
    """Block embedding is noncontractive yet tears a boundary pair apart."""
    t0 = time.time()
    map_ = block_embed(3)
    non_contr = check_noncontractive(map_, 3, 10000, 200, seed=42)
    iso = check_isometry(map_, 3, 10000, seed=42)
    w = iso.witness
    passed = (
        non_contr.holds
        and w is not None
        and w.d_in < 0.5
        and abs(w.d_out - 1.0) <= 1e-12
    )
    detail = (
        f"noncontractive holds {non_contr.holds}, witness d_in "
        f"{w.d_in if w else float('nan'):.2e}, d_out {w.d_out if w else float('nan')}"
    )
    return _result(8, "block embedding", t0, passed, detail, 10.0)


def criterion_09() -> CriterionResult:
    """Overlap-profile embedding: nonexpansive, injective, never isometric."""
    t0 = time.time()
    rng = np.random.default_rng(901)
    dim = 4
    map_ = separable_embed([sample_pure_state(rng, dim) for _ in range(32)])
    rep = check_nonexpansive(map_, dim, 10000, 200, seed=42)
    states = [sample_pure_state(rng, dim) for _ in range(1000)]
    images = np.array([map_(s).vec for s in states])
    gram = np.abs(images.conj() @ images.T) ** 2
    np.fill_diagonal(gram, 0.0)
    injective = float(gram.max()) < 1.0 - 1e-9
    iso = check_isometry(map_, dim, 1000, seed=42)
    strict = iso.witness is not None and iso.witness.d_out < iso.witness.d_in - 1e-9
    passed = rep.holds and injective and strict
    detail = (
        f"nonexpansive holds {rep.holds}, max image overlap {gram.max():.4f}, "
        f"strict witness {strict}"
    )
    return _result(9, "overlap-profile embedding", t0, passed, detail, 30.0)


def criterion_10() -> CriterionResult:
    """Subspace collapse is nonexpansive and completes the designated system."""
    t0 = time.time()
    dim, k = 5, 3
    map_ = proper_subspace_map(dim, k)
    rep = check_nonexpansive(map_, dim, 10000, 200, seed=42)
    preimages = [basis_state(dim, a) for a in range(k)]
    try:
        images = OrthoSystem(tuple(map_(q) for q in preimages))
        complete = is_cosp(images, k) and all(
            np.all(np.abs(m.vec[k:]) <= 1e-12) for m in images
        )
    except ValueError:
        complete = False
    passed = rep.holds and complete
    detail = f"nonexpansive holds {rep.holds}, image complete in span {complete}"
    return _result(10, "subspace collapse", t0, passed, detail, 10.0)


def criterion_11() -> CriterionResult:
    """Branch decision agrees with brute force and classes are exclusive."""
    t0 = time.time()
    grid = unit_grid(256)
    maps = {
        IDENTITY: rotation(1.0),
        CONJUGATION: conjugate_rotation(1.0),
        CONSTANT_ONE: constant(1.0),
    }
    references = {
        IDENTITY: lambda z: z,
        CONJUGATION: lambda z: z.conjugate(),
        CONSTANT_ONE: lambda z: 1.0 + 0j,
    }
    failures = []
    for expected, g in maps.items():
        matches = {
            name
            for name, ref in references.items()
            if all(abs(g(z) - ref(z)) <= 1e-6 for z in grid)
        }
        if matches != {expected}:
            failures.append(f"{expected}: grid matches {sorted(matches)}")
        if classify_homomorphism(g) != expected:
            failures.append(f"{expected}: branch decision disagrees")
    detail = "oracle and decision agree, classes exclusive" if not failures else "; ".join(failures)
    return _result(11, "circle branch oracle", t0, not failures, detail, 2.0)


ALL_CRITERIA = [
    criterion_01,
    criterion_02,
    criterion_03,
    criterion_04,
    criterion_05,
    criterion_06,
    criterion_07,
    criterion_08,
    criterion_09,
    criterion_10,
    criterion_11,
]


def run_all() -> list[CriterionResult]:
    """Run every acceptance criterion in order."""
    return [fn() for fn in ALL_CRITERIA]
