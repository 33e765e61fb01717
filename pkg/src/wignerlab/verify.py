"""Seeded witness search for metric properties of state maps.

Each check samples input pairs, measures the relevant gap, sharpens the
worst pair by local refinement, and reports a witness when the final gap
exceeds 1e-9.  Sampling is split into fixed-size chunks with RNG
substreams derived from (seed, chunk index), so reports are identical
for any worker count; WIGNERLAB_THREADS caps the thread pool.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .maps import StateMap
from .states import (
    GAUGE_TOL,
    OrthoSystem,
    PureState,
    _trusted_state,
    distance,
    is_cosp,
    pure_state,
    sample_unitary,
    state_to_json,
    transition_probability,
)

__all__ = [
    "WITNESS_TOL",
    "ViolationWitness",
    "CheckReport",
    "check_nonexpansive",
    "check_noncontractive",
    "check_isometry",
    "check_orthogonality_preserving",
    "check_inclusion_lemma",
    "find_cosp_in_image",
]

WITNESS_TOL = 1e-9
CHUNK_SIZE = 512
REFINE_START_STEP = 0.1
REFINE_SHRINK = 0.5


@dataclass(frozen=True)
class ViolationWitness:
    """Input pair violating a metric property, with both distances."""

    P: PureState
    Q: PureState
    d_in: float
    d_out: float
    gap: float

    def to_json(self) -> dict:
        return {
            "P": state_to_json(self.P),
            "Q": state_to_json(self.Q),
            "d_in": self.d_in,
            "d_out": self.d_out,
            "gap": self.gap,
        }


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a seeded property check."""

    prop: str
    samples: int
    worst_gap: float
    witness: ViolationWitness | None
    seed: int

    @property
    def holds(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        return {
            "property": self.prop,
            "samples": self.samples,
            "worst_gap": self.worst_gap,
            "witness": None if self.witness is None else self.witness.to_json(),
            "seed": self.seed,
        }


def _thread_count() -> int:
    env = os.environ.get("WIGNERLAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, index)))


def _run_chunks(worker, n_samples: int, seed: int):
    """Evaluate chunks in index order, possibly across threads.

    worker(rng, count) -> (best_gap, payload).  The combined result is
    the strictly largest gap with earlier chunks winning ties, which
    makes the outcome independent of the worker count.
    """
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    if n_samples < 1:
        raise ValueError("sample budget must be at least 1")
    sizes = []
    remaining = n_samples
    while remaining > 0:
        sizes.append(min(CHUNK_SIZE, remaining))
        remaining -= CHUNK_SIZE
    args = [(_chunk_rng(seed, i), count) for i, count in enumerate(sizes)]
    threads = _thread_count()
    if threads > 1 and len(args) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda a: worker(*a), args))
    else:
        results = [worker(*a) for a in args]
    best_gap, best_payload = -np.inf, None
    for gap, payload in results:
        if payload is not None and gap > best_gap:
            best_gap, best_payload = gap, payload
    return best_gap, best_payload


def _canonical_rows(raw: np.ndarray) -> np.ndarray:
    """Normalize and phase-gauge each row of a complex matrix."""
    raw = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    piv = (np.abs(raw) > GAUGE_TOL).argmax(axis=1)
    pivots = raw[np.arange(raw.shape[0]), piv]
    return raw * (pivots.conj() / np.abs(pivots))[:, None]


def _sample_rows(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    z = rng.standard_normal((2, count, dim))
    return _canonical_rows(z[0] + 1j * z[1])


def _sample_state(rng: np.random.Generator, dim: int) -> PureState:
    return _trusted_state(_sample_rows(rng, 1, dim)[0])


def _row_distances(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Rowwise state distance between two arrays of unit vectors."""
    overlap = np.einsum("ij,ij->i", w.conj(), v)
    residual = v - overlap[:, None] * w
    norms = np.sqrt(np.einsum("ij,ij->i", residual.conj(), residual).real)
    return np.minimum(norms, 1.0)


def _pair_scan(map_: StateMap, dim: int, n_samples: int, seed: int, oriented):
    """Worst oriented gap over seeded random pairs, chunk by chunk."""

    def worker(rng, count):
        rows = _sample_rows(rng, 2 * count, dim)
        states = [_trusted_state(r) for r in rows]
        images = np.array([map_(s).vec for s in states])
        d_in = _row_distances(rows[:count], rows[count:])
        d_out = _row_distances(images[:count], images[count:])
        gaps = oriented(d_in, d_out)
        i = int(np.argmax(gaps))
        return float(gaps[i]), (states[i], states[count + i])

    return _run_chunks(worker, n_samples, seed)


def _perturbed(state: PureState, coord: int, delta: complex) -> PureState:
    vec = state.vec.copy()
    vec[coord] += delta
    return pure_state(vec)


def _refine_pair(map_: StateMap, oriented, p: PureState, q: PureState, steps: int):
    """Pattern search maximizing the oriented gap from a starting pair.

    Tries single-coordinate complex perturbations of both representative
    vectors; the step starts at 0.1 and halves whenever no candidate
    improves.  Every candidate is renormalized and re-gauged.
    """
    fp, fq = map_(p), map_(q)
    gap = oriented(distance(p, q), distance(fp, fq))
    step = REFINE_START_STEP
    for _ in range(steps):
        best_gap, best_move = gap, None
        for which in (0, 1):
            base, other, f_other = (p, q, fq) if which == 0 else (q, p, fp)
            for coord in range(base.dim):
                for delta in (step, -step, 1j * step, -1j * step):
                    cand = _perturbed(base, coord, delta)
                    f_cand = map_(cand)
                    g = oriented(distance(cand, other), distance(f_cand, f_other))
                    if g > best_gap:
                        best_gap, best_move = g, (which, cand, f_cand)
        if best_move is None:
            step *= REFINE_SHRINK
            continue
        gap = best_gap
        which, cand, f_cand = best_move
        if which == 0:
            p, fp = cand, f_cand
        else:
            q, fq = cand, f_cand
    return gap, p, q


def _metric_check(
    prop: str,
    map_: StateMap,
    dim: int,
    n_samples: int,
    refine_steps: int,
    seed: int,
    oriented,
) -> CheckReport:
    if dim != map_.dim_in:
        raise ValueError(f"map domain dimension {map_.dim_in} does not match {dim}")
    worst, pair = _pair_scan(map_, dim, n_samples, seed, oriented)
    if pair is not None and refine_steps > 0:
        worst, p, q = _refine_pair(map_, oriented, pair[0], pair[1], refine_steps)
        pair = (p, q)
    witness = None
    if pair is not None and worst > WITNESS_TOL:
        p, q = pair
        witness = ViolationWitness(
            p, q, distance(p, q), distance(map_(p), map_(q)), float(worst)
        )
    return CheckReport(prop, n_samples, float(worst), witness, seed)


def check_nonexpansive(
    map_: StateMap,
    dim: int,
    n_samples: int = 10000,
    refine_steps: int = 200,
    seed: int = 42,
) -> CheckReport:
    """Witness search for d(f(P), f(Q)) > d(P, Q)."""
    return _metric_check(
        "nonexpansive", map_, dim, n_samples, refine_steps, seed,
        lambda d_in, d_out: d_out - d_in,
    )


def check_noncontractive(
    map_: StateMap,
    dim: int,
    n_samples: int = 10000,
    refine_steps: int = 200,
    seed: int = 42,
) -> CheckReport:
    """Witness search for d(f(P), f(Q)) < d(P, Q)."""
    return _metric_check(
        "noncontractive", map_, dim, n_samples, refine_steps, seed,
        lambda d_in, d_out: d_in - d_out,
    )


def check_isometry(
    map_: StateMap,
    dim: int,
    n_samples: int = 10000,
    seed: int = 42,
    refine_steps: int = 200,
) -> CheckReport:
    """Witness search for |d(f(P), f(Q)) - d(P, Q)| > 0."""
    return _metric_check(
        "isometry", map_, dim, n_samples, refine_steps, seed,
        lambda d_in, d_out: abs(d_out - d_in),
    )


def check_orthogonality_preserving(
    map_: StateMap, dim: int, n_samples: int = 10000, seed: int = 42
) -> CheckReport:
    """Witness search for an orthogonal pair with non-orthogonal images.

    Pairs are drawn by Gram-Schmidt from two independent samples; the
    gap of a pair is the transition probability of the images.
    """
    if dim != map_.dim_in:
        raise ValueError(f"map domain dimension {map_.dim_in} does not match {dim}")

    def worker(rng, count):
        first = _sample_rows(rng, count, dim)
        second = _sample_rows(rng, count, dim)
        overlap = np.einsum("ij,ij->i", first.conj(), second)
        residual = second - overlap[:, None] * first
        norms = np.linalg.norm(residual, axis=1)
        # degenerate draws (second parallel to first) are resampled
        while (bad := np.flatnonzero(norms < 1e-6)).size > 0:
            redraw = _sample_rows(rng, bad.size, dim)
            ov = np.einsum("ij,ij->i", first[bad].conj(), redraw)
            residual[bad] = redraw - ov[:, None] * first[bad]
            norms[bad] = np.linalg.norm(residual[bad], axis=1)
        second = _canonical_rows(residual)
        best, payload = -np.inf, None
        for i in range(count):
            p = _trusted_state(first[i])
            q = _trusted_state(second[i])
            gap = transition_probability(map_(p), map_(q))
            if gap > best:
                best, payload = gap, (p, q)
        return best, payload

    worst, pair = _run_chunks(worker, n_samples, seed)
    witness = None
    if pair is not None and worst > WITNESS_TOL:
        p, q = pair
        witness = ViolationWitness(
            p, q, distance(p, q), distance(map_(p), map_(q)), float(worst)
        )
    return CheckReport(
        "orthogonality-preserving", n_samples, float(worst), witness, seed
    )


def check_inclusion_lemma(
    map_: StateMap,
    preimages: OrthoSystem,
    n_samples: int = 1000,
    seed: int = 42,
) -> CheckReport:
    """Check that states dominated by the preimage sum stay dominated.

    Requires the image family to be an orthogonal system (validated
    first).  Samples states in the span of the preimages and measures
    gap = 1 - sum of transition probabilities to the image members,
    which must stay below 1e-9 for a nonexpansive map.
    """
    if preimages.dim != map_.dim_in:
        raise ValueError("preimage system dimension does not match the map domain")
    images = OrthoSystem(tuple(map_(q) for q in preimages))
    span_basis = np.array([q.vec for q in preimages])
    image_rows = np.array([p.vec for p in images])

    def covered_weight(state: PureState) -> float:
        return float(np.sum(np.abs(image_rows.conj() @ map_(state).vec) ** 2))

    def worker(rng, count):
        z = rng.standard_normal((2, count, len(preimages)))
        rows = _canonical_rows((z[0] + 1j * z[1]) @ span_basis)
        best, payload = -np.inf, None
        for i in range(count):
            state = _trusted_state(rows[i])
            gap = 1.0 - covered_weight(state)
            if gap > best:
                best, payload = gap, state
        return best, payload

    worst, state = _run_chunks(worker, n_samples, seed)
    witness = None
    if state is not None and worst > WITNESS_TOL:
        witness = ViolationWitness(
            state, map_(state), 1.0, covered_weight(state), float(worst)
        )
    return CheckReport("inclusion", n_samples, float(worst), witness, seed)


def find_cosp_in_image(
    map_: StateMap, dim: int, n_rotations: int = 8, seed: int = 0
) -> OrthoSystem | None:
    """Search for a complete orthogonal system whose image is one too.

    Tries the standard basis states and a configurable number of seeded
    Haar-rotated complete systems; returns the preimage system of the
    first hit, or None.
    """
    if map_.dim_in != dim or map_.dim_out != dim:
        raise ValueError("COSP search requires an endomap of the given dimension")
    candidates = [np.eye(dim, dtype=complex)]
    for trial in range(n_rotations):
        candidates.append(sample_unitary(_chunk_rng(seed, trial + 1), dim))
    for cols in candidates:
        preimages = tuple(pure_state(cols[:, j]) for j in range(dim))
        try:
            images = OrthoSystem(tuple(map_(q) for q in preimages))
        except ValueError:
            continue
        if is_cosp(images, dim):
            return OrthoSystem(preimages)
    return None
