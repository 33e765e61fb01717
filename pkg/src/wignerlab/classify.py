"""Constructive classification of black-box nonexpansive state maps.

A map that fixes every standard basis projection is probed on balanced
two-coordinate superpositions; each coordinate pair yields a sampled
circle map, and the circle maps combine into multiplicative maps whose
branch (identity / conjugation / constant 1) decides whether the black
box is a unitary symmetry, an antiunitary symmetry, or a conjugated
entrywise-absolute-value map.  Maps that merely carry some complete
orthogonal system onto another are first reduced to that canonical
situation by sandwiching with the two associated basis changes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .circle import (
    CONJUGATION,
    CONSTANT_ONE,
    IDENTITY,
    NOT_APPLICABLE,
    CircleMap,
    CircleMapForm,
    classify_circle_map,
    classify_homomorphism,
    conjugate_rotation,
    rotation,
    sampled,
    sampled_to_json,
    unit_grid,
)
from .descriptors import matrix_to_json
from .maps import StateMap, composed_phi_form, standard_map, wigner_map
from .states import (
    OrthoSystem,
    PureState,
    basis_state,
    is_cosp,
    operator_norm_distance,
    pure_state,
    sample_pure_state,
    state_from_params,
    transition_probability,
)

__all__ = [
    "WIGNER_UNITARY",
    "WIGNER_ANTIUNITARY",
    "ENTRYWISE_ABS",
    "STANDARD_DIM2",
    "NOT_CLASSIFIED",
    "ProbeError",
    "ClassificationResult",
    "probe_grid",
    "probe_state",
    "extract_pair_map",
    "induced_homomorphism",
    "classify_canonical",
    "classify_dim2",
    "reduce_to_canonical",
    "classify",
]

WIGNER_UNITARY = "wigner_unitary"
WIGNER_ANTIUNITARY = "wigner_antiunitary"
ENTRYWISE_ABS = "entrywise_abs"
STANDARD_DIM2 = "standard_dim2"
NOT_CLASSIFIED = "not_classified"

CANONICAL_TOL = 1e-8
SUPPORT_TOL = 1e-8
RESIDUAL_TOL = 1e-8
VALIDATION_STATES = 32

_BRANCH_OF_HOM = {
    IDENTITY: WIGNER_UNITARY,
    CONJUGATION: WIGNER_ANTIUNITARY,
    CONSTANT_ONE: ENTRYWISE_ABS,
}


class ProbeError(ValueError):
    """A probe response contradicts the canonical-map hypothesis."""


@dataclass(frozen=True)
class ClassificationResult:
    """Outcome of a classification run.

    In the general mode U and V are the recovered sandwich unitaries,
    diag_u the diagonal recovered from the canonical stage; the
    reconstruction satisfies map(P) ~ V' branch-form(U P U*) V'* where
    the diagonal is already folded into V.  For dimension-2 results g is
    the extracted phase map with its structural form.
    """

    branch: str
    U: np.ndarray | None = None
    V: np.ndarray | None = None
    diag_u: np.ndarray | None = None
    g: CircleMap | None = None
    g_form: CircleMapForm | None = None
    residual: float = math.inf
    reason: str | None = None
    model: StateMap | None = field(default=None, repr=False, compare=False)

    @property
    def classified(self) -> bool:
        return self.branch != NOT_CLASSIFIED

    def to_json(self) -> dict:
        g_class = None
        if self.g_form is not None:
            g_class = {
                "kind": self.g_form.kind,
                "c": None
                if self.g_form.c is None
                else [self.g_form.c.real, self.g_form.c.imag],
                "spread": self.g_form.spread,
            }
        return {
            "branch": self.branch,
            "U": None if self.U is None else matrix_to_json(self.U),
            "V": None if self.V is None else matrix_to_json(self.V),
            "g": None if self.g is None else sampled_to_json(self.g),
            "g_class": g_class,
            "residual": None if math.isinf(self.residual) else self.residual,
            "reason": self.reason,
        }


def probe_grid(grid_size: int = 16) -> list[complex]:
    """Probe phases: equispaced roots of unity plus one off-lattice point.

    The extra point exp(i*pi/5) guards against structure that is only
    visible away from the root-of-unity lattice.
    """
    if grid_size % 4 != 0:
        raise ValueError("probe grid size must be divisible by 4")
    return unit_grid(grid_size) + [cmath.exp(1j * math.pi / 5.0)]


def probe_state(u: complex, i: int, j: int, dim: int) -> PureState:
    """Balanced superposition of coordinates i and j with relative phase u.

    Its projection matrix has (i, i) and (j, j) entries 1/2 and (i, j)
    entry u/2, so probe responses expose one matrix entry of the image.
    """
    if i == j:
        raise ValueError("probe coordinates must be distinct")
    if not (0 <= i < dim and 0 <= j < dim):
        raise ValueError("probe coordinates out of range")
    if abs(abs(u) - 1.0) > 1e-12:
        raise ValueError("probe phase must have modulus 1")
    vec = np.zeros(dim, dtype=complex)
    vec[i] = 1.0
    vec[j] = complex(u).conjugate()
    return pure_state(vec)


def _require_fixes_basis(map_: StateMap, dim: int) -> None:
    for k in range(dim):
        e_k = basis_state(dim, k)
        if transition_probability(map_(e_k), e_k) < 1.0 - CANONICAL_TOL:
            raise ProbeError(f"map does not fix basis projection {k} within 1e-8")


def extract_pair_map(map_, i: int, j: int, grid) -> CircleMap:
    """Sample the phase action of a canonical map on one coordinate pair.

    For each probe phase u the image of the (i, j) probe must again be a
    balanced state on coordinates {i, j}; its scaled (i, j) matrix entry
    is recorded as the value at u.  Raises ProbeError when a response
    leaves the pair block, which refutes the canonical hypothesis.
    """
    dim = map_.dim_in
    _require_fixes_basis(map_, dim)
    pairs = []
    for u in grid:
        out = map_(probe_state(u, i, j, dim)).vec
        m_ii = abs(out[i]) ** 2
        m_jj = abs(out[j]) ** 2
        if abs(m_ii - 0.5) > SUPPORT_TOL or abs(m_jj - 0.5) > SUPPORT_TOL:
            raise ProbeError(
                f"probe image of pair ({i}, {j}) is not balanced on the pair"
            )
        value = 2.0 * out[i] * out[j].conjugate()
        if abs(abs(value) - 1.0) > SUPPORT_TOL:
            raise ProbeError(
                f"probe image of pair ({i}, {j}) has off-block weight"
            )
        pairs.append((u, value / abs(value)))
    return sampled(pairs)


def _same_grids(maps: tuple[CircleMap, ...]) -> None:
    first = sorted(t for t, _ in maps[0].table)
    for m in maps[1:]:
        angles = sorted(t for t, _ in m.table)
        if len(angles) != len(first) or any(
            abs(a - b) > 1e-9 for a, b in zip(angles, first)
        ):
            raise ValueError("pair maps were sampled on different grids")


def induced_homomorphism(
    f_1j: CircleMap, f_1k: CircleMap, f_jk: CircleMap
) -> CircleMap:
    """Multiplicative combination conj(f_1k(1)) * f_1j(1) * f_jk(z).

    For a canonical map the three pair maps cohere, so this combination
    is a multiplicative self-map of the circle whose branch identifies
    the global structure.  Sampled on the common probe grid.
    """
    _same_grids((f_1j, f_1k, f_jk))
    scale = f_1k(1.0 + 0j).conjugate() * f_1j(1.0 + 0j)
    pairs = []
    for theta, w in f_jk.table:
        value = scale * w
        pairs.append((cmath.exp(1j * theta), value / abs(value)))
    return sampled(pairs)


def _validation_states(dim: int, count: int = VALIDATION_STATES) -> list[PureState]:
    rng = np.random.default_rng(np.random.SeedSequence((dim, 104729)))
    return [sample_pure_state(rng, dim) for _ in range(count)]


def _model_residual(map_: StateMap, model: StateMap, states) -> float:
    worst = 0.0
    for s in states:
        worst = max(
            worst,
            operator_norm_distance(model(s).projector(), map_(s).projector()),
        )
    return worst


def _not_classified(reason: str) -> ClassificationResult:
    return ClassificationResult(branch=NOT_CLASSIFIED, reason=reason)


def classify_canonical(
    map_: StateMap,
    dim: int | None = None,
    grid_size: int = 16,
    tol: float = RESIDUAL_TOL,
) -> ClassificationResult:
    """Classify a map that fixes every standard basis projection, dim >= 3.

    Extracts all pair maps, forms the induced multiplicative maps for
    every coordinate triple through 0, and requires them to agree on one
    branch.  The diagonal unitary is read off the pair-map values at 1
    and gauge-normalized to a leading entry of exactly 1; the
    reconstructed model must reproduce the black box on a validation set
    within tol, otherwise the result is NOT_CLASSIFIED.
    """
    dim = map_.dim_in if dim is None else dim
    if dim != map_.dim_in or map_.dim_in != map_.dim_out:
        raise ValueError("canonical classification requires an endomap of dim")
    if dim < 3:
        raise ValueError("canonical classification requires dimension >= 3")
    grid = probe_grid(grid_size)
    try:
        f = {
            (i, j): extract_pair_map(map_, i, j, grid)
            for i in range(dim)
            for j in range(i + 1, dim)
        }
    except ProbeError as err:
        return _not_classified(str(err))

    branches = set()
    for j in range(1, dim):
        for k in range(j + 1, dim):
            hom = induced_homomorphism(f[(0, j)], f[(0, k)], f[(j, k)])
            branches.add(classify_homomorphism(hom))
    if NOT_APPLICABLE in branches:
        return _not_classified("an induced circle map is not multiplicative")
    if len(branches) != 1:
        return _not_classified("induced circle maps disagree across coordinate triples")
    branch = _BRANCH_OF_HOM[branches.pop()]

    diag = np.ones(dim, dtype=complex)
    for j in range(1, dim):
        diag[j] = f[(0, j)](1.0 + 0j).conjugate()
    u = np.diag(diag)
    if branch == WIGNER_UNITARY:
        model = wigner_map(u)
    elif branch == WIGNER_ANTIUNITARY:
        model = wigner_map(u, antiunitary=True)
    else:
        model = composed_phi_form(np.eye(dim, dtype=complex), u)
    residual = _model_residual(map_, model, _validation_states(dim))
    if residual > tol:
        return _not_classified(
            f"reconstruction residual {residual:.3e} exceeds {tol:.1e}"
        )
    return ClassificationResult(
        branch=branch, U=u, diag_u=u, residual=residual, model=model
    )


def _total_lift(g: CircleMap, form: CircleMapForm) -> CircleMap:
    """Total evaluator for a classified phase map.

    Rotation forms extend from the probe grid to the whole circle by
    their closed form; half-circle maps stay sampled, so models built
    from them evaluate only on probed phases.
    """
    if form.kind == "rotation":
        return rotation(form.c)
    if form.kind == "conj_rotation":
        return conjugate_rotation(form.c)
    return g


def classify_dim2(
    map_: StateMap, grid_size: int = 16, tol: float = RESIDUAL_TOL
) -> ClassificationResult:
    """Classify a canonical map on dimension 2 as a circle-map lift.

    Extracts the phase action g, validates the lift model on a grid of
    weight/phase parameters, and attaches the structural form of g.
    """
    if map_.dim_in != 2 or map_.dim_out != 2:
        raise ValueError("dimension-2 classification requires an endomap of dim 2")
    grid = probe_grid(grid_size)
    try:
        g = extract_pair_map(map_, 0, 1, grid)
    except ProbeError as err:
        return _not_classified(str(err))
    residual = 0.0
    for p in np.linspace(0.1, 0.9, 9):
        for z in grid:
            expected = state_from_params(p, g(z))
            actual = map_(state_from_params(p, z))
            residual = max(
                residual,
                operator_norm_distance(expected.projector(), actual.projector()),
            )
    if residual > tol:
        return _not_classified(
            f"phase-lift residual {residual:.3e} exceeds {tol:.1e}"
        )
    try:
        form = classify_circle_map(g)
    except ValueError as err:
        return _not_classified(str(err))
    return ClassificationResult(
        branch=STANDARD_DIM2,
        g=g,
        g_form=form,
        residual=residual,
        model=standard_map(_total_lift(g, form)),
    )


def reduce_to_canonical(
    map_: StateMap, preimages: OrthoSystem
) -> tuple[np.ndarray, np.ndarray, StateMap]:
    """Sandwich a map into one fixing every standard basis projection.

    preimages must be a complete orthogonal system whose image under the
    map is again complete orthogonal (validated; ValueError otherwise).
    Returns (U, V, canonical) with U built from the preimage
    representatives and V from the image representatives so that
    canonical(P) = V* map(U* P U) V fixes each basis projection and
    map(P) = V canonical(U P U*) V*.
    """
    dim = map_.dim_in
    if map_.dim_out != dim:
        raise ValueError("reduction requires an endomap")
    if preimages.dim != dim or not is_cosp(preimages, dim):
        raise ValueError("preimage system is not complete for the map dimension")
    try:
        images = OrthoSystem(tuple(map_(q) for q in preimages))
    except ValueError as err:
        raise ValueError(f"image of the preimage system is not a COSP: {err}") from err
    b = np.column_stack([q.vec for q in preimages])
    c = np.column_stack([p.vec for p in images])
    c_h = c.conj().T

    def fn(s: PureState) -> PureState:
        return pure_state(c_h @ map_(pure_state(b @ s.vec)).vec)

    canonical = StateMap("canonical", dim, dim, fn, {"pre": b, "post": c})
    return b.conj().T, c, canonical


def _compose_model(
    branch: str,
    b: np.ndarray,
    c: np.ndarray,
    diag: np.ndarray | None,
    g: CircleMap | None,
) -> StateMap:
    dim = b.shape[0]
    post = c if diag is None else c @ diag
    if branch == WIGNER_UNITARY:
        return wigner_map(post @ b.conj().T)
    if branch == WIGNER_ANTIUNITARY:
        return wigner_map(post @ b.T, antiunitary=True)
    if branch == ENTRYWISE_ABS:
        return composed_phi_form(b.conj().T, post)
    lift = standard_map(g)

    def fn(s: PureState) -> PureState:
        inner = lift(pure_state(b.conj().T @ s.vec))
        return pure_state(post @ inner.vec)

    return StateMap("reduced_tau", dim, dim, fn, {"pre": b.conj().T, "post": post, "g": g})


def classify(
    map_: StateMap,
    dim: int,
    preimage_hint: OrthoSystem | None = None,
    grid_size: int = 16,
    tol: float = RESIDUAL_TOL,
) -> ClassificationResult:
    """Full classification pipeline for a black-box nonexpansive endomap.

    Locates a complete orthogonal system with complete orthogonal image
    (or uses the supplied hint), reduces to the canonical situation,
    classifies there, and composes the recovered pieces into a model of
    the original map whose residual is validated on fresh states.
    """
    if dim != map_.dim_in or map_.dim_in != map_.dim_out:
        raise ValueError("classification requires an endomap of the given dimension")
    if dim < 2:
        raise ValueError("classification requires dimension >= 2")
    preimages = preimage_hint
    if preimages is None:
        from .verify import find_cosp_in_image

        preimages = find_cosp_in_image(map_, dim)
    if preimages is None:
        return _not_classified("COSP-image hypothesis unverified")
    b_dag, c, canonical = reduce_to_canonical(map_, preimages)
    b = b_dag.conj().T

    if dim == 2:
        inner = classify_dim2(canonical, grid_size, tol)
        if not inner.classified:
            return inner
        model = _compose_model(
            STANDARD_DIM2, b, c, None, _total_lift(inner.g, inner.g_form)
        )
        residual = 0.0
        for p in np.linspace(0.1, 0.9, 9):
            for z in probe_grid(grid_size):
                s = pure_state(b @ state_from_params(p, z).vec)
                expected = pure_state(c @ state_from_params(p, inner.g(z)).vec)
                residual = max(
                    residual,
                    operator_norm_distance(expected.projector(), map_(s).projector()),
                )
        if residual > tol:
            return _not_classified(
                f"reconstruction residual {residual:.3e} exceeds {tol:.1e}"
            )
        return ClassificationResult(
            branch=STANDARD_DIM2,
            U=b_dag,
            V=c,
            g=inner.g,
            g_form=inner.g_form,
            residual=residual,
            model=model,
        )

    inner = classify_canonical(canonical, dim, grid_size, tol)
    if not inner.classified:
        return inner
    try:
        model = _compose_model(inner.branch, b, c, inner.diag_u, None)
    except ValueError as err:
        return _not_classified(f"recovered unitaries fail validation: {err}")
    residual = _model_residual(map_, model, _validation_states(dim))
    if residual > tol:
        return _not_classified(
            f"reconstruction residual {residual:.3e} exceeds {tol:.1e}"
        )
    return ClassificationResult(
        branch=inner.branch,
        U=b_dag,
        V=c @ inner.diag_u,
        diag_u=inner.diag_u,
        residual=residual,
        model=model,
    )
