"""Geometry of rank-one projections represented by unit vectors.

A pure state is stored as its representative unit vector with the phase
gauge fixed: the first coordinate of modulus above the gauge threshold is
real and strictly positive.  All metric quantities reduce to inner
products of representatives; dense Hermitian matrices appear only in the
spectral-norm oracle and in block decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "UNIT_NORM_TOL",
    "GAUGE_TOL",
    "ORTHO_TOL",
    "STATE_EQ_TOL",
    "HERMITIAN_TOL",
    "PROJECTION_TOL",
    "PureState",
    "OrthoSystem",
    "pure_state",
    "basis_state",
    "transition_probability",
    "distance",
    "operator_norm_distance",
    "is_orthogonal",
    "is_cosp",
    "standard_cosp",
    "two_by_two_params",
    "state_from_params",
    "block_split",
    "sample_pure_state",
    "random_pure_state",
    "sample_unitary",
    "random_unitary",
    "state_to_json",
    "state_from_json",
]

UNIT_NORM_TOL = 1e-12
GAUGE_TOL = 1e-12
ORTHO_TOL = 1e-9
STATE_EQ_TOL = 1e-9
HERMITIAN_TOL = 1e-10
PROJECTION_TOL = 1e-9


def _pivot_index(vec: np.ndarray) -> int:
    """Index of the first entry with modulus above the gauge threshold."""
    idx = np.flatnonzero(np.abs(vec) > GAUGE_TOL)
    if idx.size == 0:
        raise ValueError("vector has no entry above the gauge threshold")
    return int(idx[0])


@dataclass(frozen=True, eq=False)
class PureState:
    """A rank-one projection, stored as its gauge-fixed unit representative.

    Construct through :func:`pure_state`, which normalizes and fixes the
    phase; the constructor itself rejects vectors that are not already in
    canonical form.
    """

    vec: np.ndarray

    def __post_init__(self) -> None:
        vec = np.asarray(self.vec, dtype=complex)
        if vec.ndim != 1 or vec.size < 2:
            raise ValueError("state vector must be one-dimensional with dim >= 2")
        if abs(np.linalg.norm(vec) - 1.0) > UNIT_NORM_TOL:
            raise ValueError("state vector is not normalized within 1e-12")
        k = _pivot_index(vec)
        if not (abs(vec[k].imag) <= GAUGE_TOL and vec[k].real > 0.0):
            raise ValueError("phase gauge violated: first significant entry must be real positive")
        vec = vec.copy()
        vec.setflags(write=False)
        object.__setattr__(self, "vec", vec)

    @property
    def dim(self) -> int:
        return self.vec.size

    def projector(self) -> np.ndarray:
        """Dense rank-one projection matrix of this state."""
        return np.outer(self.vec, self.vec.conj())

    def __eq__(self, other: object) -> bool:
        # Equality is ray equality: transition probability 1 within 1e-9.
        if not isinstance(other, PureState):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return transition_probability(self, other) >= 1.0 - STATE_EQ_TOL

    __hash__ = None  # tolerance-based equality is incompatible with hashing

    def __repr__(self) -> str:
        return f"PureState(dim={self.dim})"


def _trusted_state(vec: np.ndarray) -> PureState:
    """Wrap an already canonical vector without re-validating.

    Internal fast path: vec must be a fresh complex unit vector in gauge.
    """
    state = object.__new__(PureState)
    vec.setflags(write=False)
    object.__setattr__(state, "vec", vec)
    return state


def pure_state(entries) -> PureState:
    """Normalize and phase-gauge a nonzero amplitude vector into a state."""
    vec = np.asarray(entries, dtype=complex)
    if vec.ndim != 1 or vec.size < 2:
        raise ValueError("state vector must be one-dimensional with dim >= 2")
    nrm = np.vdot(vec, vec).real ** 0.5
    if nrm <= GAUGE_TOL:
        raise ValueError("cannot build a state from a (near) zero vector")
    vec = vec / nrm
    # a unit vector always has an entry of modulus >= dim**-0.5 > tol
    k = int(np.argmax(np.abs(vec) > GAUGE_TOL))
    vec = vec * (vec[k].conjugate() / abs(vec[k]))
    return _trusted_state(vec)


def basis_state(dim: int, k: int) -> PureState:
    """The state projecting onto the k-th standard basis vector."""
    if not 0 <= k < dim:
        raise ValueError(f"basis index {k} out of range for dim {dim}")
    vec = np.zeros(dim, dtype=complex)
    vec[k] = 1.0
    return PureState(vec)


def _require_same_dim(p: PureState, q: PureState) -> None:
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")


def transition_probability(p: PureState, q: PureState) -> float:
    """Squared overlap of the two rays, clamped to [0, 1]."""
    _require_same_dim(p, q)
    t = abs(np.vdot(p.vec, q.vec)) ** 2
    return min(max(t, 0.0), 1.0)


def distance(p: PureState, q: PureState) -> float:
    """Operator-norm distance of the two projections.

    Computed as the norm of the component of one representative
    orthogonal to the other, which equals sqrt(1 - transition
    probability) but stays accurate for nearly equal states.
    """
    _require_same_dim(p, q)
    overlap = np.vdot(q.vec, p.vec)
    residual = p.vec - overlap * q.vec
    return min(np.vdot(residual, residual).real ** 0.5, 1.0)


def _require_hermitian(mat: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    if np.max(np.abs(mat - mat.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    return mat


def operator_norm_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Spectral norm of the difference of two Hermitian matrices."""
    a = _require_hermitian(a)
    b = _require_hermitian(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b, 2))


def is_orthogonal(p: PureState, q: PureState, tol: float = ORTHO_TOL) -> bool:
    """True when the transition probability is below tol."""
    return transition_probability(p, q) <= tol


@dataclass(frozen=True)
class OrthoSystem:
    """A pairwise-orthogonal system of equal-dimension states."""

    members: tuple[PureState, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        if not members:
            raise ValueError("orthogonal system must be nonempty")
        dim = members[0].dim
        for m in members:
            if m.dim != dim:
                raise ValueError("orthogonal system members must share one dimension")
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                if not is_orthogonal(members[i], members[j]):
                    raise ValueError(
                        f"members {i} and {j} are not orthogonal within {ORTHO_TOL}"
                    )
        object.__setattr__(self, "members", members)

    @property
    def dim(self) -> int:
        return self.members[0].dim

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def is_cosp(system: OrthoSystem, dim: int) -> bool:
    """True when the orthogonal system is complete for the given dimension."""
    return len(system) == dim


def standard_cosp(dim: int) -> OrthoSystem:
    """The complete system of standard basis states."""
    return OrthoSystem(tuple(basis_state(dim, k) for k in range(dim)))


def two_by_two_params(state: PureState) -> tuple[float, complex]:
    """Weight/phase parameters (p, z) of a two-dimensional state.

    The projection matrix is [[p, z*s], [conj(z)*s, 1-p]] with
    s = sqrt(p*(1-p)).  When the off-diagonal entry vanishes, z is
    reported as 1 by convention.
    """
    if state.dim != 2:
        raise ValueError("two_by_two_params requires a dimension-2 state")
    v0, v1 = state.vec
    p = min(max(abs(v0) ** 2, 0.0), 1.0)
    off = v0 * v1.conjugate()
    if abs(off) <= GAUGE_TOL:
        return (float(round(p)), 1.0 + 0.0j)
    return (p, off / abs(off))


def state_from_params(p: float, z: complex) -> PureState:
    """Two-dimensional state with given weight p and unit phase z."""
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise ValueError("weight parameter must lie in [0, 1]")
    if abs(abs(z) - 1.0) > 1e-12:
        raise ValueError("phase parameter must have modulus 1 within 1e-12")
    p = min(max(p, 0.0), 1.0)
    vec = np.array([np.sqrt(p), np.conj(z) * np.sqrt(1.0 - p)], dtype=complex)
    return pure_state(vec)


def block_split(
    mat: np.ndarray, r: int
) -> tuple[float, np.ndarray | None, np.ndarray | None, np.ndarray]:
    """Split a rank-one projection into corner blocks of sizes (r, n-r).

    Returns (weight, upper_state_matrix, lower_state_matrix, coupling)
    where weight is the trace of the upper-left corner, the corner blocks
    are renormalized to unit trace (None when their weight vanishes), and
    coupling is the off-diagonal r x (n-r) block.
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    n = mat.shape[0]
    if not 1 <= r < n:
        raise ValueError(f"split index {r} out of range for size {n}")
    if np.max(np.abs(mat - mat.conj().T)) > PROJECTION_TOL:
        raise ValueError("input is not Hermitian within 1e-9")
    if np.max(np.abs(mat @ mat - mat)) > PROJECTION_TOL:
        raise ValueError("input is not idempotent within 1e-9")
    if abs(np.trace(mat).real - 1.0) > PROJECTION_TOL:
        raise ValueError("input does not have unit trace within 1e-9")
    weight = min(max(float(np.trace(mat[:r, :r]).real), 0.0), 1.0)
    upper = mat[:r, :r] / weight if weight > GAUGE_TOL else None
    lower = mat[r:, r:] / (1.0 - weight) if 1.0 - weight > GAUGE_TOL else None
    return (weight, upper, lower, mat[:r, r:].copy())


def sample_pure_state(rng: np.random.Generator, dim: int) -> PureState:
    """Draw one state from the rotation-invariant distribution."""
    z = rng.standard_normal((2, dim))
    return pure_state(z[0] + 1j * z[1])


def random_pure_state(dim: int, seed: int) -> PureState:
    """Seeded draw from the rotation-invariant distribution on states."""
    if dim < 2:
        raise ValueError("dimension must be at least 2")
    return sample_pure_state(np.random.default_rng(seed), dim)


def sample_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Draw a Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = rng.standard_normal((2, dim, dim))
    q, r = np.linalg.qr(z[0] + 1j * z[1])
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Seeded Haar-distributed unitary matrix."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    return sample_unitary(np.random.default_rng(seed), dim)


def state_to_json(state: PureState) -> dict:
    """JSON object for a state: dimension plus [re, im] amplitude pairs."""
    return {
        "dim": state.dim,
        "vec": [[float(c.real), float(c.imag)] for c in state.vec],
    }


def state_from_json(obj: dict) -> PureState:
    """Rebuild a state from its JSON object, re-fixing the gauge."""
    if not isinstance(obj, dict) or "dim" not in obj or "vec" not in obj:
        raise ValueError("state JSON must carry 'dim' and 'vec'")
    dim = int(obj["dim"])
    pairs = obj["vec"]
    if len(pairs) != dim:
        raise ValueError(f"state JSON length {len(pairs)} does not match dim {dim}")
    vec = np.array([complex(re, im) for re, im in pairs])
    return pure_state(vec)
