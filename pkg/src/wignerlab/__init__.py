"""Metric geometry of pure states: map families, verification, classification.

The package represents rank-one projections by gauge-fixed unit vectors,
builds the studied families of maps between state spaces, searches for
violations of metric properties with seeded reproducible sampling, and
classifies black-box nonexpansive maps into unitary, antiunitary, and
entrywise-absolute-value branches by constructive probing.
"""

from .circle import (
    CONJUGATION,
    CONSTANT_ONE,
    IDENTITY,
    NOT_APPLICABLE,
    CircleMap,
    CircleMapForm,
    CircleViolation,
    HomViolation,
    check_homomorphism,
    check_nonexpansive_circle,
    classify_circle_map,
    classify_homomorphism,
    conjugate_rotation,
    constant,
    fold,
    opaque,
    power,
    rotation,
    sampled,
    sampled_from_json,
    sampled_to_json,
    unit_grid,
)
from .classify import (
    ENTRYWISE_ABS,
    NOT_CLASSIFIED,
    STANDARD_DIM2,
    WIGNER_ANTIUNITARY,
    WIGNER_UNITARY,
    ClassificationResult,
    ProbeError,
    classify,
    classify_canonical,
    classify_dim2,
    extract_pair_map,
    induced_homomorphism,
    probe_grid,
    probe_state,
    reduce_to_canonical,
)
from .descriptors import map_from_json, map_to_json
from .maps import (
    StateMap,
    block_embed,
    composed_phi_form,
    entrywise_abs,
    identity_map,
    opaque_map,
    proper_subspace_map,
    separable_embed,
    standard_map,
    transpose_map,
    wigner_map,
)
from .states import (
    OrthoSystem,
    PureState,
    basis_state,
    block_split,
    distance,
    is_cosp,
    is_orthogonal,
    operator_norm_distance,
    pure_state,
    random_pure_state,
    random_unitary,
    sample_pure_state,
    sample_unitary,
    standard_cosp,
    state_from_json,
    state_from_params,
    state_to_json,
    transition_probability,
    two_by_two_params,
)
from .verify import (
    CheckReport,
    ViolationWitness,
    check_inclusion_lemma,
    check_isometry,
    check_noncontractive,
    check_nonexpansive,
    check_orthogonality_preserving,
    find_cosp_in_image,
)

__version__ = "0.1.0"
