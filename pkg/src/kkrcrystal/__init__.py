"""Rigged configurations, the KKR bijection, combinatorial R matrices,
scattering data and box-ball systems for sl_n symmetric-power crystals."""

from .boxball import BoxBallState, evolve, evolve_many, from_path, is_separated, solitons, trajectory
from .crystals import (
    AffineFactor,
    Tableau,
    TensorWord,
    affine_r,
    apply_r_at,
    energy,
    is_highest,
    r_matrix,
    unwinding_number,
    weight,
)
from .errors import (
    AlgorithmInvariantError,
    AlphabetError,
    CapExceededError,
    NormalOrderError,
    NotSeparatedError,
    ResidueError,
    ValidationError,
)
from .kkr import (
    KkrTrace,
    RowRemoval,
    delta_q,
    kkr_forward,
    kkr_forward_all_rule1_ties,
    kkr_scattering,
    kkr_scattering_all,
    mode_formula,
)
from .rigged import (
    RiggedConfiguration,
    enumerate_rcs,
    enumerate_rcs_bruteforce,
    is_singular,
    is_valid,
    q_value,
    restrict,
    vacancy,
    validate,
    with_quantum_order,
)
from .scattering import (
    ScatteringData,
    build_c,
    compose_theorem,
    is_normal_ordered,
    modes_from_riggings,
    normal_order,
    normal_ordered_set,
    orbit,
    permutation_orbit,
    phi,
    prop43_isomorphism_check,
)

__all__ = [
    "AffineFactor",
    "AlgorithmInvariantError",
    "AlphabetError",
    "BoxBallState",
    "CapExceededError",
    "KkrTrace",
    "NormalOrderError",
    "NotSeparatedError",
    "ResidueError",
    "RiggedConfiguration",
    "RowRemoval",
    "ScatteringData",
    "Tableau",
    "TensorWord",
    "ValidationError",
    "affine_r",
    "apply_r_at",
    "build_c",
    "compose_theorem",
    "delta_q",
    "energy",
    "enumerate_rcs",
    "enumerate_rcs_bruteforce",
    "evolve",
    "evolve_many",
    "from_path",
    "is_highest",
    "is_normal_ordered",
    "is_separated",
    "is_singular",
    "is_valid",
    "kkr_forward",
    "kkr_forward_all_rule1_ties",
    "kkr_scattering",
    "kkr_scattering_all",
    "mode_formula",
    "modes_from_riggings",
    "normal_order",
    "normal_ordered_set",
    "orbit",
    "permutation_orbit",
    "phi",
    "prop43_isomorphism_check",
    "q_value",
    "r_matrix",
    "restrict",
    "solitons",
    "trajectory",
    "unwinding_number",
    "vacancy",
    "validate",
    "weight",
    "with_quantum_order",
]
