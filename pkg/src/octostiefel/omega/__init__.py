"""The triple spaces Omega_{l,m}, the pair space W_{l,m} and the projection to c."""

from .core import (
    ConstraintVector,
    DegeneracyCertificate,
    DegeneracyResult,
    OmegaPoint,
    OmegaStatus,
    constraints,
    degeneracy,
    dimension_and_emptiness,
    gradient_matrix,
    gradients,
    gram_decomposition_rhs,
    is_member,
    phi_matrix,
    regularity_gram,
    sample,
    standard_witness,
    system_from_json,
    vector,
    w_gram,
    w_member,
)
from .curves import KINDS, deformation_curve, first_block_norm, path_base
from .indefinite import Omega84Data, indefinite_system, omega84_analysis, omega84_sample, quaternion
from .projection import (
    inner_lift,
    octonion_system,
    pi_differential_rank,
    pi_image_contains,
    pi_lift,
    pi_project,
    pi_tangent_image,
)

__all__ = [
    "ConstraintVector",
    "DegeneracyCertificate",
    "DegeneracyResult",
    "OmegaPoint",
    "OmegaStatus",
    "constraints",
    "degeneracy",
    "dimension_and_emptiness",
    "gradient_matrix",
    "gradients",
    "gram_decomposition_rhs",
    "is_member",
    "phi_matrix",
    "regularity_gram",
    "sample",
    "standard_witness",
    "system_from_json",
    "vector",
    "w_gram",
    "w_member",
    "KINDS",
    "deformation_curve",
    "first_block_norm",
    "path_base",
    "Omega84Data",
    "indefinite_system",
    "omega84_analysis",
    "omega84_sample",
    "quaternion",
    "inner_lift",
    "octonion_system",
    "pi_differential_rank",
    "pi_image_contains",
    "pi_lift",
    "pi_project",
    "pi_tangent_image",
]
