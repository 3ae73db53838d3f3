"""Octonionic Stiefel frames, Clifford systems and the Omega varieties."""

from .clifford import CliffordSystem, Definite, Indefinite, NotApplicable, build_system, delta, verify_clifford
from .errors import (
    OctoStiefelError,
    NotSymmetric,
    LengthMismatch,
    DimensionMismatch,
    UnsupportedM,
    BadFamily,
    NotAFrame,
    NotOrthogonal,
    NotAMember,
    NotInW,
    Unclassified,
    SamplingFailed,
    BadBasePoint,
    BadDimension,
    NotRepresentable,
    IdentityFailed,
    UnknownSuite,
    ParseError,
)
from .exactnum import EXACT, SQRT2, Exact, Float, QSqrt2, det, kernel_basis, rank
from .extgeom import austere_test, mean_curvature_component, normal_frame, shape_operator_spectrum
from .frames import OctFrame, classify, fiber_kernel_dim, frame, is_frame
from .octonion import E, Octonion, oct_conj, oct_inner, oct_mul
from .omega import OmegaPoint, constraints, dimension_and_emptiness, is_member, pi_lift, regularity_gram
from .suites import run_suite

__version__ = "0.1.0"

__all__ = [
    "CliffordSystem",
    "Definite",
    "Indefinite",
    "NotApplicable",
    "build_system",
    "delta",
    "verify_clifford",
    "OctoStiefelError",
    "NotSymmetric",
    "LengthMismatch",
    "DimensionMismatch",
    "UnsupportedM",
    "BadFamily",
    "NotAFrame",
    "NotOrthogonal",
    "NotAMember",
    "NotInW",
    "Unclassified",
    "SamplingFailed",
    "BadBasePoint",
    "BadDimension",
    "NotRepresentable",
    "IdentityFailed",
    "UnknownSuite",
    "ParseError",
    "EXACT",
    "SQRT2",
    "Exact",
    "Float",
    "QSqrt2",
    "det",
    "kernel_basis",
    "rank",
    "austere_test",
    "mean_curvature_component",
    "normal_frame",
    "shape_operator_spectrum",
    "OctFrame",
    "classify",
    "fiber_kernel_dim",
    "frame",
    "is_frame",
    "E",
    "Octonion",
    "oct_conj",
    "oct_inner",
    "oct_mul",
    "OmegaPoint",
    "constraints",
    "dimension_and_emptiness",
    "is_member",
    "pi_lift",
    "regularity_gram",
    "run_suite",
]
