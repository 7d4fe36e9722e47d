"""Exact decision procedures for reversibility, conjugacy, fixed points and
entropy of affine automorphisms of the 2-torus."""

from .affine import (
    AffineElement,
    AffineReport,
    affine_reversibility,
    affine_strong_reversibility,
    compose,
    conjugate_in_G,
    g_conjugacy_test,
    invert,
    similarity_dichotomy,
)
from .dynamics import (
    INFINITE,
    affine_entropy,
    entropy,
    linearizing_translation,
    orbit,
    periodic_point_count,
    render,
    render_orbit,
    render_parallelogram,
)
from .errors import (
    EigenvalueOne,
    InvariantViolation,
    NotHyperbolic,
    NotInvolution,
    NotUnimodular,
    ParseError,
    SingularAminusI,
    ToralRevError,
    ZeroVector,
)
from .exactmath import Mat2, TorusPoint, UniMat, parse_matrix, parse_torus_point, solve_congruence, torus_reduce
from .gl2z import (
    centralizer,
    classify,
    conjugacy_test,
    involution_class,
    reciprocal_fixed_points,
    reversibility,
    strong_reversibility,
)
from .lattice import fixed_points, lattice_report, pick_fixed_point_criterion, segment_lattice_count

__version__ = "0.1.0"

__all__ = [
    "AffineElement",
    "AffineReport",
    "EigenvalueOne",
    "INFINITE",
    "InvariantViolation",
    "Mat2",
    "NotHyperbolic",
    "NotInvolution",
    "NotUnimodular",
    "ParseError",
    "SingularAminusI",
    "ToralRevError",
    "TorusPoint",
    "UniMat",
    "ZeroVector",
    "affine_entropy",
    "affine_reversibility",
    "affine_strong_reversibility",
    "centralizer",
    "classify",
    "compose",
    "conjugacy_test",
    "conjugate_in_G",
    "entropy",
    "fixed_points",
    "g_conjugacy_test",
    "invert",
    "involution_class",
    "lattice_report",
    "linearizing_translation",
    "orbit",
    "parse_matrix",
    "parse_torus_point",
    "periodic_point_count",
    "pick_fixed_point_criterion",
    "reciprocal_fixed_points",
    "render",
    "render_orbit",
    "render_parallelogram",
    "reversibility",
    "segment_lattice_count",
    "similarity_dichotomy",
    "solve_congruence",
    "strong_reversibility",
    "torus_reduce",
]
