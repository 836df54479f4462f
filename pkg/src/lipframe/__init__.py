"""Lipschitz p-approximate Schauder frames: construction, certification,
duality and similarity transforms for subsets of Banach spaces, at desk scale.
"""

__version__ = "0.1.0"

from .certify import (
    CertificationReport,
    certify_frame,
    estimate_lipschitz,
    estimate_synthesis_norm,
)
from .duality import (
    CoeffMap,
    LinOperatorV,
    LipOperatorU,
    canonical_dual,
    dual_from_parameters,
    is_dual,
    left_inverse_family,
    right_inverse_family,
    zero_U,
    zero_V,
)
from .errors import (
    ConvergenceError,
    DivergenceError,
    DualityError,
    FrameMismatchError,
    LipFrameError,
    MembershipError,
    NotInvertibleError,
    PreconditionError,
    SamplerExhaustedError,
    SchemaError,
)
from .fixtures import (
    disc_frame,
    full_space,
    linear_frame,
    log_frame,
    orthogonal_pair,
    parse_fixture,
)
from .frame_core import (
    DEFAULT_SOLVER,
    Frame,
    LipMap,
    SolverCfg,
    analysis,
    coefficient_projection,
    frame_map,
    invert_frame_map,
    invert_map,
    reconstruct,
    synthesis,
    validate_tau_membership,
)
from .spaces import (
    MEMBERSHIP_TOL,
    MIN_SEP,
    Point,
    SeqVec,
    SubsetSpec,
    as_point,
    basis_vector,
    coordinate,
    lp_norm,
    sample_pairs,
    sample_points,
)
from .transforms import (
    AmbientLinMap,
    BiLipMap,
    CheckCfg,
    PointMap,
    apply_similarity,
    direct_sum,
    interpolate,
    is_orthogonal,
    projections_equal,
    recover_similarity,
    scalar_ambient,
    scalar_bi_lip,
)

__all__ = [
    "AmbientLinMap",
    "BiLipMap",
    "CertificationReport",
    "CheckCfg",
    "CoeffMap",
    "ConvergenceError",
    "DEFAULT_SOLVER",
    "DivergenceError",
    "DualityError",
    "Frame",
    "FrameMismatchError",
    "LinOperatorV",
    "LipFrameError",
    "LipMap",
    "LipOperatorU",
    "MEMBERSHIP_TOL",
    "MIN_SEP",
    "MembershipError",
    "NotInvertibleError",
    "Point",
    "PointMap",
    "PreconditionError",
    "SamplerExhaustedError",
    "SchemaError",
    "SeqVec",
    "SolverCfg",
    "SubsetSpec",
    "analysis",
    "apply_similarity",
    "as_point",
    "basis_vector",
    "canonical_dual",
    "certify_frame",
    "coefficient_projection",
    "coordinate",
    "direct_sum",
    "disc_frame",
    "dual_from_parameters",
    "estimate_lipschitz",
    "estimate_synthesis_norm",
    "frame_map",
    "full_space",
    "interpolate",
    "invert_frame_map",
    "invert_map",
    "is_dual",
    "is_orthogonal",
    "left_inverse_family",
    "linear_frame",
    "log_frame",
    "lp_norm",
    "orthogonal_pair",
    "parse_fixture",
    "projections_equal",
    "reconstruct",
    "recover_similarity",
    "right_inverse_family",
    "sample_pairs",
    "sample_points",
    "scalar_ambient",
    "scalar_bi_lip",
    "synthesis",
    "validate_tau_membership",
    "zero_U",
    "zero_V",
]
