"""Phase, norm and weak phase retrieval for finite frames and projection families in R^n."""
from .errors import CapExceededError
from .frames import (
    Frame,
    FrameBounds,
    FusionFrame,
    frame_bounds,
    frame_operator,
    fusion_operator,
    is_full_spark,
    is_riesz_sequence,
    spark,
)
from .linalg import Subspace, as_array, det, gram_schmidt, null_space, orthocomplement, rank
from .projections import (
    ProjectionFamily,
    bound_advisories,
    fusion_norm_retrieval,
    ip_transfer_check,
    perp_family,
    proj_measurements,
    rank1_equivalence,
    rank1_family,
    span_criterion_at,
    two_subspace_operator,
    weak_phase_by_projections_check,
)
from .search import (
    FalsifyResult,
    SearchBudget,
    norm_retrieval_sampling_oracle,
    projection_pr_falsify,
    projection_wpr_falsify,
    wpr_falsify,
)
from .vector_retrieval import (
    PartitionWitness,
    RetrievalResult,
    does_norm_retrieval,
    does_phase_retrieval,
    has_complement_property,
    measurement_pair,
    orthogonality_necessity,
)
from .weak_phase import (
    PhaseRelation,
    ScaledDecomposition,
    WeakWitness,
    classify_wpr_r2,
    decompose_scaled,
    disjoint_support_check,
    measurements_equal,
    nonspanning_counterexample,
    phase_relation,
    sign_products_consistent,
    weakly_same_phase,
    wpr_full_spark_minimal,
    wpr_necessary_conditions,
)

__all__ = [
    "CapExceededError",
    "Frame",
    "FrameBounds",
    "FusionFrame",
    "frame_bounds",
    "frame_operator",
    "fusion_operator",
    "is_full_spark",
    "is_riesz_sequence",
    "spark",
    "Subspace",
    "as_array",
    "det",
    "gram_schmidt",
    "null_space",
    "orthocomplement",
    "rank",
    "ProjectionFamily",
    "bound_advisories",
    "fusion_norm_retrieval",
    "ip_transfer_check",
    "perp_family",
    "proj_measurements",
    "rank1_equivalence",
    "rank1_family",
    "span_criterion_at",
    "two_subspace_operator",
    "weak_phase_by_projections_check",
    "FalsifyResult",
    "SearchBudget",
    "norm_retrieval_sampling_oracle",
    "projection_pr_falsify",
    "projection_wpr_falsify",
    "wpr_falsify",
    "PartitionWitness",
    "RetrievalResult",
    "does_norm_retrieval",
    "does_phase_retrieval",
    "has_complement_property",
    "measurement_pair",
    "orthogonality_necessity",
    "PhaseRelation",
    "ScaledDecomposition",
    "WeakWitness",
    "classify_wpr_r2",
    "decompose_scaled",
    "disjoint_support_check",
    "measurements_equal",
    "nonspanning_counterexample",
    "phase_relation",
    "sign_products_consistent",
    "weakly_same_phase",
    "wpr_full_spark_minimal",
    "wpr_necessary_conditions",
]

__version__ = "0.1.0"
