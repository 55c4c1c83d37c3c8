"""Locally linear embedding with exact or regularized weights, projection-pattern
certificates and diagnostics for the Swiss roll with a hole."""
from ._backend import BACKEND
from .dataset import (
    EmbeddingKind,
    EmbeddingOp,
    PointCloud,
    Rectangle,
    apply_embedding,
    default_hole,
    embed_named,
    gen_swiss_roll_hole,
    load_csv,
    make_extra_dim_sine,
    make_isometric_embedding,
    make_per_coord_sine,
    save_csv,
)
from .diagnostics import (
    DiagnosticsReport,
    affine_fit_residual,
    diagnose,
    param_recovery_score,
    procrustes_distance,
)
from .errors import AssumptionError, CSVFormatError, EigensolverError, InfeasibleStationarityError
from .neighbors import NeighborGraph, knn
from .oracle import ProjectionPattern, data_gram_top_eigs, projection_pattern, verify_solution
from .spectral import AlignmentMatrix, EmbeddingResult, bottom_eigs, build_alignment, lle_embed
from .weights import (
    LocalGram,
    WeightMode,
    WeightSet,
    compute_weight_set,
    local_gram,
    solve_weights_exact,
    solve_weights_regularized,
)

__version__ = "0.1.0"
