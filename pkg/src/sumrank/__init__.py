"""Sum-rank metric codes: (generalized) linearized Reed-Solomon codes, their
distinguishers and canonical-parameter recovery."""

from __future__ import annotations

from .codes import (
    GlrsParams,
    canonical_generator,
    dual_generator,
    dual_lrs_zero_derivation,
    encode,
    lrs_form,
    moore_matrix,
    random_code,
    random_glrs,
    validate_params,
)
from .distinguishers import (
    Verdict,
    glrs_multiplier_sweep,
    intersection_chain,
    intersection_distinguisher,
    overbeck_distinguisher,
    square_code_dim,
    square_distinguisher,
)
from .field_core import FieldCtx, OreCtx, build_field
from .isometry import (
    LinearIsometry,
    SemilinearIsometry,
    apply_linear,
    apply_semilinear,
    random_disguise,
    transport_params,
)
from .recovery import RecoveryReport, recover_full
from .skew_poly import SkewPoly
from .sum_rank import Composition, sum_rank_weight

__all__ = [
    "Composition",
    "FieldCtx",
    "GlrsParams",
    "LinearIsometry",
    "OreCtx",
    "RecoveryReport",
    "SemilinearIsometry",
    "SkewPoly",
    "Verdict",
    "apply_linear",
    "apply_semilinear",
    "build_field",
    "canonical_generator",
    "dual_generator",
    "dual_lrs_zero_derivation",
    "encode",
    "glrs_multiplier_sweep",
    "intersection_chain",
    "intersection_distinguisher",
    "lrs_form",
    "moore_matrix",
    "overbeck_distinguisher",
    "random_code",
    "random_disguise",
    "random_glrs",
    "recover_full",
    "square_code_dim",
    "square_distinguisher",
    "sum_rank_weight",
    "transport_params",
    "validate_params",
]
