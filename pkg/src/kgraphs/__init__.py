"""Finite higher-rank graphs: colored skeletons, factorization squares,
outsplitting, and an exact Kumjian-Pask algebra engine."""

from .skeleton import (
    Degree,
    Edge,
    KGraph,
    KGraphInvalid,
    Path,
    Skeleton,
    SquareSet,
    StructureError,
    ValidationReport,
    build_kgraph,
    degrees_with_total,
    product_graph,
    validate,
)
from .splitting import (
    PairingReport,
    SplitError,
    SplitResult,
    SplitSpec,
    UnpairedError,
    copy_counts,
    copy_path,
    default_spec,
    outsplit,
    pairing_report,
    parent_path,
    reconstruct_split,
    sibling_set,
    split_region,
    validate_spec,
)
from .kp import (
    BasisTerm,
    GaussianRational,
    KPElement,
    KumjianPask,
    SplitEmbedding,
    VerificationReport,
    saturation,
    verify_corner,
    verify_diagonal,
    verify_family,
    verify_grading,
    verify_swap_identities,
    verify_universal_family,
)

__all__ = [
    "BasisTerm",
    "Degree",
    "Edge",
    "GaussianRational",
    "KGraph",
    "KGraphInvalid",
    "KPElement",
    "KumjianPask",
    "PairingReport",
    "Path",
    "Skeleton",
    "SplitEmbedding",
    "SplitError",
    "SplitResult",
    "SplitSpec",
    "SquareSet",
    "StructureError",
    "UnpairedError",
    "ValidationReport",
    "VerificationReport",
    "build_kgraph",
    "copy_counts",
    "copy_path",
    "default_spec",
    "degrees_with_total",
    "outsplit",
    "pairing_report",
    "parent_path",
    "product_graph",
    "reconstruct_split",
    "saturation",
    "sibling_set",
    "split_region",
    "validate",
    "validate_spec",
    "verify_corner",
    "verify_diagonal",
    "verify_family",
    "verify_grading",
    "verify_swap_identities",
    "verify_universal_family",
]
