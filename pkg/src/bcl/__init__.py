"""Balanced simplicial complexes on few vertices: exact homology, vertex
colorings, cyclic covers, combinatorial certificates, and an exhaustive
search engine for small balanced triangulations.

Complexes live on at most 64 ambient vertices and store faces as bitmasks;
all homology is computed exactly (fraction-free over Q, sparse elimination
over Z/p).  Nothing here ever touches floating point.
"""

from .certify import (
    GraphTriple,
    balanced_link_lbt_check,
    bm_hypotheses_check,
    facet_count_contradiction_check,
    four_class_deletion_check,
    graph_triple_witness,
    lbt_inequality_check,
    random_graph_triple,
)
from .coloring import (
    Coloring,
    find_balanced_coloring,
    rank_selected,
    unique_large_class,
    validate_coloring,
)
from .constructions import (
    LabeledComplex,
    bm,
    bm_from_handle_pipeline,
    connected_sum,
    cross_polytope_boundary,
    handle_addition,
    stacked_cross_polytopal_sphere,
)
from .core import (
    MAX_VERTICES,
    Complex,
    FVector,
    Graph,
    HVector,
    bits,
    connected_components,
    mask_of,
)
from .covers import (
    Cocycle,
    cover_buchsbaum_star_check,
    cover_h_identity_check,
    cyclic_cover,
    handle_cocycle,
    lift_coloring,
)
from .errors import (
    BadDimension,
    BadParameters,
    BadVertex,
    BclError,
    BudgetExceeded,
    ColorMismatch,
    DimensionTooSmall,
    DisconnectedCover,
    EmptyInput,
    FaceCollision,
    HypothesisViolated,
    InvalidCocycle,
    NoUniqueLargeClass,
    NotAFacet,
    NotASphere,
    NotBuchsbaum,
    NotLocallyValid,
    NotMonochromatic,
    NotPure,
    SharedVertices,
)
from .files import read_cocycle, read_complex, write_cocycle, write_complex
from .homology import (
    GF2,
    QQ,
    BettiVector,
    Field,
    alexander_duality_check,
    betti,
    color_deletion_invariance_check,
    is_buchsbaum,
    is_buchsbaum_star,
    is_homology_manifold,
    is_homology_sphere,
    reduced_betti,
    relative_betti,
)
from .iso import canonical_form, find_isomorphism, is_isomorphic
from .report import Certificate, canonical_json, certificate, digest_of
from .search import (
    PRUNES,
    SearchResult,
    SearchSpec,
    enumerate_complexes,
    verify_census,
)

__version__ = "0.1.0"

__all__ = [
    "BadDimension",
    "BadParameters",
    "BadVertex",
    "BclError",
    "BettiVector",
    "BudgetExceeded",
    "Certificate",
    "Cocycle",
    "Coloring",
    "ColorMismatch",
    "Complex",
    "DimensionTooSmall",
    "DisconnectedCover",
    "EmptyInput",
    "FVector",
    "FaceCollision",
    "Field",
    "GF2",
    "Graph",
    "GraphTriple",
    "HVector",
    "HypothesisViolated",
    "InvalidCocycle",
    "LabeledComplex",
    "MAX_VERTICES",
    "NoUniqueLargeClass",
    "NotAFacet",
    "NotASphere",
    "NotBuchsbaum",
    "NotLocallyValid",
    "NotMonochromatic",
    "NotPure",
    "PRUNES",
    "QQ",
    "SearchResult",
    "SearchSpec",
    "SharedVertices",
    "alexander_duality_check",
    "balanced_link_lbt_check",
    "betti",
    "bm",
    "bm_from_handle_pipeline",
    "bm_hypotheses_check",
    "bits",
    "canonical_form",
    "canonical_json",
    "certificate",
    "color_deletion_invariance_check",
    "connected_components",
    "connected_sum",
    "cover_buchsbaum_star_check",
    "cover_h_identity_check",
    "cross_polytope_boundary",
    "cyclic_cover",
    "digest_of",
    "enumerate_complexes",
    "facet_count_contradiction_check",
    "find_balanced_coloring",
    "find_isomorphism",
    "four_class_deletion_check",
    "graph_triple_witness",
    "handle_addition",
    "handle_cocycle",
    "is_buchsbaum",
    "is_buchsbaum_star",
    "is_homology_manifold",
    "is_homology_sphere",
    "is_isomorphic",
    "lbt_inequality_check",
    "lift_coloring",
    "mask_of",
    "random_graph_triple",
    "rank_selected",
    "read_cocycle",
    "read_complex",
    "reduced_betti",
    "relative_betti",
    "stacked_cross_polytopal_sphere",
    "unique_large_class",
    "validate_coloring",
    "verify_census",
    "write_cocycle",
    "write_complex",
]
