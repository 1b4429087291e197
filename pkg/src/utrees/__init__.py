"""Exact invariants and counting procedures for vertex-weighted trees."""

from .census import CensusReport, fingerprint, run_census
from .embedding import (
    BitCode,
    GoodEmbedding,
    GoodSetReport,
    check_good,
    embedding_isomorphic,
    good_decode,
    good_encode,
)
from .errors import (
    InternalInconsistencyError,
    MalformedEmbeddingError,
    MissingTableEntryError,
    ReconstructionError,
    ResourceBoundError,
    TreeInputError,
)
from .generate import free_trees, random_weighted_tree
from .io import TreeDocument, load_documents, parse_rooted_spec, parse_situation_spec
from .partitions import (
    ConnectedPartition,
    Expression,
    ExpressionCounts,
    PottsParams,
    characteristic,
    count_partitions,
    count_shaped_partitions,
    is_refinement,
    potts_dichromate,
    q_chromatic,
    q_dichromate,
    u_polynomial,
)
from .shapecount import (
    ExpressionAnalysis,
    ShapeCensus,
    analyze_expression,
    nonshaped_count,
    reconstruct_from_census,
    shape_census,
    shaped_count,
)
from .situations import (
    WHOLE_TREE,
    ContainmentForest,
    ContainmentTable,
    Situation,
    build_containment_forest,
    build_containment_table,
    count_forest_assignments,
    enumerate_situations,
    occurrences_by_enumeration,
    occurrences_by_inclusion_exclusion,
)
from .trees import (
    CanonicalCode,
    HangingSubtree,
    RootedWeightedTree,
    WeightedTree,
    alpha_vector,
    free_code,
    hang_count,
    hanging_subtrees,
    isomorphic,
    rooted_code,
    rooted_isomorphic,
    shape_count,
    shapes,
)

__all__ = [name for name in dir() if not name.startswith("_")]
