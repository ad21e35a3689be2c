"""Canonical labeling by walk counts, color refinement and the Shrikhande gadget."""

from .graph import (
    Graph,
    Graph6Error,
    SizeError,
    VertexMap,
    degree_sequence,
    disjoint_union,
    from_adjlist,
    from_graph6,
    random_gnp,
    to_adjlist,
    to_graph6,
)
from .refinement import Coloring, PartitionRelation, compare_partitions, cr_distinguishes, is_cr_discrete, refine
from .walks import (
    CanonLabeling,
    canonize_walk3,
    is_wm_discrete,
    is_wm_singular,
    pair_walk_counts,
    walk_matrix,
    walk_signature,
    walk_step,
    wm_equivalent,
)

__version__ = "0.1.0"
