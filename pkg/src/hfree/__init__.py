"""Pattern constructions and self-reductions for triangle detection in H-free graphs."""

from .graph import Coloring, Embedding, Graph, GraphError, Pattern
from .search import count_triangles, find_colored_copy, find_copy, find_triangle, induced_subgraph
from .coloring import enumerate_extendable_colorings, find_proper_coloring
from .patterns import augment, check_degenerate_coloring, find_degenerate_coloring, verify_augment_preserves
from .reductions import PipelineConfig, color_code, detect_induced_hfree, reduce_to_unique, sieve

__all__ = [
    "Coloring",
    "Embedding",
    "Graph",
    "GraphError",
    "Pattern",
    "PipelineConfig",
    "augment",
    "check_degenerate_coloring",
    "color_code",
    "count_triangles",
    "detect_induced_hfree",
    "enumerate_extendable_colorings",
    "find_colored_copy",
    "find_copy",
    "find_degenerate_coloring",
    "find_proper_coloring",
    "find_triangle",
    "induced_subgraph",
    "reduce_to_unique",
    "sieve",
    "verify_augment_preserves",
]
