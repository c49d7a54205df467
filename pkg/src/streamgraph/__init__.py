"""Graph stream algorithms with explicit pass and bit accounting."""

from .accounting import MemoryLedger, PassMeter, Telemetry
from .connectivity import connectivity_cliques, connectivity_split, connectivity_unionfind, connectivity_vc
from .diameter_cliques import bounded_bfs_cliques, diameter_multipass_cliques, diameter_onepass_cliques
from .diameter_vc import bounded_bfs, diameter_multipass, diameter_onepass, twin_class_table
from .errors import (
    BudgetExceededError,
    GadgetInputError,
    GraphFormatError,
    MatchingOverflowError,
    ModelMismatchError,
    StreamGraphError,
)
from .graph import Graph, read_graph, write_graph
from .kernel import bipartite_double, buss_goldsmith, kernelize, koenig_cover, maximum_matching, nt_sets
from .stream import EdgeItem, GraphStream, StreamModel, VertexItem, build_stream

__all__ = [
    "BudgetExceededError",
    "EdgeItem",
    "GadgetInputError",
    "Graph",
    "GraphFormatError",
    "GraphStream",
    "MatchingOverflowError",
    "MemoryLedger",
    "ModelMismatchError",
    "PassMeter",
    "StreamGraphError",
    "StreamModel",
    "Telemetry",
    "VertexItem",
    "bipartite_double",
    "bounded_bfs",
    "bounded_bfs_cliques",
    "build_stream",
    "buss_goldsmith",
    "connectivity_cliques",
    "connectivity_split",
    "connectivity_unionfind",
    "connectivity_vc",
    "diameter_multipass",
    "diameter_multipass_cliques",
    "diameter_onepass",
    "diameter_onepass_cliques",
    "kernelize",
    "koenig_cover",
    "maximum_matching",
    "nt_sets",
    "read_graph",
    "twin_class_table",
    "write_graph",
]
