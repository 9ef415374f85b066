"""Tree graphs of planar point sets: enumeration of non-crossing
spanning trees, blind recovery of the crossing structure from the
abstract tree graph, and the complete-graph analogue."""

from .enumeration import (
    Sst,
    SstTable,
    TreeGraph,
    build_tree_graph,
    enumerate_ssts,
    enumerate_trees_kn,
    is_simple_tree,
    shuffle_vertices,
)
from .errors import (
    AmbiguousClique,
    CapExceeded,
    InputError,
    MalformedGraphError,
    TooFewPoints,
    TreegraphError,
    VerificationError,
)
from .geometry import Point, PointSet, convex_hull, in_general_position, orient, segments_cross
from .instances import generate_instance, load_points, parse_points, save_points
from .reconstruct import CrossingRelation, StarSet, crossing_relation

__all__ = [
    "AmbiguousClique",
    "CapExceeded",
    "CrossingRelation",
    "InputError",
    "MalformedGraphError",
    "Point",
    "PointSet",
    "Sst",
    "SstTable",
    "StarSet",
    "TooFewPoints",
    "TreeGraph",
    "TreegraphError",
    "VerificationError",
    "build_tree_graph",
    "convex_hull",
    "crossing_relation",
    "enumerate_ssts",
    "enumerate_trees_kn",
    "generate_instance",
    "in_general_position",
    "is_simple_tree",
    "load_points",
    "orient",
    "parse_points",
    "save_points",
    "segments_cross",
    "shuffle_vertices",
]

__version__ = "0.1.0"
