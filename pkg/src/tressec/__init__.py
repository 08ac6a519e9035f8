"""Finite separation systems, tree sets and the structures they encode."""

from .core import (
    SeparationSystem,
    build_system,
    classify,
    empty_system,
    essential_core,
    is_essential,
    is_nested,
    is_regular,
    is_tree_set,
    regularization,
)
from .errors import TreeSetError
from .orient import enumerate_consistent, splitting_stars
from .treebridge import GraphTree, edge_tree_set, tree_from_treeset
from .orderbridge import Poset, treeset_from_order_tree
from .bipart import BipartitionFamily, directed_embed, orientation_embed, recover, recover_sparse
from .stree import STree, essentialize, stree_from_treeset, treeset_from_stree
from .graphdecomp import Graph, TreeDecomposition, decomposition_from_treeset, extract_separations

__version__ = "0.1.0"

__all__ = [
    "BipartitionFamily",
    "Graph",
    "GraphTree",
    "Poset",
    "STree",
    "SeparationSystem",
    "TreeDecomposition",
    "TreeSetError",
    "build_system",
    "classify",
    "decomposition_from_treeset",
    "directed_embed",
    "edge_tree_set",
    "empty_system",
    "enumerate_consistent",
    "essential_core",
    "essentialize",
    "extract_separations",
    "is_essential",
    "is_nested",
    "is_regular",
    "is_tree_set",
    "orientation_embed",
    "recover",
    "recover_sparse",
    "regularization",
    "splitting_stars",
    "stree_from_treeset",
    "tree_from_treeset",
    "treeset_from_order_tree",
    "treeset_from_stree",
]
