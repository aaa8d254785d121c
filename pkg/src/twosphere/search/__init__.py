"""Searching a complex for small sphere subcomplexes."""
from .colorcoding import colorful_match_once, is_embedding, random_coloring
from .engine import (AT_MOST, BACKTRACKING, COLOR_CODING, EXACTLY, SearchOutcome, backtrack_embedding,
                     brute_force_sphere_subcomplex, closed_core, color_coding_trials,
                     find_sphere_subcomplex)
from .patterns import TETRAHEDRON, canonical_code, enumerate_sphere_triangulations, spheres_with
from .subdivision import ColoredSkeleton, barycentric_subdivision, simplices_of, skeleton_with_dims
from .treedecomp import TreeDecomposition, check_tree_decomposition, tree_decomposition

__all__ = [
    "AT_MOST", "BACKTRACKING", "COLOR_CODING", "EXACTLY", "TETRAHEDRON",
    "ColoredSkeleton", "SearchOutcome", "TreeDecomposition",
    "backtrack_embedding", "barycentric_subdivision", "brute_force_sphere_subcomplex",
    "canonical_code", "check_tree_decomposition", "closed_core", "color_coding_trials",
    "colorful_match_once", "enumerate_sphere_triangulations", "find_sphere_subcomplex",
    "is_embedding", "random_coloring", "simplices_of", "skeleton_with_dims", "spheres_with",
    "tree_decomposition",
]
