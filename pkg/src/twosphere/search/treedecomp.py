"""Tree decompositions of coloured skeletons (min-fill heuristic)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags joined into a tree.  The empty graph has one empty bag, width -1."""
    bags: Tuple[FrozenSet[int], ...]
    tree_edges: Tuple[Tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def neighbours(self):
        adj = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def tree_decomposition(G) -> TreeDecomposition:
    """Min-fill decomposition of a ColoredSkeleton or a networkx graph."""
    g = G if isinstance(G, nx.Graph) else G.to_networkx()
    if g.number_of_nodes() == 0:
        return TreeDecomposition((frozenset(),), ())
    _, tree = treewidth_min_fill_in(g)
    bags = sorted(tree.nodes, key=lambda b: (sorted(b), len(b)))
    pos = {b: i for i, b in enumerate(bags)}
    edges = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in tree.edges)
    # networkx returns a forest only for disconnected inputs; tie components together
    forest = nx.Graph()
    forest.add_nodes_from(range(len(bags)))
    forest.add_edges_from(edges)
    comps = [min(c) for c in nx.connected_components(forest)]
    comps.sort()
    for a, b in zip(comps, comps[1:]):
        edges.append((a, b))
    return TreeDecomposition(tuple(frozenset(b) for b in bags), tuple(edges))


def check_tree_decomposition(G, td: TreeDecomposition) -> List[str]:
    """Return a list of violated properties (empty when ``td`` is valid)."""
    g = G if isinstance(G, nx.Graph) else G.to_networkx()
    problems = []
    tree = nx.Graph()
    tree.add_nodes_from(range(len(td.bags)))
    tree.add_edges_from(td.tree_edges)
    if not nx.is_tree(tree):
        problems.append("bags do not form a tree")
    covered = set().union(*td.bags) if td.bags else set()
    for v in g.nodes:
        if v not in covered:
            problems.append(f"vertex {v} in no bag")
    for u, v in g.edges:
        if not any(u in b and v in b for b in td.bags):
            problems.append(f"edge {(u, v)} in no bag")
    for v in covered:
        holding = [i for i, b in enumerate(td.bags) if v in b]
        if not nx.is_connected(tree.subgraph(holding)):
            problems.append(f"bags holding {v} are not connected")
    return problems
