"""Barycentric subdivision and the dimension-coloured 1-skeleton of it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Tuple

from ..complex import Complex2, make_edge, triangle_edges


@dataclass(frozen=True)
class ColoredSkeleton:
    """Graph whose vertices are the simplices of a complex.

    Vertex ``i`` stands for ``simplices[i]`` and has colour ``len(simplex) - 1``.
    Two vertices are adjacent iff one simplex strictly contains the other.
    """
    simplices: Tuple[tuple, ...]
    colors: Tuple[int, ...]
    edges: FrozenSet[Tuple[int, int]]
    adjacency: Tuple[FrozenSet[int], ...] = field(repr=False, compare=False)

    @property
    def vertices(self) -> List[Tuple[tuple, int]]:
        return list(zip(self.simplices, self.colors))

    def __len__(self):
        return len(self.simplices)

    def index(self) -> Dict[tuple, int]:
        return {s: i for i, s in enumerate(self.simplices)}

    def by_color(self, c: int) -> List[int]:
        return [i for i, x in enumerate(self.colors) if x == c]

    def color_counts(self) -> Tuple[int, int, int]:
        return tuple(self.colors.count(c) for c in range(3))

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        for i, c in enumerate(self.colors):
            g.add_node(i, color=c)
        g.add_edges_from(self.edges)
        return g


def simplices_of(K: Complex2) -> List[tuple]:
    """All nonempty simplices, vertices first, then edges, then triangles."""
    verts = [(v,) for v in K.vertices]
    return verts + list(K.edges) + list(K.triangles)


def skeleton_with_dims(K: Complex2) -> ColoredSkeleton:
    simp = simplices_of(K)
    idx = {s: i for i, s in enumerate(simp)}
    edges = set()
    for e in K.edges:
        for v in e:
            edges.add((idx[(v,)], idx[e]))
    for t in K.triangles:
        ti = idx[t]
        for v in t:
            edges.add((idx[(v,)], ti))
        for e in triangle_edges(t):
            edges.add((idx[e], ti))
    adj: List[set] = [set() for _ in simp]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return ColoredSkeleton(
        simplices=tuple(simp),
        colors=tuple(len(s) - 1 for s in simp),
        edges=frozenset(edges),
        adjacency=tuple(frozenset(a) for a in adj),
    )


def barycentric_subdivision(K: Complex2) -> Complex2:
    """Sd(K); vertex ``i`` of the result is simplex ``simplices_of(K)[i]``."""
    simp = simplices_of(K)
    idx = {s: i for i, s in enumerate(simp)}
    tris = []
    for t in K.triangles:
        ti = idx[t]
        for e in triangle_edges(t):
            ei = idx[e]
            for v in e:
                tris.append(tuple(sorted((idx[(v,)], ei, ti))))
    loose = []
    for e in K.loose_edges:
        for v in e:
            loose.append(make_edge(idx[(v,)], idx[e]))
    return Complex2(tris, loose, (idx[(v,)] for v in K.loose_vertices))
