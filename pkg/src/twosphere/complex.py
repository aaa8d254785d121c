"""Pure 2-dimensional simplicial complexes and their surface recognition.

A complex is stored as a canonical, sorted tuple of triangles (sorted vertex
triples).  Edge and vertex incidences are derived once at construction time.
Lower-dimensional maximal simplices read from input files are carried along
in ``loose_edges`` / ``loose_vertices`` but never take part in the triangle
algorithms.
"""
from __future__ import annotations

import enum
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from scipy.cluster.hierarchy import DisjointSet

from .errors import DegenerateTriangle, IdentificationCollapse, NotEdgeConnected

Vertex = int
Edge = Tuple[int, int]
Triangle = Tuple[int, int, int]


def make_edge(a: int, b: int) -> Edge:
    if a == b:
        raise DegenerateTriangle(f"edge with repeated vertex {a}")
    return (a, b) if a < b else (b, a)


def make_triangle(a: int, b: int, c: int) -> Triangle:
    t = tuple(sorted((int(a), int(b), int(c))))
    if t[0] == t[1] or t[1] == t[2]:
        raise DegenerateTriangle(f"triangle {(a, b, c)} has a repeated vertex")
    if t[0] < 0:
        raise DegenerateTriangle(f"negative vertex id in {(a, b, c)}")
    return t


def triangle_edges(t: Triangle) -> Tuple[Edge, Edge, Edge]:
    a, b, c = t
    return ((a, b), (a, c), (b, c))


class Complex2:
    """Immutable pure 2-complex with derived incidence indices."""

    __slots__ = ("triangles", "_tset", "edge_index", "vertex_index",
                 "loose_edges", "loose_vertices")

    def __init__(self, triangles: Iterable[Triangle] = (),
                 loose_edges: Iterable[Edge] = (),
                 loose_vertices: Iterable[int] = ()):
        tset = frozenset(triangles)
        tris = tuple(sorted(tset))
        edge_index: Dict[Edge, list] = defaultdict(list)
        vertex_index: Dict[int, list] = defaultdict(list)
        for t in tris:
            for e in triangle_edges(t):
                edge_index[e].append(t)
            for v in t:
                vertex_index[v].append(t)
        self.triangles = tris
        self._tset = tset
        self.edge_index = {e: tuple(ts) for e, ts in sorted(edge_index.items())}
        self.vertex_index = {v: tuple(ts) for v, ts in sorted(vertex_index.items())}
        le = set(loose_edges) - set(self.edge_index)
        self.loose_edges = tuple(sorted(le))
        covered = set(self.vertex_index)
        covered.update(v for e in le for v in e)
        self.loose_vertices = tuple(sorted(set(loose_vertices) - covered))

    # -- container protocol -------------------------------------------------
    def __len__(self):
        return len(self.triangles)

    def __iter__(self):
        return iter(self.triangles)

    def __contains__(self, t):
        return t in self._tset

    def __eq__(self, other):
        if not isinstance(other, Complex2):
            return NotImplemented
        return (self.triangles == other.triangles
                and self.loose_edges == other.loose_edges
                and self.loose_vertices == other.loose_vertices)

    def __hash__(self):
        return hash((self.triangles, self.loose_edges, self.loose_vertices))

    def __repr__(self):
        extra = ""
        if self.loose_edges or self.loose_vertices:
            extra = f", loose_edges={len(self.loose_edges)}, loose_vertices={len(self.loose_vertices)}"
        return f"Complex2({len(self.triangles)} triangles{extra})"

    # -- derived data ---------------------------------------------------------
    @property
    def triangle_set(self) -> frozenset:
        return self._tset

    @property
    def vertices(self) -> Tuple[int, ...]:
        vs = set(self.vertex_index)
        vs.update(v for e in self.loose_edges for v in e)
        vs.update(self.loose_vertices)
        return tuple(sorted(vs))

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(set(self.edge_index) | set(self.loose_edges)))

    @property
    def is_pure(self) -> bool:
        return not self.loose_edges and not self.loose_vertices

    def multiplicity(self, e: Edge) -> int:
        return len(self.edge_index.get(e, ()))

    def max_vertex(self) -> int:
        vs = self.vertices
        return vs[-1] if vs else -1

    def subcomplex(self, triangles: Iterable[Triangle]) -> "Complex2":
        return Complex2(triangles)

    def without(self, triangles: Iterable[Triangle]) -> "Complex2":
        drop = set(triangles)
        return Complex2(t for t in self.triangles if t not in drop)

    def pure_part(self) -> "Complex2":
        if self.is_pure:
            return self
        return Complex2(self.triangles)

    def relabel(self, mapping) -> "Complex2":
        """Apply an injective vertex map (dict or callable)."""
        f = mapping.__getitem__ if hasattr(mapping, "__getitem__") else mapping
        return Complex2(make_triangle(f(a), f(b), f(c)) for a, b, c in self.triangles)

    def stats(self) -> dict:
        return {
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "triangles": len(self.triangles),
            "euler_characteristic": euler_characteristic(self),
            "components": len(edge_connected_components(self)),
            "loose_edges": len(self.loose_edges),
            "loose_vertices": len(self.loose_vertices),
        }


def build_complex(triples: Iterable[Sequence[int]],
                  loose_edges: Iterable[Sequence[int]] = (),
                  loose_vertices: Iterable[int] = ()) -> Complex2:
    tris = []
    for tr in triples:
        if len(tr) != 3:
            raise ValueError(f"expected a vertex triple, got {tr!r}")
        tris.append(make_triangle(*tr))
    edges = [make_edge(int(a), int(b)) for a, b in loose_edges]
    return Complex2(tris, edges, (int(v) for v in loose_vertices))


def euler_characteristic(K: Complex2) -> int:
    return len(K.vertices) - len(K.edges) + len(K.triangles)


def edge_connected_components(K: Complex2) -> List[Complex2]:
    """Maximal edge-connected subcomplexes, ordered by their smallest triangle."""
    if not K.triangles:
        return []
    ds = DisjointSet(K.triangles)
    for ts in K.edge_index.values():
        for t in ts[1:]:
            ds.merge(ts[0], t)
    comps = [Complex2(s) for s in ds.subsets()]
    comps.sort(key=lambda c: c.triangles[0])
    return comps


def boundary_edges(K: Complex2) -> frozenset:
    return frozenset(e for e, ts in K.edge_index.items() if len(ts) == 1)


def conflict_triangles(K: Complex2) -> frozenset:
    out = set()
    for ts in K.edge_index.values():
        if len(ts) >= 3:
            out.update(ts)
    return frozenset(out)


# ---------------------------------------------------------------------------
# surface recognition

class SurfaceKind(str, enum.Enum):
    SPHERE = "Sphere"
    PUNCTURED_SPHERE = "PuncturedSphere"
    CLOSED_OTHER = "ClosedOther"
    WITH_BOUNDARY_OTHER = "WithBoundaryOther"
    NOT_SURFACE = "NotSurface"


@dataclass(frozen=True)
class SurfaceClass:
    kind: SurfaceKind
    euler_characteristic: int
    boundary_cycles: Optional[int] = None

    @property
    def is_sphere(self) -> bool:
        return self.kind is SurfaceKind.SPHERE

    def to_json(self) -> dict:
        d = {"kind": self.kind.value, "euler_characteristic": self.euler_characteristic}
        if self.boundary_cycles is not None:
            d["boundary_cycles"] = self.boundary_cycles
        return d


def link_components(K: Complex2, v: int) -> List[Tuple[List[int], bool]]:
    """Connected components of the link of ``v`` as (vertex walk, is_cycle).

    Only meaningful when every edge has multiplicity <= 2, so that link
    vertices have degree <= 2.  Paths are returned end to end.
    """
    adj: Dict[int, List[int]] = defaultdict(list)
    for t in K.vertex_index.get(v, ()):
        a, b = (x for x in t if x != v)
        adj[a].append(b)
        adj[b].append(a)
    seen = set()
    out = []
    # start paths at their endpoints so the walk is in order
    starts = sorted(adj, key=lambda x: (len(adj[x]) != 1, x))
    for s in starts:
        if s in seen:
            continue
        walk = [s]
        seen.add(s)
        prev, cur = None, s
        while True:
            nxt = [y for y in adj[cur] if y != prev and y not in seen]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            walk.append(cur)
            seen.add(cur)
        is_cycle = all(len(adj[x]) == 2 for x in walk)
        out.append((walk, is_cycle))
    return out


def orient(K: Complex2) -> Optional[Dict[Triangle, Tuple[int, int, int]]]:
    """Consistently orient every triangle, or return None if impossible.

    Assumes edge multiplicity <= 2.  Each connected piece is seeded with the
    sorted orientation of its smallest triangle, so the result is canonical.
    """
    oriented: Dict[Triangle, Tuple[int, int, int]] = {}
    for seed in K.triangles:
        if seed in oriented:
            continue
        oriented[seed] = seed
        queue = deque([seed])
        while queue:
            t = queue.popleft()
            a, b, c = oriented[t]
            for u, w in ((a, b), (b, c), (c, a)):
                for s in K.edge_index[make_edge(u, w)]:
                    if s == t:
                        continue
                    # neighbour must traverse the shared edge as w -> u
                    x = next(y for y in s if y != u and y != w)
                    want = (w, u, x)
                    if s in oriented:
                        if not _same_cycle(oriented[s], want):
                            return None
                    else:
                        oriented[s] = want
                        queue.append(s)
    return oriented


def _same_cycle(p, q) -> bool:
    return q in (p, (p[1], p[2], p[0]), (p[2], p[0], p[1]))


def _count_cycles(edges: Iterable[Edge]) -> int:
    edges = list(edges)
    if not edges:
        return 0
    ds = DisjointSet()
    for a, b in edges:
        ds.add(a)
        ds.add(b)
        ds.merge(a, b)
    return ds.n_subsets


def classify_surface(K: Complex2) -> SurfaceClass:
    """Recognise the surface type of an edge-connected complex.

    Raises NotEdgeConnected when ``K`` has two or more edge-connected
    components.  The empty complex and complexes with loose edges or
    vertices are reported as NotSurface.
    """
    chi = euler_characteristic(K)
    if not K.triangles or not K.is_pure:
        return SurfaceClass(SurfaceKind.NOT_SURFACE, chi)
    if len(edge_connected_components(K)) > 1:
        raise NotEdgeConnected("classify_surface expects one edge-connected component")
    return _classify_connected(K, chi)


def _classify_connected(K: Complex2, chi: int) -> SurfaceClass:
    not_surface = SurfaceClass(SurfaceKind.NOT_SURFACE, chi)
    if any(len(ts) > 2 for ts in K.edge_index.values()):
        return not_surface
    for v in K.vertex_index:
        if len(link_components(K, v)) != 1:
            return not_surface
    bnd = boundary_edges(K)
    orientable = orient(K) is not None
    if not bnd:
        if chi == 2:
            return SurfaceClass(SurfaceKind.SPHERE, chi)
        return SurfaceClass(SurfaceKind.CLOSED_OTHER, chi)
    b = _count_cycles(bnd)
    if orientable and chi == 2 - b:
        return SurfaceClass(SurfaceKind.PUNCTURED_SPHERE, chi, b)
    return SurfaceClass(SurfaceKind.WITH_BOUNDARY_OTHER, chi, b)


def is_sphere(K: Complex2) -> bool:
    """True iff ``K`` is nonempty, edge-connected and a triangulated 2-sphere."""
    if len(K.triangles) < 4 or len(K.triangles) % 2 or not K.is_pure:
        return False
    if any(len(ts) != 2 for ts in K.edge_index.values()):
        return False
    if len(edge_connected_components(K)) != 1:
        return False
    return _classify_connected(K, euler_characteristic(K)).is_sphere


def quotient_by_vertex_identifications(K: Complex2, classes: Iterable[Iterable[int]]) -> Complex2:
    """Glue vertices class by class; each class is relabelled to its minimum."""
    rep: Dict[int, int] = {}
    for cls in classes:
        members = sorted(set(int(v) for v in cls))
        if not members:
            continue
        r = members[0]
        for v in members:
            if v in rep:
                raise ValueError(f"vertex {v} appears in two identification classes")
            rep[v] = r
    f = lambda v: rep.get(v, v)  # noqa: E731
    out = set()
    for t in K.triangles:
        img = tuple(sorted(f(v) for v in t))
        if img[0] == img[1] or img[1] == img[2]:
            raise IdentificationCollapse(f"triangle {t} degenerates to {img}")
        if img in out:
            raise IdentificationCollapse(f"triangle {t} merges with another triangle as {img}")
        out.add(img)
    loose_e = set()
    for a, b in K.loose_edges:
        if f(a) != f(b):
            loose_e.add(make_edge(f(a), f(b)))
    return Complex2(out, loose_e, (f(v) for v in K.loose_vertices))


def unpinch(K: Complex2, first_new: Optional[int] = None) -> Tuple[Complex2, Dict[int, int]]:
    """Split every vertex into one copy per connected component of its link.

    Requires edge multiplicity <= 2.  The first link component of ``v`` keeps
    the id ``v``; further copies get ids ``first_new, first_new + 1, ...``
    (default: one past the largest vertex).  Returns the new complex and a
    map from every vertex id of it to the original vertex.
    """
    nxt = K.max_vertex() + 1 if first_new is None else first_new
    origin = {}
    rename: Dict[Tuple[Triangle, int], int] = {}
    for v in K.vertex_index:
        copy_of = {}
        for i, (walk, _) in enumerate(link_components(K, v)):
            if i == 0:
                c = v
            else:
                c = nxt
                nxt += 1
            origin[c] = v
            for u in walk:
                copy_of[u] = c
        for t in K.vertex_index[v]:
            other = t[0] if t[0] != v else t[1]
            rename[(t, v)] = copy_of[other]
    tris = [make_triangle(*(rename[(t, v)] for v in t)) for t in K.triangles]
    return Complex2(tris), origin
