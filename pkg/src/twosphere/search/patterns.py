"""Isomorph-free enumeration of triangulated 2-spheres by vertex splitting.

Every simplicial sphere with more than four vertices has a contractible
edge, so splitting vertices of all spheres with ``n`` vertices reaches every
sphere with ``n + 1`` vertices.  Duplicates are removed with a canonical code
of the underlying planar map (BFS over the rotation system, minimised over
all starting darts and both orientations).
"""
from __future__ import annotations

from collections import deque
from typing import Dict, List, Tuple

from ..complex import Complex2, link_components, make_triangle, orient

TETRAHEDRON = Complex2([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])

_levels: List[List[Complex2]] = []  # _levels[i] holds spheres with 4 + 2i triangles


def rotation_system(K: Complex2) -> Dict[int, List[int]]:
    """Cyclic neighbour order around each vertex, from a global orientation."""
    ori = orient(K)
    if ori is None:
        raise ValueError("complex is not orientable")
    succ: Dict[int, Dict[int, int]] = {v: {} for v in K.vertex_index}
    for a, b, c in ori.values():
        # triangle a->b->c: around a, b is followed by c
        succ[a][b] = c
        succ[b][c] = a
        succ[c][a] = b
    rot = {}
    for v, nxt in succ.items():
        start = min(nxt)
        order = [start]
        cur = nxt[start]
        while cur != start:
            order.append(cur)
            cur = nxt[cur]
        rot[v] = order
    return rot


def _code_from(rot: Dict[int, List[int]], u: int, w: int, reverse: bool, best):
    labels = {u: 0}
    ref = {u: w}
    queue = deque([u])
    code = []
    nxt_label = 1
    while queue:
        x = queue.popleft()
        nbrs = rot[x]
        if reverse:
            nbrs = nbrs[::-1]
        i = nbrs.index(ref[x])
        for y in nbrs[i:] + nbrs[:i]:
            if y not in labels:
                labels[y] = nxt_label
                nxt_label += 1
                ref[y] = x
                queue.append(y)
            code.append(labels[y])
        code.append(-1)
        # prune: this start cannot beat the current best
        if best is not None:
            n = len(code)
            if tuple(code) > best[:n]:
                return None
    return tuple(code)


def canonical_code(K: Complex2) -> Tuple[int, ...]:
    """Isomorphism invariant code for a triangulated sphere (up to reflection)."""
    rot = rotation_system(K)
    best = None
    for u, nbrs in rot.items():
        for w in nbrs:
            for rev in (False, True):
                c = _code_from(rot, u, w, rev, best)
                if c is not None and (best is None or c < best):
                    best = c
    return best


def canonical_relabel(K: Complex2) -> Complex2:
    """Relabel vertices 0..n-1 following the minimising BFS."""
    rot = rotation_system(K)
    best, best_start = None, None
    for u, nbrs in rot.items():
        for w in nbrs:
            for rev in (False, True):
                c = _code_from(rot, u, w, rev, best)
                if c is not None and (best is None or c < best):
                    best, best_start = c, (u, w, rev)
    u, w, rev = best_start
    labels = {u: 0}
    ref = {u: w}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        nbrs = rot[x][::-1] if rev else rot[x]
        i = nbrs.index(ref[x])
        for y in nbrs[i:] + nbrs[:i]:
            if y not in labels:
                labels[y] = len(labels)
                ref[y] = x
                queue.append(y)
    return K.relabel(labels)


def vertex_splits(K: Complex2):
    """Yield every complex obtained from ``K`` by splitting one vertex."""
    w = K.max_vertex() + 1
    for v in K.vertex_index:
        (cyc, is_cycle), = link_components(K, v)
        assert is_cycle
        d = len(cyc)
        star = set(K.vertex_index[v])
        for i in range(d):
            for j in range(i + 1, d):
                moved = {make_triangle(v, cyc[m], cyc[m + 1]) for m in range(i, j)}
                tris = [t for t in K.triangles if t not in moved]
                tris += [make_triangle(w, cyc[m], cyc[m + 1]) for m in range(i, j)]
                tris += [make_triangle(v, w, cyc[i]), make_triangle(v, w, cyc[j])]
                assert moved <= star
                yield Complex2(tris)


def _extend_levels(upto_level: int):
    if not _levels:
        _levels.append([canonical_relabel(TETRAHEDRON)])
    while len(_levels) <= upto_level:
        seen = {}
        for K in _levels[-1]:
            for S in vertex_splits(K):
                code = canonical_code(S)
                if code not in seen:
                    seen[code] = S
        _levels.append([canonical_relabel(seen[c]) for c in sorted(seen)])


def enumerate_sphere_triangulations(max_triangles: int) -> List[Complex2]:
    """All sphere triangulations with 4, 6, ..., ``max_triangles`` triangles."""
    if max_triangles < 4:
        return []
    top = (max_triangles - 4) // 2
    _extend_levels(top)
    out = []
    for lvl in _levels[:top + 1]:
        out.extend(lvl)
    return out


def spheres_with(triangles: int) -> List[Complex2]:
    if triangles < 4 or triangles % 2:
        return []
    lvl = (triangles - 4) // 2
    _extend_levels(lvl)
    return list(_levels[lvl])
