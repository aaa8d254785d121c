"""Replacing a planar component by a small one with the same boundary.

A component ``C`` of ``K`` minus its conflict triangles is *planar* when it
can sit inside some 2-sphere: every vertex link in ``C`` is a single cycle
or a disjoint union of paths, and after splitting pinched vertices (one copy
per link component) the result is a sphere with holes.

The replacement keeps the boundary cycles of ``C`` with their original
vertex ids, keeps every triangle holding two boundary edges ("ears"), and
fills in the rest with fresh vertices:

* one boundary cycle and nothing else to preserve: a cone from a fresh hub;
* otherwise: a fresh stacked-prism sphere, one face removed per boundary
  cycle, each cycle zipped to its face by a triangulated annulus.

Cycles that run through the same original vertex twice get a collar (a ring
of fresh vertices) first, so no fresh vertex sees two copies of one vertex.
Interior vertices listed in ``keep`` are coned onto distinct fresh faces.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..complex import (Complex2, SurfaceClass, SurfaceKind, _classify_connected,
                       boundary_edges, euler_characteristic, link_components,
                       make_edge, make_triangle, orient, triangle_edges, unpinch)
from ..errors import NotPuncturedSphere


@dataclass(frozen=True)
class PlanarPiece:
    surface: Complex2           # C with pinched vertices split
    origin: Dict[int, int]      # vertex of ``surface`` -> vertex of C
    kind: SurfaceClass


def planar_piece(C: Complex2) -> Optional[PlanarPiece]:
    """Unpinched form of ``C`` if ``C`` could be part of a 2-sphere, else None."""
    if not C.triangles or not C.is_pure:
        return None
    if any(len(ts) > 2 for ts in C.edge_index.values()):
        return None
    for v in C.vertex_index:
        comps = link_components(C, v)
        if len(comps) > 1 and any(cyc for _, cyc in comps):
            return None
    S, origin = unpinch(C)
    cls = _classify_connected(S, euler_characteristic(S))
    if cls.kind not in (SurfaceKind.SPHERE, SurfaceKind.PUNCTURED_SPHERE):
        return None
    return PlanarPiece(S, origin, cls)


def cofacial_boundary_pairs(C: Complex2) -> List[Tuple[tuple, tuple, tuple]]:
    """``(e1, e2, t)`` for each triangle ``t`` holding two boundary edges."""
    bnd = boundary_edges(C)
    out = []
    for t in C.triangles:
        es = [e for e in triangle_edges(t) if e in bnd]
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                out.append((es[i], es[j], t))
    return out


def _boundary_cycles(S: Complex2, ori) -> Tuple[List[List[int]], List[tuple]]:
    """Oriented boundary cycles of ``S`` with ear apexes cut out, plus the ears."""
    bnd = boundary_edges(S)
    succ = {}
    for e in bnd:
        a, b, c = ori[S.edge_index[e][0]]
        for u, w in ((a, b), (b, c), (c, a)):
            if make_edge(u, w) == e:
                succ[u] = w
    pred = {w: u for u, w in succ.items()}
    ears = []
    short = dict(succ)
    for t in S.triangles:
        es = [e for e in triangle_edges(t) if e in bnd]
        if len(es) == 2:
            y = (set(es[0]) & set(es[1])).pop()
            ears.append(t)
            short[pred[y]] = succ[y]
            del short[y]
    cycles = []
    seen = set()
    for s in sorted(short):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        cur = short[s]
        while cur != s:
            cyc.append(cur)
            seen.add(cur)
            cur = short[cur]
        cycles.append(cyc)
    return cycles, ears


def _zip(outer: Sequence[int], inner: Sequence[int]) -> List[tuple]:
    """Annulus between cycle ``outer`` and cycle ``inner``.

    ``outer`` is traversed forwards by the annulus, ``inner`` backwards, so
    the piece bounded by ``inner`` on the far side must run along it forwards.
    """
    p, q = len(outer), len(inner)
    i = j = 0
    out = []
    while i < p or j < q:
        if j == q or (i < p and i * q <= j * p):
            out.append((outer[i], outer[(i + 1) % p], inner[j % q]))
            i += 1
        else:
            out.append((inner[j], outer[i % p], inner[(j + 1) % q]))
            j += 1
    return out


def _tower(levels: int, fresh) -> Tuple[List[tuple], List[List[int]]]:
    rings = [[fresh() for _ in range(3)] for _ in range(levels + 1)]
    faces = [tuple(rings[0]), tuple(rings[-1])]
    for lo, hi in zip(rings, rings[1:]):
        for s in range(3):
            faces.append((lo[s], lo[(s + 1) % 3], hi[s]))
            faces.append((lo[(s + 1) % 3], hi[(s + 1) % 3], hi[s]))
    return faces, rings


def replace_component(C: Complex2, cofacial_pairs=None, *, fresh_start: Optional[int] = None,
                      keep: Iterable[int] = ()) -> Complex2:
    """Small planar complex with the same boundary edges and ears as ``C``.

    ``fresh_start`` is the first id used for new vertices (default: one past
    the largest vertex of ``C``); pass the host's next free id.  Interior
    vertices of ``C`` listed in ``keep`` stay in the result as interior
    vertices.  Raises NotPuncturedSphere if ``C`` cannot lie in a sphere or
    has no boundary.
    """
    piece = planar_piece(C)
    if piece is None or piece.kind.kind is not SurfaceKind.PUNCTURED_SPHERE:
        raise NotPuncturedSphere("component is not a sphere with holes, even after unpinching")
    if cofacial_pairs is not None and sorted(cofacial_pairs) != sorted(cofacial_boundary_pairs(C)):
        raise ValueError("cofacial pairs do not match the component")
    if fresh_start is None:
        fresh_start = C.max_vertex() + 1
    S, origin = piece.surface, piece.origin
    ori = orient(S)
    cycles, ears = _boundary_cycles(S, ori)
    if len(S) == 1 or any(len(c) < 3 for c in cycles):
        return C
    on_bnd = {v for e in boundary_edges(S) for v in e}
    keep = set(keep)
    inner_keep = sorted(v for v in S.vertex_index if v not in on_bnd and origin[v] in keep)

    counter = [S.max_vertex() + 1]
    first_local = counter[0]

    def fresh():
        counter[0] += 1
        return counter[0] - 1

    built: List[tuple] = []

    def collar(cyc):
        if len({origin[v] for v in cyc}) == len(cyc):
            return cyc
        ring = [fresh() for _ in cyc]
        n = len(cyc)
        for i in range(n):
            built.append((cyc[i], cyc[(i + 1) % n], ring[i]))
            built.append((ring[i], cyc[(i + 1) % n], ring[(i + 1) % n]))
        return ring

    b = len(cycles)
    if b == 1 and not inner_keep:
        cyc = collar(cycles[0])
        hub = fresh()
        built += [(cyc[i], cyc[(i + 1) % len(cyc)], hub) for i in range(len(cyc))]
    else:
        levels = 1 if b <= 2 else 2 * b - 2
        while 2 + 6 * levels - b < len(inner_keep):
            levels += 1
        faces, rings = _tower(levels, fresh)
        tower_ori = orient(Complex2(make_triangle(*f) for f in faces))
        holes = [tuple(rings[0])]
        if b >= 2:
            holes.append(tuple(rings[-1]))
        for j in range(2, b):
            lo, hi = rings[2 * j - 2], rings[2 * j - 1]
            holes.append((lo[0], lo[1], hi[0]))
        hole_keys = {make_triangle(*h) for h in holes}
        rest = sorted(make_triangle(*f) for f in faces if make_triangle(*f) not in hole_keys)
        for f, w in zip(rest, inner_keep):
            x, y, z = tower_ori[f]
            built += [(x, y, w), (y, z, w), (z, x, w)]
        built += [tower_ori[f] for f in rest[len(inner_keep):]]
        for cyc, h in zip(cycles, holes):
            x, y, z = tower_ori[make_triangle(*h)]
            built += _zip(collar(cyc), (x, z, y))

    def final(v):
        if v >= first_local:
            return fresh_start + (v - first_local)
        return origin[v]

    tris = {make_triangle(*(origin[v] for v in t)) for t in ears}
    tris.update(make_triangle(*(final(v) for v in t)) for t in built)
    out = Complex2(tris)
    _check_replacement(C, out, piece, keep)
    return out


def _check_replacement(C: Complex2, R: Complex2, piece: PlanarPiece, keep) -> None:
    if boundary_edges(R) != boundary_edges(C):
        raise AssertionError("replacement changed the boundary")
    if sorted(cofacial_boundary_pairs(R)) != sorted(cofacial_boundary_pairs(C)):
        raise AssertionError("replacement changed the cofacial boundary pairs")
    p = planar_piece(R)
    if p is None or p.kind != piece.kind:
        raise AssertionError("replacement is not a planar piece of the same type")
    missing = [v for v in keep if v in C.vertex_index and v not in R.vertex_index]
    if missing:
        raise AssertionError(f"replacement lost vertices {missing}")
