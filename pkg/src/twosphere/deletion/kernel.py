"""Kernelization and weighted compression.

After the rules every component of ``K_T`` has boundary and is a planar
piece.  A component with more than ``k`` triangles must survive in any
solution, so it can be swapped for any planar piece with the same boundary,
ears and attached vertices that still has more than ``k`` triangles.  The
weighted variant swaps every component and puts its deletion cost on the
weights instead.
"""
from __future__ import annotations

from typing import Dict, List, Set

from ..complex import Complex2, conflict_triangles, make_triangle
from .instance import DeletionInstance, WeightedInstance
from .replace import cofacial_boundary_pairs, replace_component
from .rules import REDUCED, REDUCED_WEIGHTED, KernelOutcome, components_without_conflicts, reduce_exhaustively


def _attached(C: Complex2, K: Complex2) -> Set[int]:
    """Vertices of ``C`` that also lie on triangles of ``K`` outside ``C``."""
    return {v for v in C.vertex_index if any(t not in C for t in K.vertex_index[v])}


def subdivide(C: Complex2, t: tuple, new: int) -> Complex2:
    """1-to-3 subdivision of triangle ``t`` with new vertex ``new``."""
    a, b, c = t
    tris = [s for s in C.triangles if s != t]
    tris += [make_triangle(a, b, new), make_triangle(a, c, new), make_triangle(b, c, new)]
    return Complex2(tris)


def pad(C: Complex2, target: int, next_free: int) -> Complex2:
    """Subdivide triangles away from the ears until ``C`` has > ``target`` triangles."""
    ears = {t for _, _, t in cofacial_boundary_pairs(C)}
    while len(C) <= target:
        # grow around the newest vertex so the padding stays in one spot
        top = C.max_vertex()
        t = next((s for s in C.vertex_index[top] if s not in ears), None)
        if t is None:
            t = next(s for s in C.triangles if s not in ears)
        C = subdivide(C, t, next_free)
        next_free += 1
    return C


def _swap(C: Complex2, K: Complex2, next_free: int) -> Complex2:
    """Replacement for component ``C`` of ``K``, or ``C`` itself if that is not smaller."""
    R = replace_component(C, fresh_start=next_free, keep=_attached(C, K))
    return R if len(R) < len(C) else C


def kernelize(I: DeletionInstance) -> KernelOutcome:
    """Equivalent instance with O(k^2) triangles, or a direct decision."""
    out, _ = reduce_exhaustively(I)
    if out.status != REDUCED:
        return out
    K, k = out.instance.complex, out.instance.k
    tris: List[tuple] = list(conflict_triangles(K))
    next_free = K.max_vertex() + 1
    replaced = 0
    for C in components_without_conflicts(K):
        if len(C) > k:
            R = _swap(C, K, next_free)
            if R is not C:
                # the replacement must stay too large to be deleted outright
                C = pad(R, k, max(next_free, R.max_vertex() + 1))
                replaced += 1
        next_free = max(next_free, C.max_vertex() + 1)
        tris.extend(C.triangles)
    out.instance = DeletionInstance(Complex2(tris), k)
    out.log.append({"step": "replace", "components": replaced, "triangles": len(tris)})
    return out


def compress(I: DeletionInstance) -> KernelOutcome:
    """Equivalent weighted instance with O(k) triangles and weights <= k + 1."""
    out, _ = reduce_exhaustively(I)
    if out.status != REDUCED:
        return out
    K, k = out.instance.complex, out.instance.k
    tris: List[tuple] = list(conflict_triangles(K))
    weights: Dict[tuple, int] = {}
    next_free = K.max_vertex() + 1
    for C in components_without_conflicts(K):
        R = _swap(C, K, next_free)
        next_free = max(next_free, R.max_vertex() + 1)
        # deletion cost of the whole component, capped just above the budget
        total = len(C) if len(C) <= k else max(k + 1, len(R))
        extra = total - len(R)
        if extra:
            weights[R.triangles[0]] = 1 + extra
        tris.extend(R.triangles)
    out.status = REDUCED_WEIGHTED
    out.instance = WeightedInstance(Complex2(tris), weights, k)
    out.log.append({"step": "compress", "triangles": len(tris)})
    return out
