"""Exact solvers for the triangle-deletion problem (unit or weighted costs)."""
from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Optional

from ..complex import Complex2, conflict_triangles, edge_connected_components, is_sphere, triangle_edges
from ..errors import GuardExceeded, OracleTooLarge
from .instance import DeletionOutcome, is_valid_deletion
from .rules import free_edge_cascade


def _finish(instance, deleted: Optional[List[tuple]], stats: Dict) -> DeletionOutcome:
    if deleted is None:
        return DeletionOutcome(False, stats=stats)
    deleted = tuple(sorted(deleted))
    if not is_valid_deletion(instance, deleted):
        raise AssertionError("solver produced an invalid deletion set")
    return DeletionOutcome(True, deleted, instance.cost(deleted), stats)


def _keep_best_sphere(K: Complex2, instance, budget: int) -> Optional[List[tuple]]:
    """Deletions for a complex without conflict edges, or None if over budget."""
    K, removed = free_edge_cascade(K)
    comps = edge_connected_components(K)
    spheres = [C for C in comps if is_sphere(C)]
    if not spheres:
        return None
    best = max(spheres, key=lambda C: instance.cost(C.triangles))
    deleted = removed + [t for C in comps if C is not best for t in C.triangles]
    if instance.cost(deleted) > budget:
        return None
    return deleted


def solve_base_case(instance) -> DeletionOutcome:
    """Solve an instance whose edges all have multiplicity at most two."""
    K = instance.complex
    if any(len(ts) > 2 for ts in K.edge_index.values()):
        raise ValueError("base case requires edge multiplicities <= 2")
    if not K.is_pure:
        return DeletionOutcome(False)
    return _finish(instance, _keep_best_sphere(K, instance, instance.k), {})


def solve_branching(instance) -> DeletionOutcome:
    """Branch on three triangles of the lowest edge with multiplicity >= 3."""
    if not instance.complex.is_pure:
        return DeletionOutcome(False)
    stats = {"nodes": 0, "leaves": 0}

    def branch(K: Complex2, budget: int):
        stats["nodes"] += 1
        e = next((e for e, ts in K.edge_index.items() if len(ts) >= 3), None)
        if e is None:
            stats["leaves"] += 1
            return _keep_best_sphere(K, instance, budget)
        for t in K.edge_index[e][:3]:
            w = instance.weight(t)
            if w > budget:
                continue
            rest = branch(K.without([t]), budget - w)
            if rest is not None:
                return [t] + rest
        return None

    return _finish(instance, branch(instance.complex, instance.k), stats)


def solve_conflict_param(instance, cap: int = 20) -> DeletionOutcome:
    """Guess the deleted conflict triangles, then solve the base case."""
    K = instance.complex
    if not K.is_pure:
        return DeletionOutcome(False)
    T = sorted(conflict_triangles(K))
    if len(T) > cap:
        raise GuardExceeded(f"{len(T)} conflict triangles exceed the cap {cap}")
    stats = {"conflict_triangles": len(T), "guesses": 0}
    # each deleted triangle costs at least one unit
    for r in range(min(len(T), instance.k) + 1):
        for D in combinations(T, r):
            c = instance.cost(D)
            if c > instance.k:
                continue
            stats["guesses"] += 1
            rest = K.without(D)
            if any(len(ts) >= 3 for ts in rest.edge_index.values()):
                continue
            more = _keep_best_sphere(rest, instance, instance.k - c)
            if more is not None:
                return _finish(instance, list(D) + more, stats)
    return _finish(instance, None, stats)


def brute_force_deletion(instance, guard: int = 18) -> DeletionOutcome:
    """Reference answer: try deletion sets in increasing size."""
    K = instance.complex
    n = len(K)
    if n > guard or instance.k > guard:
        raise OracleTooLarge(f"{n} triangles / budget {instance.k} exceed the oracle guard {guard}")
    if not K.is_pure:
        return DeletionOutcome(False)
    tris = K.triangles
    eid: Dict[tuple, int] = {}
    tri_edges = [[eid.setdefault(e, len(eid)) for e in triangle_edges(t)] for t in tris]
    total = [0] * len(eid)
    for es in tri_edges:
        for e in es:
            total[e] += 1
    for r in range(min(n, instance.k) + 1):
        for D in combinations(range(n), r):
            gone = [tris[i] for i in D]
            if instance.cost(gone) > instance.k:
                continue
            count = list(total)
            for i in D:
                for e in tri_edges[i]:
                    count[e] -= 1
            if any(c not in (0, 2) for c in count):
                continue
            if is_sphere(K.without(gone)):
                return _finish(instance, gone, {})
    return DeletionOutcome(False)
