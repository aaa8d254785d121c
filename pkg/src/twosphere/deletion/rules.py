"""Reduction rules for the triangle-deletion problem.

``T`` is the set of conflict triangles (those on an edge of multiplicity at
least three) and ``K_T`` the complex without them.  Every component of
``K_T`` survives a solution either completely or not at all, since its
interior edges have multiplicity exactly two in ``K``.

1. Drop triangles with a free edge, one budget unit each (cascading).
2. Reject if ``|T| > 7k``.
3. A component of ``K_T`` without boundary either is the answer or goes.
4. A component with boundary that cannot lie in any sphere goes.

Rule 4 tests "can lie in a sphere" on the unpinched component (vertices
split per link component); a component pinched at a vertex may still sit in
a sphere, so rejecting every non-disk would be wrong.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from ..complex import (Complex2, boundary_edges, conflict_triangles,
                       edge_connected_components, is_sphere, triangle_edges)
from .instance import DeletionInstance, WeightedInstance
from .replace import planar_piece

YES = "yes"
NO = "no"
REDUCED = "reduced"
REDUCED_WEIGHTED = "reduced-weighted"


@dataclass
class KernelOutcome:
    """Decided (``status`` yes/no) or reduced to an equivalent ``instance``.

    For a yes decision ``certificate`` lists the triangles of the *input* to
    delete.  ``log`` records each rule application in order.
    """
    status: str
    instance: Optional[Union[DeletionInstance, WeightedInstance]] = None
    certificate: Optional[Tuple[tuple, ...]] = None
    log: List[dict] = field(default_factory=list)

    @property
    def decided(self) -> Optional[bool]:
        if self.status == YES:
            return True
        if self.status == NO:
            return False
        return None

    def to_json(self) -> dict:
        d = {"status": self.status, "log": self.log}
        if self.certificate is not None:
            d["certificate"] = [list(t) for t in self.certificate]
        if self.instance is not None:
            d["k"] = self.instance.k
            d["triangles"] = len(self.instance.complex)
        return d


def free_edge_cascade(K: Complex2) -> Tuple[Complex2, List[tuple]]:
    """Remove triangles with an edge of multiplicity one until none is left."""
    alive = set(K.triangles)
    mult = {e: len(ts) for e, ts in K.edge_index.items()}
    removed = []
    stack = [t for t in K.triangles if any(mult[e] == 1 for e in triangle_edges(t))]
    while stack:
        t = stack.pop()
        if t not in alive:
            continue
        alive.discard(t)
        removed.append(t)
        for e in triangle_edges(t):
            mult[e] -= 1
            if mult[e] == 1:
                stack.extend(s for s in K.edge_index[e] if s in alive)
    removed.sort()
    return Complex2(alive), removed


def components_without_conflicts(K: Complex2) -> List[Complex2]:
    T = conflict_triangles(K)
    return edge_connected_components(K.without(T))


# -- rule cores on (complex, budget); the budget may go negative --------------

def _rule3(K: Complex2, k: int):
    """Returns ("yes", kept sphere) or (K', k', removed)."""
    removed = []
    for C in components_without_conflicts(K):
        if boundary_edges(C):
            continue
        if is_sphere(C) and len(K) - len(C) <= k:
            return YES, C
        removed.extend(C.triangles)
    if removed:
        K = K.without(removed)
    return K, k - len(removed), removed


def _rule4(K: Complex2, k: int):
    removed = []
    for C in components_without_conflicts(K):
        if boundary_edges(C) and planar_piece(C) is None:
            removed.extend(C.triangles)
    if removed:
        K = K.without(removed)
    return K, k - len(removed), removed


# -- public single-rule entry points ------------------------------------------

def apply_rule_1(I: DeletionInstance) -> Tuple[DeletionInstance, int]:
    """Exhaustive free-edge deletion.

    Returns the reduced instance and the number of deleted triangles.  When
    that number exceeds ``I.k`` the input is a no-instance; the returned
    budget is then clamped to 0.
    """
    K, removed = free_edge_cascade(I.complex)
    return DeletionInstance(K, max(I.k - len(removed), 0)), len(removed)


def apply_rule_2(I: DeletionInstance) -> KernelOutcome:
    t = len(conflict_triangles(I.complex))
    if t > 7 * I.k:
        return KernelOutcome(NO, log=[{"rule": 2, "conflict_triangles": t}])
    return KernelOutcome(REDUCED, I)


def apply_rule_3(I: DeletionInstance) -> KernelOutcome:
    res = _rule3(I.complex, I.k)
    if res[0] == YES:
        kept = res[1]
        cert = tuple(t for t in I.complex.triangles if t not in kept)
        return KernelOutcome(YES, certificate=cert, log=[{"rule": 3, "sphere": len(kept)}])
    K, k, removed = res
    log = [{"rule": 3, "deleted": len(removed)}] if removed else []
    if k < 0:
        return KernelOutcome(NO, log=log)
    return KernelOutcome(REDUCED, DeletionInstance(K, k), log=log)


def apply_rule_4(I: DeletionInstance) -> DeletionInstance:
    """Delete components that cannot be part of a sphere.

    The budget is clamped at 0; compare sizes to detect a no-instance.
    """
    K, k, _ = _rule4(I.complex, I.k)
    return DeletionInstance(K, max(k, 0))


def reduce_exhaustively(I: DeletionInstance):
    """Run Rules 1-4 in order, restarting after any change.

    Returns ``(outcome, removed)``: ``outcome`` is decided, or reduced with
    ``removed`` listing the input triangles deleted on the way.
    """
    log: List[dict] = []
    K, k = I.complex, I.k
    if not K.is_pure:
        # loose edges or vertices can never be removed by deleting triangles
        return KernelOutcome(NO, log=[{"rule": "loose-simplices"}]), []
    removed: List[tuple] = []

    def no():
        return KernelOutcome(NO, log=log), removed

    while True:
        K, r1 = free_edge_cascade(K)
        if r1:
            k -= len(r1)
            removed += r1
            log.append({"rule": 1, "deleted": len(r1)})
        if k < 0 or not K.triangles:
            return no()
        t = len(conflict_triangles(K))
        if t > 7 * k:
            log.append({"rule": 2, "conflict_triangles": t})
            return no()
        res = _rule3(K, k)
        if res[0] == YES:
            kept = res[1]
            log.append({"rule": 3, "sphere": len(kept)})
            cert = tuple(sorted(set(removed) | (K.triangle_set - kept.triangle_set)))
            return KernelOutcome(YES, certificate=cert, log=log), removed
        K, k, r3 = res
        if r3:
            removed += r3
            log.append({"rule": 3, "deleted": len(r3)})
            if k < 0:
                return no()
            continue
        K, k, r4 = _rule4(K, k)
        if r4:
            removed += r4
            log.append({"rule": 4, "deleted": len(r4)})
            if k < 0:
                return no()
            continue
        return KernelOutcome(REDUCED, DeletionInstance(K, k), log=log), removed
