"""Search for a 2-sphere subcomplex with a bounded number of triangles.

The host is reduced to triangles that can possibly lie on a closed surface
(no free edges, iterated) and split into edge-connected components.  Every
sphere triangulation of an admissible size is then matched against each
component as a dimension-coloured skeleton subgraph; the triangles hit by the
colour-2 pattern vertices form the witness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..complex import Complex2, edge_connected_components, is_sphere
from ..errors import InvalidBudget, OracleTooLarge
from .colorcoding import colorful_match_once, random_coloring
from .patterns import spheres_with
from .subdivision import ColoredSkeleton, skeleton_with_dims
from .treedecomp import tree_decomposition

AT_MOST = "at-most"
EXACTLY = "exactly"
BACKTRACKING = "backtracking"
COLOR_CODING = "color-coding"

DEFAULT_DELTA = 0.01


@dataclass
class SearchOutcome:
    found: bool
    witness: Optional[Tuple[tuple, ...]] = None
    engine: str = BACKTRACKING
    patterns_tried: int = 0
    trials: int = 0
    params: Dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "witness": [list(t) for t in self.witness] if self.witness else None,
            "engine": self.engine,
            "patterns_tried": self.patterns_tried,
            "trials": self.trials,
            "params": self.params,
        }


def admissible_sizes(k: int, mode: str, available: int) -> List[int]:
    if mode == EXACTLY:
        return [k] if k >= 4 and k % 2 == 0 and k <= available else []
    if mode != AT_MOST:
        raise ValueError(f"unknown mode {mode!r}")
    return list(range(4, min(k, available) + 1, 2))


def closed_core(K: Complex2) -> Complex2:
    """Drop triangles with a free edge until none is left."""
    alive = set(K.triangles)
    mult = {e: len(ts) for e, ts in K.edge_index.items()}
    stack = [t for t in K.triangles if any(mult[e] == 1 for e in _edges(t))]
    while stack:
        t = stack.pop()
        if t not in alive:
            continue
        alive.discard(t)
        for e in _edges(t):
            mult[e] -= 1
            if mult[e] == 1:
                for s in K.edge_index[e]:
                    if s in alive:
                        stack.append(s)
    return Complex2(alive)


def _edges(t):
    a, b, c = t
    return ((a, b), (a, c), (b, c))


# ---------------------------------------------------------------------------
# pattern cache

class _Pattern:
    __slots__ = ("complex", "skeleton", "td", "corners")

    def __init__(self, P: Complex2):
        self.complex = P
        self.skeleton = skeleton_with_dims(P)
        self.td = tree_decomposition(self.skeleton)
        self.corners = self.skeleton.colors.count(0)


_pattern_cache: Dict[int, List[_Pattern]] = {}


def _patterns(t: int) -> List[_Pattern]:
    if t not in _pattern_cache:
        _pattern_cache[t] = [_Pattern(P) for P in spheres_with(t)]
    return _pattern_cache[t]


# ---------------------------------------------------------------------------
# exact backtracking engine

def _search_order(pattern: ColoredSkeleton) -> List[int]:
    n = len(pattern)
    adj = pattern.adjacency
    start = max(range(n), key=lambda v: (pattern.colors[v], len(adj[v]), -v))
    order = [start]
    placed = {start}
    links = [0] * n
    for u in adj[start]:
        links[u] += 1
    while len(order) < n:
        v = max((u for u in range(n) if u not in placed),
                key=lambda u: (links[u], len(adj[u]), -u))
        order.append(v)
        placed.add(v)
        for u in adj[v]:
            links[u] += 1
    return order


def backtrack_embedding(host: ColoredSkeleton, pattern: ColoredSkeleton) -> Optional[Dict[int, int]]:
    """Exhaustive dimension- and degree-pruned subgraph embedding search."""
    n = len(pattern)
    if n == 0:
        return {}
    order = _search_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    back = [[u for u in pattern.adjacency[v] if pos[u] < i] for i, v in enumerate(order)]
    pdeg = [len(a) for a in pattern.adjacency]
    hdeg = [len(a) for a in host.adjacency]
    by_color = [host.by_color(c) for c in range(3)]
    hadj = host.adjacency
    phi: Dict[int, int] = {}
    used = set()

    def candidates(i):
        v = order[i]
        c = pattern.colors[v]
        prev = back[i]
        if prev:
            anchors = sorted((hadj[phi[u]] for u in prev), key=len)
            pool = [h for h in anchors[0] if all(h in a for a in anchors[1:])]
        else:
            pool = by_color[c]
        need = pdeg[v]
        return [h for h in pool if host.colors[h] == c and hdeg[h] >= need and h not in used]

    stack = [(0, iter(candidates(0)))]
    while stack:
        i, it = stack[-1]
        v = order[i]
        if v in phi:
            used.discard(phi.pop(v))
        h = next(it, None)
        if h is None:
            stack.pop()
            continue
        phi[v] = h
        used.add(h)
        if i + 1 == n:
            return dict(phi)
        stack.append((i + 1, iter(candidates(i + 1))))
    return None


# ---------------------------------------------------------------------------

def color_coding_trials(corners: int, delta: float) -> int:
    return int(math.ceil(math.exp(corners) * math.log(1.0 / delta)))


def _witness(host: ColoredSkeleton, pattern: ColoredSkeleton, phi) -> Tuple[tuple, ...]:
    return tuple(sorted(host.simplices[h] for v, h in phi.items() if pattern.colors[v] == 2))


def find_sphere_subcomplex(K: Complex2, k: int, mode: str = AT_MOST,
                           engine: str = BACKTRACKING, seed: int = 0,
                           delta: float = DEFAULT_DELTA,
                           max_trials: Optional[int] = None) -> SearchOutcome:
    """Decide whether ``K`` has a sphere subcomplex with at most (or exactly) k triangles.

    ``engine="color-coding"`` runs ``ceil(e^m ln(1/delta))`` trial colourings
    per pattern and host component, ``m`` being the pattern's vertex count;
    ``max_trials`` caps that number (the miss bound then no longer holds).
    A positive answer is always verified and never wrong.
    """
    if k < 0:
        raise InvalidBudget(f"negative budget {k}")
    if engine not in (BACKTRACKING, COLOR_CODING):
        raise ValueError(f"unknown engine {engine!r}")
    params = {"mode": mode, "k": k}
    if engine == COLOR_CODING:
        params.update(seed=seed, delta=delta, max_trials=max_trials)
    out = SearchOutcome(False, engine=engine, params=params)
    core = closed_core(K.pure_part())
    comps = [(C, skeleton_with_dims(C)) for C in edge_connected_components(core)]
    largest = max((len(C) for C, _ in comps), default=0)
    for t in admissible_sizes(k, mode, largest):
        for pi, pat in enumerate(_patterns(t)):
            out.patterns_tried += 1
            for ci, (C, host) in enumerate(comps):
                if len(C) < t:
                    continue
                if engine == BACKTRACKING:
                    phi = backtrack_embedding(host, pat.skeleton)
                else:
                    phi = _color_coding(host, pat, seed, delta, max_trials, (t, pi, ci), out)
                if phi is None:
                    continue
                witness = _witness(host, pat.skeleton, phi)
                if not is_sphere(Complex2(witness)) or len(witness) != t:
                    raise AssertionError("recovered witness is not a sphere")
                out.found = True
                out.witness = witness
                return out
    return out


def _color_coding(host, pat: _Pattern, seed, delta, max_trials, salt, out):
    n_trials = color_coding_trials(pat.corners, delta)
    if max_trials is not None:
        n_trials = min(n_trials, max_trials)
    for trial in range(n_trials):
        # colouring depends only on (seed, pattern, component, trial index)
        rng = np.random.default_rng([seed, *salt, trial])
        coloring = random_coloring(host, pat.corners, rng)
        out.trials += 1
        phi = colorful_match_once(host, pat.skeleton, coloring, pat.td, rainbow_dims=(0,))
        if phi is not None:
            return phi
    return None


def brute_force_sphere_subcomplex(K: Complex2, k: int, mode: str = AT_MOST,
                                  guard: int = 25) -> SearchOutcome:
    """Reference answer by enumerating triangle subsets in increasing size."""
    if k < 0:
        raise InvalidBudget(f"negative budget {k}")
    tris = K.pure_part().triangles
    if len(tris) > guard:
        raise OracleTooLarge(f"{len(tris)} triangles exceed the oracle guard {guard}")
    out = SearchOutcome(False, engine="brute")
    edge_id: Dict[tuple, int] = {}
    tri_edges = []
    for t in tris:
        tri_edges.append([edge_id.setdefault(e, len(edge_id)) for e in _edges(t)])
    for size in admissible_sizes(k, mode, len(tris)):
        for subset in combinations(range(len(tris)), size):
            count = [0] * len(edge_id)
            for i in subset:
                for e in tri_edges[i]:
                    count[e] += 1
            if any(c not in (0, 2) for c in count):
                continue
            cand = Complex2(tris[i] for i in subset)
            if is_sphere(cand):
                out.found = True
                out.witness = cand.triangles
                return out
    return out
