"""Complexes built from Grid Tiling instances, and a brute-force Grid Tiling solver.

Every pair ``(a, b)`` in tile ``(i, j)`` gets its own copy of a 16-triangle
square.  Square copies in neighbouring tiles that agree on ``a`` (along a
row) or on ``b`` (down a column) share their common 2-edge side, all squares
of one tile share their middle vertex, and a cone over the outer border
closes everything up.  A selection of one square per tile gives a sphere
exactly when it is a Grid Tiling solution.

Indices ``i, j, a, b`` are 1-based throughout.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, List, Mapping, Optional, Set, Tuple

from scipy.cluster.hierarchy import DisjointSet

from .complex import (Complex2, boundary_edges, euler_characteristic, make_triangle,
                      quotient_by_vertex_identifications)
from .errors import GuardExceeded, SelectionOutOfSet

Pair = Tuple[int, int]
Tile = Tuple[int, int]


@dataclass(frozen=True)
class GridTilingInstance:
    n: int
    k: int
    sets: Mapping[Tile, FrozenSet[Pair]]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        norm = {}
        for i in range(1, self.k + 1):
            for j in range(1, self.k + 1):
                s = frozenset(tuple(p) for p in self.sets.get((i, j), ()))
                if not s:
                    raise ValueError(f"tile ({i},{j}) has an empty set")
                for a, b in s:
                    if not (1 <= a <= self.n and 1 <= b <= self.n):
                        raise ValueError(f"pair {(a, b)} in tile ({i},{j}) is outside [{self.n}]x[{self.n}]")
                norm[(i, j)] = s
        extra = set(self.sets) - set(norm)
        if extra:
            raise ValueError(f"tiles outside the {self.k}x{self.k} grid: {sorted(extra)[:3]}")
        object.__setattr__(self, "sets", norm)

    def tiles(self) -> List[Tile]:
        return sorted(self.sets)

    def size(self) -> int:
        return sum(len(s) for s in self.sets.values())


# -- the square gadget ---------------------------------------------------------

@dataclass(frozen=True)
class SquareGadget:
    """A 3x3 grid of vertices ``g(r, c) = 3r + c`` plus cell centres 9..12.

    Sides are directed 2-edge paths: left and right run top to bottom, top
    and bottom run left to right.
    """
    complex: Complex2
    center: int
    left: Tuple[int, int, int]
    top: Tuple[int, int, int]
    right: Tuple[int, int, int]
    bottom: Tuple[int, int, int]
    # grid position (row, col) of each vertex; cell centres map to None
    position: Mapping[int, Optional[Tuple[int, int]]] = field(repr=False)


def build_square_gadget() -> SquareGadget:
    def g(r, c):
        return 3 * r + c

    tris = []
    position: Dict[int, Optional[Tuple[int, int]]] = {g(r, c): (r, c) for r in range(3) for c in range(3)}
    centre_id = 9
    for r in range(2):
        for c in range(2):
            corners = [g(r, c), g(r, c + 1), g(r + 1, c + 1), g(r + 1, c)]
            for s in range(4):
                tris.append(make_triangle(corners[s], corners[(s + 1) % 4], centre_id))
            position[centre_id] = None
            centre_id += 1
    sq = SquareGadget(
        complex=Complex2(tris),
        center=g(1, 1),
        left=(g(0, 0), g(1, 0), g(2, 0)),
        top=(g(0, 0), g(0, 1), g(0, 2)),
        right=(g(0, 2), g(1, 2), g(2, 2)),
        bottom=(g(2, 0), g(2, 1), g(2, 2)),
        position=position,
    )
    _check_gadget(sq)
    return sq


def _check_gadget(sq: SquareGadget) -> None:
    K = sq.complex
    if (len(K.vertices), len(K.edges), len(K)) != (13, 28, 16):
        raise AssertionError("square gadget must have 13 vertices, 28 edges, 16 triangles")
    bnd = boundary_edges(K)
    side_edges = set()
    for p in (sq.left, sq.top, sq.right, sq.bottom):
        side_edges.update(tuple(sorted(e)) for e in zip(p, p[1:]))
    if bnd != side_edges:
        raise AssertionError("gadget boundary is not the four sides")
    for t in K.triangles:
        nb = sum(1 for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])) if e in bnd)
        if nb >= 2:
            raise AssertionError(f"triangle {t} holds two boundary edges")
        if nb and sq.center in t:
            raise AssertionError(f"triangle {t} holds the centre and a boundary edge")


# -- the reduction ---------------------------------------------------------------

@dataclass(frozen=True)
class ReductionOutput:
    instance: GridTilingInstance
    complex: Complex2
    k_prime: int
    tile_square_index: Mapping[Tuple[int, int, int, int], FrozenSet[tuple]]
    back_sheet: FrozenSet[tuple]

    def ordered_triangles(self) -> List[tuple]:
        """Squares in (i, j, a, b) order, 16 triangles each, then the back sheet."""
        out = []
        for key in sorted(self.tile_square_index, key=lambda q: (q[2], q[3], q[0], q[1])):
            out.extend(sorted(self.tile_square_index[key]))
        out.extend(sorted(self.back_sheet))
        return out

    def square_ranges(self) -> List[dict]:
        rows = []
        pos = 0
        for a, b, i, j in sorted(self.tile_square_index, key=lambda q: (q[2], q[3], q[0], q[1])):
            rows.append({"i": i, "j": j, "a": a, "b": b, "first": pos, "count": 16})
            pos += 16
        return rows


def generate_reduction(G: GridTilingInstance) -> ReductionOutput:
    sq = build_square_gadget()
    k = G.k
    copies = [(a, b, i, j) for (i, j) in G.tiles() for (a, b) in sorted(G.sets[(i, j)])]
    nloc = len(sq.complex.vertices)

    def vid(q: int, local: int) -> int:
        return q * nloc + local

    index = {key: q for q, key in enumerate(copies)}
    raw_tris: Dict[Tuple[int, int, int, int], List[tuple]] = {}
    for q, key in enumerate(copies):
        raw_tris[key] = [make_triangle(*(vid(q, v) for v in t)) for t in sq.complex.triangles]

    # back sheet: border of the (2k+1) x (2k+1) position grid, coned from an apex
    base = len(copies) * nloc
    border: List[Tuple[int, int]] = []
    m = 2 * k
    border += [(0, c) for c in range(m)]
    border += [(r, m) for r in range(m)]
    border += [(m, c) for c in range(m, 0, -1)]
    border += [(r, 0) for r in range(m, 0, -1)]
    border_id = {p: base + s for s, p in enumerate(border)}
    apex = base + len(border)
    back = [make_triangle(border_id[border[s]], border_id[border[(s + 1) % len(border)]], apex)
            for s in range(len(border))]

    def side(q: int, name: str):
        return tuple(vid(q, v) for v in getattr(sq, name))

    def back_path(points):
        return tuple(border_id[p] for p in points)

    ds = DisjointSet(range(apex + 1))

    def glue(paths):
        first = paths[0]
        for p in paths[1:]:
            for u, w in zip(first, p):
                ds.merge(u, w)

    by_tile: Dict[Tile, List[Tuple[int, int, int]]] = {}
    for (a, b, i, j), q in index.items():
        by_tile.setdefault((i, j), []).append((a, b, q))
    for i in range(1, k + 1):
        for j in range(1, k):
            for a in range(1, G.n + 1):
                paths = [side(q, "right") for (x, _, q) in by_tile[(i, j)] if x == a]
                paths += [side(q, "left") for (x, _, q) in by_tile[(i, j + 1)] if x == a]
                if len(paths) > 1:
                    glue(paths)
    for i in range(1, k):
        for j in range(1, k + 1):
            for b in range(1, G.n + 1):
                paths = [side(q, "bottom") for (_, y, q) in by_tile[(i, j)] if y == b]
                paths += [side(q, "top") for (_, y, q) in by_tile[(i + 1, j)] if y == b]
                if len(paths) > 1:
                    glue(paths)
    for members in by_tile.values():
        centres = [vid(q, sq.center) for (_, _, q) in members]
        for c in centres[1:]:
            ds.merge(centres[0], c)
    for i in range(1, k + 1):
        rows = range(2 * (i - 1), 2 * i + 1)
        for (_, _, q) in by_tile[(i, 1)]:
            glue([back_path([(r, 0) for r in rows]), side(q, "left")])
        for (_, _, q) in by_tile[(i, k)]:
            glue([back_path([(r, m) for r in rows]), side(q, "right")])
    for j in range(1, k + 1):
        cols = range(2 * (j - 1), 2 * j + 1)
        for (_, _, q) in by_tile[(1, j)]:
            glue([back_path([(0, c) for c in cols]), side(q, "top")])
        for (_, _, q) in by_tile[(k, j)]:
            glue([back_path([(m, c) for c in cols]), side(q, "bottom")])

    # identified vertices must sit at the same grid position
    where: Dict[int, object] = {apex: "apex"}
    for p, v in border_id.items():
        where[v] = p
    for (a, b, i, j), q in index.items():
        for local, pos in sq.position.items():
            where[vid(q, local)] = ((2 * (i - 1) + pos[0], 2 * (j - 1) + pos[1])
                                    if pos is not None else ("cell", q, local))
    for cls in ds.subsets():
        if len({where[v] for v in cls}) > 1:
            raise AssertionError("identification mixes different grid positions")

    everything = Complex2([t for ts in raw_tris.values() for t in ts] + back)
    classes = [c for c in ds.subsets() if len(c) > 1]
    glued = quotient_by_vertex_identifications(everything, classes)
    # compact vertex ids to 0..V-1
    rep = {v: min(c) for c in ds.subsets() for v in c}
    order = sorted(glued.vertex_index)
    compact = {v: s for s, v in enumerate(order)}

    def image(t):
        return make_triangle(*(compact[rep[v]] for v in t))

    K = Complex2(image(t) for t in everything.triangles)
    squares = {key: frozenset(image(t) for t in ts) for key, ts in raw_tris.items()}
    back_sheet = frozenset(image(t) for t in back)
    if len(K) != 16 * G.size() + 8 * k:
        raise AssertionError("identifications merged triangles")
    return ReductionOutput(G, K, 16 * k * k + 8 * k, squares, back_sheet)


def assemble_solution(R: ReductionOutput, selection: Mapping[Tile, Pair]) -> Set[tuple]:
    """Triangles of the selected squares together with the back sheet."""
    G = R.instance
    out = set(R.back_sheet)
    for tile in G.tiles():
        if tile not in selection:
            raise SelectionOutOfSet(f"no pair selected for tile {tile}")
        a, b = selection[tile]
        if (a, b) not in G.sets[tile]:
            raise SelectionOutOfSet(f"pair {(a, b)} is not in the set of tile {tile}")
        out |= R.tile_square_index[(a, b, tile[0], tile[1])]
    return out


def is_grid_tiling_solution(G: GridTilingInstance, selection: Mapping[Tile, Pair]) -> bool:
    for (i, j), (a, b) in selection.items():
        if (a, b) not in G.sets[(i, j)]:
            return False
        if j < G.k and selection[(i, j + 1)][0] != a:
            return False
        if i < G.k and selection[(i + 1, j)][1] != b:
            return False
    return len(selection) == G.k * G.k


def solve_grid_tiling(G: GridTilingInstance, max_n: int = 4, max_k: int = 3) -> Optional[Dict[Tile, Pair]]:
    """Lexicographically first solution (tiles in row-major order), or None."""
    if G.n > max_n or G.k > max_k:
        raise GuardExceeded(f"n={G.n}, k={G.k} exceed the enumeration guard n<={max_n}, k<={max_k}")
    tiles = G.tiles()
    choice: Dict[Tile, Pair] = {}

    def extend(pos: int) -> bool:
        if pos == len(tiles):
            return True
        i, j = tiles[pos]
        for a, b in sorted(G.sets[(i, j)]):
            if j > 1 and choice[(i, j - 1)][0] != a:
                continue
            if i > 1 and choice[(i - 1, j)][1] != b:
                continue
            choice[(i, j)] = (a, b)
            if extend(pos + 1):
                return True
            del choice[(i, j)]
        return False

    return dict(choice) if extend(0) else None


def all_selections(G: GridTilingInstance):
    tiles = G.tiles()
    for combo in product(*(sorted(G.sets[t]) for t in tiles)):
        yield dict(zip(tiles, combo))


def random_grid_tiling(seed: int, n: int = 3, k: int = 2, density: float = 0.4,
                       force: Optional[str] = None) -> GridTilingInstance:
    """Random instance; ``force`` is "yes" (plant a solution), "no" or None."""
    rng = random.Random(seed)
    sets: Dict[Tile, Set[Pair]] = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            s = {(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if rng.random() < density}
            if not s:
                s.add((rng.randint(1, n), rng.randint(1, n)))
            sets[(i, j)] = s
    if force == "yes":
        rows = [rng.randint(1, n) for _ in range(k)]
        cols = [rng.randint(1, n) for _ in range(k)]
        for (i, j), s in sets.items():
            s.add((rows[i - 1], cols[j - 1]))
    elif force == "no":
        if n < 2 or k < 2:
            raise ValueError("a forced no-instance needs n >= 2 and k >= 2")
        # tiles (1,1) and (1,2) can never agree on their first coordinate
        a = rng.randint(1, n)
        sets[(1, 1)] = {p for p in sets[(1, 1)] if p[0] == a} or {(a, rng.randint(1, n))}
        sets[(1, 2)] = {p for p in sets[(1, 2)] if p[0] != a} or {(a % n + 1, rng.randint(1, n))}
    return GridTilingInstance(n, k, {t: frozenset(s) for t, s in sets.items()})


def solution_counts(k: int) -> Tuple[int, int, int, int]:
    """Expected (vertices, edges, triangles, Euler characteristic) of an assembled sphere."""
    return 8 * k * k + 4 * k + 2, 24 * k * k + 12 * k, 16 * k * k + 8 * k, 2


def assembled_stats(R: ReductionOutput, selection) -> Tuple[int, int, int, int]:
    S = Complex2(assemble_solution(R, selection))
    return len(S.vertices), len(S.edges), len(S), euler_characteristic(S)
