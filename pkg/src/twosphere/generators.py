"""Seeded random complexes for tests, benchmarks and the CLI."""
from __future__ import annotations

import random
from typing import Optional

from .complex import Complex2, SurfaceKind, classify_surface, make_triangle
from .search.patterns import TETRAHEDRON


def random_sphere(rng: random.Random, triangles: int) -> Complex2:
    """Random sphere with ``triangles`` triangles (random vertex splits)."""
    if triangles < 4 or triangles % 2:
        raise ValueError("a sphere has an even number >= 4 of triangles")
    tris = set(TETRAHEDRON.triangles)
    star = {v: {t for t in tris if v in t} for v in range(4)}
    nxt = 4
    while len(tris) < triangles:
        v = rng.randrange(nxt)
        cyc = _link_cycle(v, star[v])
        i, j = sorted(rng.sample(range(len(cyc) - 1), 2))
        w = nxt
        nxt += 1
        moved = [make_triangle(v, cyc[m], cyc[m + 1]) for m in range(i, j)]
        added = [make_triangle(w, cyc[m], cyc[m + 1]) for m in range(i, j)]
        added += [make_triangle(v, w, cyc[i]), make_triangle(v, w, cyc[j])]
        star[w] = set()
        for t in moved:
            tris.discard(t)
            for u in t:
                star[u].discard(t)
        for t in added:
            tris.add(t)
            for u in t:
                star[u].add(t)
    return Complex2(tris)


def _link_cycle(v, star):
    """Link of ``v`` in a closed surface, as a vertex list with the start repeated."""
    nbr = {}
    for t in star:
        a, b = [u for u in t if u != v]
        nbr.setdefault(a, []).append(b)
        nbr.setdefault(b, []).append(a)
    start = min(nbr)
    cyc, prev, cur = [start], None, start
    while True:
        nxt = nbr[cur][0] if nbr[cur][0] != prev else nbr[cur][1]
        if nxt == start:
            break
        cyc.append(nxt)
        prev, cur = cur, nxt
    return cyc + [start]


def _fin(rng, tris, verts, fresh):
    e = rng.choice(sorted({(a, b) for t in tris for a, b in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))}))
    if rng.random() < 0.5:
        others = [v for v in verts if v not in e]
        if others:
            x = rng.choice(others)
            t = make_triangle(e[0], e[1], x)
            if t not in tris:
                return [t]
    return [make_triangle(e[0], e[1], fresh())]


def random_glued_complex(seed: int, max_triangles: int = 16, conflict_density: float = 0.5,
                         hole_rate: float = 0.3) -> Complex2:
    """Random sphere plus glued fins, glued tetrahedra and removed triangles.

    ``conflict_density`` is the probability that an added triangle is glued
    onto an existing edge (raising its multiplicity) rather than placed on
    arbitrary existing vertices.  ``hole_rate`` is the chance of deleting a
    triangle of the base sphere at each step.
    """
    rng = random.Random(seed)
    base = rng.choice([t for t in (4, 6, 8, 10, 12) if t <= max(4, max_triangles - 2)])
    S = random_sphere(rng, base)
    pool = list(range(3 * max_triangles + 6))
    rng.shuffle(pool)
    S = S.relabel(lambda v: pool[v])
    tris = set(S.triangles)
    used = set(pool[:len(S.vertex_index)])
    spare = [v for v in pool if v not in used]

    def fresh():
        v = spare.pop()
        used.add(v)
        return v

    steps = rng.randint(0, max(0, max_triangles - len(tris)))
    for _ in range(steps):
        room = max_triangles - len(tris)
        if room <= 0:
            break
        r = rng.random()
        if r < hole_rate and len(tris) > 4:
            tris.discard(rng.choice(sorted(tris)))
        elif r < hole_rate + conflict_density * (1 - hole_rate):
            if room >= 4 and rng.random() < 0.3 and len(spare) >= 2:
                # a tetrahedron sharing one edge with the complex
                a, b = rng.choice(sorted({(t[0], t[1]) for t in tris}))
                x, y = fresh(), fresh()
                new = {make_triangle(a, b, x), make_triangle(a, b, y),
                       make_triangle(a, x, y), make_triangle(b, x, y)}
                tris |= new
            else:
                tris.update(_fin(rng, tris, sorted(used), fresh))
        else:
            vs = sorted(used)
            a, b, c = rng.sample(vs, 3)
            tris.add(make_triangle(a, b, c))
    return Complex2(tris)


def random_dense_complex(seed: int, vertices: int = 6, triangles: int = 12) -> Complex2:
    """Uniformly random set of triangles on a small vertex set."""
    rng = random.Random(seed)
    allt = [make_triangle(a, b, c) for a in range(vertices)
            for b in range(a + 1, vertices) for c in range(b + 1, vertices)]
    return Complex2(rng.sample(allt, min(triangles, len(allt))))


def random_complex(seed: int, max_triangles: int = 14, conflict_density: float = 0.5) -> Complex2:
    """Mix of glued and dense random complexes, chosen by the seed."""
    rng = random.Random(seed ^ 0x5EED)
    if rng.random() < 0.25:
        n = rng.randint(5, 7)
        return random_dense_complex(seed, n, rng.randint(4, max_triangles))
    return random_glued_complex(seed, max_triangles, conflict_density)


def plant_sphere(host: Complex2, sphere: Complex2, rng: random.Random,
                 share: Optional[int] = None) -> Complex2:
    """Add a relabelled copy of ``sphere`` to ``host``, sharing a few vertices."""
    hv = list(host.vertex_index)
    share = rng.randint(0, min(2, len(hv))) if share is None else min(share, len(hv))
    shared = rng.sample(hv, share)
    top = host.max_vertex() + 1
    mapping = {}
    for i, v in enumerate(sphere.vertex_index):
        mapping[v] = shared[i] if i < len(shared) else top + i
    tris = set(host.triangles)
    tris.update(make_triangle(*(mapping[v] for v in t)) for t in sphere.triangles)
    return Complex2(tris)


def random_walled_sphere(seed: int, sphere_triangles: int = 30, region: int = 5,
                         extras: int = 2) -> Complex2:
    """Sphere with a cone glued over the boundary of a random disk region.

    The boundary edges get multiplicity three, so the sphere falls apart
    into large components with boundary once the conflict triangles are
    removed.  ``extras`` fins or tetrahedra are glued on top.
    """
    rng = random.Random(seed)
    S = random_sphere(rng, sphere_triangles)
    start = rng.choice(S.triangles)
    disk = {start}
    frontier = [start]
    while len(disk) < region and frontier:
        t = frontier.pop(rng.randrange(len(frontier)))
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            for s in S.edge_index[e]:
                if s in disk or len(disk) >= region:
                    continue
                cand = disk | {s}
                if _is_disk(cand):
                    disk = cand
                    frontier.append(s)
    counts = _edge_counts(disk)
    bnd = [e for e, c in counts.items() if c == 1]
    apex = S.max_vertex() + 1
    tris = set(S.triangles)
    tris.update(make_triangle(a, b, apex) for a, b in bnd)
    nxt = apex + 1
    for _ in range(extras):
        edges = sorted({(t[0], t[1]) for t in tris})
        a, b = rng.choice(edges)
        if rng.random() < 0.5:
            tris |= {make_triangle(a, b, nxt), make_triangle(a, b, nxt + 1),
                     make_triangle(a, nxt, nxt + 1), make_triangle(b, nxt, nxt + 1)}
            nxt += 2
        else:
            tris.add(make_triangle(a, b, nxt))
            nxt += 1
    return Complex2(tris)


def _edge_counts(tris):
    out = {}
    for t in tris:
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            out[e] = out.get(e, 0) + 1
    return out


def _is_disk(tris) -> bool:
    cls = classify_surface(Complex2(tris))
    return cls.kind is SurfaceKind.PUNCTURED_SPHERE and cls.boundary_cycles == 1
