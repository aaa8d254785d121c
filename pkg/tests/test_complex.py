import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from twosphere.complex import (Complex2, SurfaceKind, boundary_edges, build_complex, classify_surface,
                               conflict_triangles, edge_connected_components, euler_characteristic,
                               is_sphere, link_components, orient,
                               quotient_by_vertex_identifications, unpinch)
from twosphere.errors import DegenerateTriangle, IdentificationCollapse, NotEdgeConnected
from twosphere.generators import random_complex, random_sphere

from conftest import book, mobius_strip, octahedron, seven_vertex_torus, tetra


def test_build_single_triangle():
    K = build_complex([(1, 2, 3)])
    assert (len(K.vertices), len(K.edges), len(K)) == (3, 3, 1)


def test_build_deduplicates_orderings():
    assert len(build_complex([(1, 2, 3), (3, 2, 1)])) == 1


def test_build_rejects_repeated_vertex():
    with pytest.raises(DegenerateTriangle):
        build_complex([(1, 1, 2)])


def test_build_rejects_negative_ids():
    with pytest.raises(DegenerateTriangle):
        build_complex([(-1, 2, 3)])


@pytest.mark.parametrize("K, chi", [(tetra(1), 2), (build_complex([(0, 1, 2)]), 1), (octahedron(), 2)])
def test_euler_characteristic(K, chi):
    assert euler_characteristic(K) == chi


def test_components():
    two = Complex2(tetra().triangles + tetra(3).triangles)   # share vertex 3
    assert len(edge_connected_components(two)) == 2
    assert len(edge_connected_components(tetra())) == 1
    assert edge_connected_components(Complex2()) == []


def test_boundary_edges():
    assert boundary_edges(build_complex([(0, 1, 2)])) == {(0, 1), (0, 2), (1, 2)}
    assert boundary_edges(tetra()) == frozenset()
    assert len(boundary_edges(tetra().without([(1, 2, 3)]))) == 3


def test_conflict_triangles():
    assert conflict_triangles(tetra()) == frozenset()
    K = Complex2(tetra().triangles + ((0, 1, 9),))
    assert conflict_triangles(K) == {(0, 1, 2), (0, 1, 3), (0, 1, 9)}
    assert len(conflict_triangles(book(4))) == 4


def test_classify_examples():
    assert classify_surface(tetra()).kind is SurfaceKind.SPHERE
    disk = classify_surface(build_complex([(0, 1, 2)]))
    assert (disk.kind, disk.euler_characteristic, disk.boundary_cycles) == (SurfaceKind.PUNCTURED_SPHERE, 1, 1)
    torus = classify_surface(seven_vertex_torus())
    assert (torus.kind, torus.euler_characteristic) == (SurfaceKind.CLOSED_OTHER, 0)
    bowtie = build_complex([(0, 1, 2), (0, 3, 4)])
    with pytest.raises(NotEdgeConnected):
        classify_surface(bowtie)
    # a strip whose two ends touch at vertex 0
    pinched = build_complex([(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 3, 4)])
    assert classify_surface(pinched).kind is SurfaceKind.NOT_SURFACE
    assert classify_surface(mobius_strip()).kind is SurfaceKind.WITH_BOUNDARY_OTHER
    assert classify_surface(book(3)).kind is SurfaceKind.NOT_SURFACE
    assert classify_surface(Complex2()).kind is SurfaceKind.NOT_SURFACE


def test_seven_vertex_torus_links_are_hexagons():
    T = seven_vertex_torus()
    for v in T.vertex_index:
        (walk, cyc), = link_components(T, v)
        assert cyc and len(walk) == 6
    assert (len(T.vertices), len(T.edges), len(T)) == (7, 21, 14)


def test_annulus_is_punctured_twice():
    outer, inner = [0, 1, 2, 3], [4, 5, 6, 7]
    tris = []
    for i in range(4):
        a, b, p, q = outer[i], outer[(i + 1) % 4], inner[i], inner[(i + 1) % 4]
        tris += [(a, b, p), (b, q, p)]
    cls = classify_surface(build_complex(tris))
    assert (cls.kind, cls.boundary_cycles, cls.euler_characteristic) == (SurfaceKind.PUNCTURED_SPHERE, 2, 0)


def test_punctured_torus_is_other():
    T = seven_vertex_torus()
    cls = classify_surface(T.without([T.triangles[0]]))
    assert (cls.kind, cls.euler_characteristic) == (SurfaceKind.WITH_BOUNDARY_OTHER, -1)


def test_loose_simplices_are_not_surfaces():
    K = Complex2(tetra().triangles, loose_edges=[(7, 8)])
    assert classify_surface(K).kind is SurfaceKind.NOT_SURFACE
    assert not is_sphere(K)


def test_quotient_examples():
    K = build_complex([(1, 2, 3), (4, 5, 6)])
    assert quotient_by_vertex_identifications(K, []) == K
    with pytest.raises(IdentificationCollapse):
        quotient_by_vertex_identifications(K, [{1, 4}, {2, 5}, {3, 6}])
    Q = quotient_by_vertex_identifications(K, [{1, 4}])
    assert (len(Q), len(Q.vertices)) == (2, 5)
    with pytest.raises(IdentificationCollapse):
        quotient_by_vertex_identifications(K, [{1, 2}])


def test_unpinch_splits_bowtie():
    K = build_complex([(0, 1, 2), (0, 3, 4)])
    U, origin = unpinch(K)
    assert len(U.vertices) == 6
    assert sorted(origin.values()) == [0, 0, 1, 2, 3, 4]


def test_orient_detects_mobius():
    assert orient(mobius_strip()) is None
    ori = orient(octahedron())
    directed = Counter()
    for a, b, c in ori.values():
        directed.update([(a, b), (b, c), (c, a)])
    assert all(n == 1 for n in directed.values())


# -- properties ---------------------------------------------------------------

complexes = st.integers(0, 10_000).map(lambda s: random_complex(s, 14))


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_indices_rebuild_identically(K):
    R = Complex2(K.triangles)
    assert R.edge_index == K.edge_index and R.vertex_index == K.vertex_index
    assert sum(len(ts) for ts in K.edge_index.values()) == 3 * len(K)


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_components_partition(K):
    comps = edge_connected_components(K)
    assert sorted(t for C in comps for t in C) == list(K.triangles)
    for i, A in enumerate(comps):
        for B in comps[i + 1:]:
            assert not set(A.edge_index) & set(B.edge_index)


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_no_conflicts_means_low_multiplicity(K):
    if not conflict_triangles(K):
        assert all(len(ts) <= 2 for ts in K.edge_index.values())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([4, 6, 8, 10, 12, 14]))
def test_sphere_classification_and_relabelling(seed, t):
    rng = random.Random(seed)
    S = random_sphere(rng, t)
    perm = list(range(100))
    rng.shuffle(perm)
    R = S.relabel(perm)
    for K in (S, R):
        cls = classify_surface(K)
        assert cls.kind is SurfaceKind.SPHERE
        assert not boundary_edges(K) and euler_characteristic(K) == 2 and len(K) % 2 == 0
    holed = R.without([R.triangles[rng.randrange(len(R))]])
    cls = classify_surface(holed)
    assert (cls.kind, cls.boundary_cycles) == (SurfaceKind.PUNCTURED_SPHERE, 1)


@settings(max_examples=60, deadline=None)
@given(complexes, st.integers(0, 10_000))
def test_classification_invariant_under_relabelling(K, seed):
    rng = random.Random(seed)
    perm = list(range(200))
    rng.shuffle(perm)
    R = K.relabel(perm)
    kinds = sorted((c.kind.value, c.euler_characteristic) for c in map(classify_surface, edge_connected_components(K)))
    kinds_r = sorted((c.kind.value, c.euler_characteristic) for c in map(classify_surface, edge_connected_components(R)))
    assert kinds == kinds_r


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_sphere_kind_implies_closed(K):
    for C in edge_connected_components(K):
        if classify_surface(C).is_sphere:
            assert not boundary_edges(C) and euler_characteristic(C) == 2
            assert len(C) >= 4 and len(C) % 2 == 0
