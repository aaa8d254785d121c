import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from twosphere.complex import Complex2, build_complex, euler_characteristic, is_sphere
from twosphere.errors import InvalidBudget, OracleTooLarge
from twosphere.generators import plant_sphere, random_complex, random_dense_complex
from twosphere.search import (AT_MOST, BACKTRACKING, COLOR_CODING, EXACTLY, TETRAHEDRON,
                              backtrack_embedding, barycentric_subdivision,
                              brute_force_sphere_subcomplex, canonical_code, check_tree_decomposition,
                              closed_core, color_coding_trials, colorful_match_once,
                              enumerate_sphere_triangulations, find_sphere_subcomplex, is_embedding,
                              skeleton_with_dims, spheres_with, tree_decomposition)

from conftest import octahedron, tetra
from oracles import (brute_rainbow, color_match, complexes_isomorphic, containment_pairs,
                     dp_triples, spheres_by_brute_force)


def disjoint_tetra_octa():
    return Complex2(tetra().triangles + octahedron(10).triangles)


# -- subdivision and skeleton ---------------------------------------------------

def test_sd_single_triangle():
    S = barycentric_subdivision(build_complex([(0, 1, 2)]))
    assert (len(S.vertices), len(S.edges), len(S)) == (7, 12, 6)


def test_sd_tetrahedron():
    S = barycentric_subdivision(tetra())
    assert (len(S.vertices), len(S.edges), len(S)) == (14, 36, 24)
    assert is_sphere(S)


def test_sd_empty():
    assert len(barycentric_subdivision(Complex2())) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_sd_preserves_euler_characteristic(seed):
    K = random_complex(seed, 12)
    S = barycentric_subdivision(K)
    assert len(S) == 6 * len(K)
    assert euler_characteristic(S) == euler_characteristic(K)


def test_skeleton_single_triangle():
    sk = skeleton_with_dims(build_complex([(0, 1, 2)]))
    assert len(sk) == 7 and len(sk.edges) == 12
    assert sk.color_counts() == (3, 3, 1)


def test_skeleton_two_triangles_sharing_an_edge():
    K = build_complex([(0, 1, 2), (1, 2, 3)])
    sk = skeleton_with_dims(K)
    # oracle: 4 + 5 + 2 simplices, 10 + 6 + 6 containments
    assert containment_pairs(K) == (11, 22)
    assert (len(sk), len(sk.edges)) == (11, 22)


def test_skeleton_tetrahedron_colours():
    assert skeleton_with_dims(tetra()).color_counts() == (4, 6, 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_skeleton_matches_containment_and_subdivision(seed):
    K = random_complex(seed, 10)
    sk = skeleton_with_dims(K)
    assert (len(sk), len(sk.edges)) == containment_pairs(K)
    for a, b in sk.edges:
        sa, sb = set(sk.simplices[a]), set(sk.simplices[b])
        assert sa < sb or sb < sa
    for s, c in sk.vertices:
        assert c == len(s) - 1
    if K.is_pure:
        assert len(barycentric_subdivision(K).edges) == len(sk.edges)


# -- tree decompositions -------------------------------------------------------

def test_td_single_triangle():
    sk = skeleton_with_dims(build_complex([(0, 1, 2)]))
    td = tree_decomposition(sk)
    assert td.width <= 3
    assert check_tree_decomposition(sk, td) == []


def test_td_path():
    g = nx.path_graph(5)
    td = tree_decomposition(g)
    assert td.width == 1 and check_tree_decomposition(g, td) == []


def test_td_empty():
    td = tree_decomposition(nx.Graph())
    assert td.bags == (frozenset(),) and td.width == -1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_td_valid_on_random_skeletons(seed):
    sk = skeleton_with_dims(random_complex(seed, 12))
    assert check_tree_decomposition(sk, tree_decomposition(sk)) == []


def test_td_checker_catches_missing_edge():
    g = nx.path_graph(3)
    from twosphere.search.treedecomp import TreeDecomposition
    bad = TreeDecomposition((frozenset({0, 1}), frozenset({2})), ((0, 1),))
    assert check_tree_decomposition(g, bad)


# -- sphere patterns -----------------------------------------------------------

@pytest.mark.parametrize("top, count", [(4, 1), (6, 2), (8, 4)])
def test_enumeration_counts(top, count):
    pats = enumerate_sphere_triangulations(top)
    assert len(pats) == count
    assert all(is_sphere(P) for P in pats)
    assert len({canonical_code(P) for P in pats}) == count


@pytest.mark.parametrize("n", [4, 5, 6])
def test_enumeration_matches_brute_force(n):
    assert len(spheres_with(2 * n - 4)) == spheres_by_brute_force(n)


def test_enumeration_pairwise_non_isomorphic_by_bijection():
    pats = spheres_with(8)
    assert not complexes_isomorphic(pats[0], pats[1])


def test_larger_counts():
    assert [len(spheres_with(t)) for t in range(4, 17, 2)] == [1, 1, 2, 5, 14, 50, 233]


def test_pattern_shape():
    for P in enumerate_sphere_triangulations(14):
        assert len(P) % 2 == 0 and len(P.vertices) == (len(P) + 4) // 2


def test_canonical_code_is_label_free():
    rng = random.Random(3)
    for P in spheres_with(10):
        perm = list(range(20))
        rng.shuffle(perm)
        assert canonical_code(P.relabel(perm)) == canonical_code(P)


# -- colour coding ---------------------------------------------------------------

def test_colorful_identity():
    sk = skeleton_with_dims(build_complex([(0, 1, 2)]))
    td = tree_decomposition(sk)
    phi = colorful_match_once(sk, sk, list(range(len(sk))), td)
    assert phi is not None and is_embedding(sk, sk, phi)


def test_colorful_single_label_fails():
    sk = skeleton_with_dims(build_complex([(0, 1, 2)]))
    assert colorful_match_once(sk, sk, [0] * len(sk), tree_decomposition(sk)) is None


def test_colorful_planted():
    rng = random.Random(5)
    host_c = plant_sphere(random_dense_complex(5, 6, 8), TETRAHEDRON, rng)
    host = skeleton_with_dims(host_c)
    pat = skeleton_with_dims(TETRAHEDRON)
    phi = backtrack_embedding(host, pat)
    coloring = [0] * len(host)
    for v, h in phi.items():
        coloring[h] = v
    found = colorful_match_once(host, pat, coloring, tree_decomposition(pat))
    assert found is not None and is_embedding(host, pat, found, coloring)


def test_dp_agrees_with_brute_force_matcher():
    for host, pat, coloring, dims in dp_triples(40):
        phi = colorful_match_once(host, pat, coloring, tree_decomposition(pat), rainbow_dims=dims)
        assert (phi is not None) == brute_rainbow(host, pat, coloring, dims)


def test_trial_count():
    assert color_coding_trials(4, 0.1) == 126


# -- subcomplex / skeleton correspondences ----------------------------------------

def test_isomorphic_iff_skeletons_isomorphic():
    rng = random.Random(11)
    agree = 0
    for i in range(40):
        n = rng.randint(4, 6)
        m = rng.randint(2, 5)
        A = random_dense_complex(rng.randrange(10 ** 6), n, m)
        if i % 2:
            perm = list(range(n))
            rng.shuffle(perm)
            B = A.relabel(perm)
        else:
            B = random_dense_complex(rng.randrange(10 ** 6), n, m)
        via_complex = complexes_isomorphic(A, B)
        via_skeleton = nx.is_isomorphic(skeleton_with_dims(A).to_networkx(),
                                        skeleton_with_dims(B).to_networkx(), node_match=color_match)
        assert via_complex == via_skeleton
        agree += via_complex
    assert 0 < agree < 40


def has_isomorphic_subcomplex(host, P):
    for subset in itertools.combinations(host.triangles, len(P)):
        if complexes_isomorphic(Complex2(subset), P):
            return True
    return False


def test_subcomplex_iff_skeleton_embedding():
    rng = random.Random(12)
    pats = [TETRAHEDRON, build_complex([(0, 1, 2), (1, 2, 3)]), build_complex([(0, 1, 2), (0, 3, 4)])]
    hits = 0
    for i in range(45):
        host = random_dense_complex(rng.randrange(10 ** 6), 5, rng.randint(3, 7))
        P = pats[i % 3]
        via_subsets = has_isomorphic_subcomplex(host, P)
        gm = GraphMatcher(skeleton_with_dims(host).to_networkx(), skeleton_with_dims(P).to_networkx(),
                          node_match=color_match)
        assert via_subsets == gm.subgraph_is_monomorphic()
        assert via_subsets == (backtrack_embedding(skeleton_with_dims(host), skeleton_with_dims(P)) is not None)
        hits += via_subsets
    assert 0 < hits < 45


# -- engine ------------------------------------------------------------------------

@pytest.mark.parametrize("engine", [BACKTRACKING, COLOR_CODING])
def test_tetrahedron_found(engine):
    out = find_sphere_subcomplex(tetra(), 4, engine=engine, seed=1)
    assert out.found and set(out.witness) == set(tetra().triangles)


def test_tetrahedron_below_four():
    assert not find_sphere_subcomplex(tetra(), 3).found
    assert not brute_force_sphere_subcomplex(tetra(), 3).found


def test_exact_mode():
    K = disjoint_tetra_octa()
    assert not find_sphere_subcomplex(K, 6, mode=EXACTLY).found
    out = find_sphere_subcomplex(K, 8, mode=EXACTLY)
    assert out.found and set(out.witness) == set(octahedron(10).triangles)
    assert not brute_force_sphere_subcomplex(K, 6, EXACTLY).found
    assert brute_force_sphere_subcomplex(K, 8, EXACTLY).found


def test_two_tetrahedra_sharing_a_vertex():
    K = Complex2(tetra().triangles + tetra(3).triangles)
    out = brute_force_sphere_subcomplex(K, 4)
    assert out.found and set(out.witness) in (set(tetra().triangles), set(tetra(3).triangles))


def test_errors():
    with pytest.raises(InvalidBudget):
        find_sphere_subcomplex(tetra(), -1)
    with pytest.raises(InvalidBudget):
        brute_force_sphere_subcomplex(tetra(), -1)
    big = Complex2(octahedron().triangles + octahedron(10).triangles + octahedron(20).triangles
                   + octahedron(30).triangles)
    with pytest.raises(OracleTooLarge):
        brute_force_sphere_subcomplex(big, 8)


def test_closed_core_drops_fins():
    K = Complex2(tetra().triangles + ((0, 1, 9), (0, 9, 10)))
    assert set(closed_core(K).triangles) == set(tetra().triangles)


def test_color_coding_deterministic():
    K = plant_sphere(random_dense_complex(3, 6, 10), octahedron(), random.Random(3))
    a = find_sphere_subcomplex(K, 8, engine=COLOR_CODING, seed=9, max_trials=40)
    b = find_sphere_subcomplex(K, 8, engine=COLOR_CODING, seed=9, max_trials=40)
    assert a.to_json() == b.to_json()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([4, 6, 8, 10]), st.sampled_from([AT_MOST, EXACTLY]))
def test_backtracking_matches_brute_force(seed, k, mode):
    K = random_complex(seed, 14)
    fast = find_sphere_subcomplex(K, k, mode)
    slow = brute_force_sphere_subcomplex(K, k, mode)
    assert fast.found == slow.found
    if fast.found:
        assert is_sphere(Complex2(fast.witness)) and set(fast.witness) <= set(K.triangles)
        assert len(fast.witness) == k if mode == EXACTLY else len(fast.witness) <= k


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_color_coding_never_false_positive(seed):
    K = random_complex(seed, 14)
    out = find_sphere_subcomplex(K, 8, engine=COLOR_CODING, seed=seed, max_trials=8)
    if out.found:
        assert is_sphere(Complex2(out.witness)) and len(out.witness) <= 8
