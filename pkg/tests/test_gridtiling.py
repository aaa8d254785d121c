import pytest
from hypothesis import given, settings, strategies as st

from twosphere.complex import (Complex2, SurfaceKind, boundary_edges, classify_surface,
                               euler_characteristic, is_sphere, triangle_edges)
from twosphere.errors import GuardExceeded, SelectionOutOfSet
from twosphere.gridtiling import (GridTilingInstance, all_selections, assemble_solution, assembled_stats,
                                  build_square_gadget, generate_reduction, is_grid_tiling_solution,
                                  random_grid_tiling, solution_counts, solve_grid_tiling)


def gt(n, k, sets):
    return GridTilingInstance(n, k, {t: frozenset(s) for t, s in sets.items()})


def full(n, k):
    every = {(a, b) for a in range(1, n + 1) for b in range(1, n + 1)}
    return gt(n, k, {(i, j): every for i in range(1, k + 1) for j in range(1, k + 1)})


# -- instances -----------------------------------------------------------------

def test_instance_validation():
    with pytest.raises(ValueError):
        gt(2, 1, {(1, 1): set()})
    with pytest.raises(ValueError):
        gt(2, 1, {(1, 1): {(3, 1)}})
    with pytest.raises(ValueError):
        gt(2, 1, {(1, 1): {(1, 1)}, (2, 1): {(1, 1)}})
    G = gt(2, 1, {(1, 1): [(1, 2), (1, 2)]})
    assert G.size() == 1 and G.tiles() == [(1, 1)]


# -- gadget --------------------------------------------------------------------

def test_gadget_counts():
    sq = build_square_gadget()
    K = sq.complex
    assert (len(K.vertices), len(K.edges), len(K)) == (13, 28, 16)
    assert euler_characteristic(K) == 1
    assert classify_surface(K).kind is SurfaceKind.PUNCTURED_SPHERE


def test_gadget_centre_and_boundary():
    sq = build_square_gadget()
    K = sq.complex
    bnd = boundary_edges(K)
    at_centre = [t for t in K.triangles if sq.center in t]
    assert len(at_centre) == 8
    for t in K.triangles:
        held = [e for e in triangle_edges(t) if e in bnd]
        assert len(held) <= 1
        assert not (held and sq.center in t)
    sides = {tuple(sorted(e)) for p in (sq.left, sq.top, sq.right, sq.bottom) for e in zip(p, p[1:])}
    assert sides == bnd and len(bnd) == 8


def test_gadget_side_orientation():
    sq = build_square_gadget()
    assert sq.left[0] == sq.top[0] and sq.top[2] == sq.right[0]
    assert sq.left[2] == sq.bottom[0] and sq.bottom[2] == sq.right[2]


# -- reduction -------------------------------------------------------------------

def test_single_tile_is_sphere():
    R = generate_reduction(gt(1, 1, {(1, 1): {(1, 1)}}))
    assert len(R.complex) == 24 and R.k_prime == 24
    assert is_sphere(R.complex)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_full_solution_counts(k):
    G = full(1, k)
    R = generate_reduction(G)
    sel = solve_grid_tiling(G)
    S = Complex2(assemble_solution(R, sel))
    assert is_sphere(S)
    assert assembled_stats(R, sel) == solution_counts(k)
    assert len(S) == R.k_prime == 16 * k * k + 8 * k


def test_counts_at_two():
    assert solution_counts(2) == (42, 120, 80, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), st.integers(1, 3))
def test_triangle_count(seed, n, k):
    G = random_grid_tiling(seed, n, k, 0.5)
    R = generate_reduction(G)
    assert len(R.complex) == 16 * G.size() + 8 * k
    assert len(R.back_sheet) == 8 * k
    assert R.k_prime == 16 * k * k + 8 * k
    squares = list(R.tile_square_index.values())
    assert all(len(s) == 16 for s in squares)
    assert sum(len(s) for s in squares) + len(R.back_sheet) == len(R.complex)


def test_determinism():
    G = random_grid_tiling(4, 3, 2, 0.5)
    a, b = generate_reduction(G), generate_reduction(G)
    assert a.ordered_triangles() == b.ordered_triangles()
    assert a.square_ranges() == b.square_ranges()
    assert random_grid_tiling(4, 3, 2, 0.5) == G


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_multiplicities(seed):
    G = random_grid_tiling(seed, 3, 2, 0.5)
    R = generate_reduction(G)
    K = R.complex
    owner = {}
    for key, tris in R.tile_square_index.items():
        own = Complex2(tris)
        for e, ts in own.edge_index.items():
            # inside one copy: interior edges twice, sides once
            assert len(ts) in (1, 2)
            owner.setdefault(e, []).append(key)
    back = Complex2(R.back_sheet)
    for e, keys in owner.items():
        tiles = {(i, j) for _, _, i, j in keys}
        if len(tiles) == 2:
            (i1, j1), (i2, j2) = sorted(tiles)
            if i1 == i2:      # neighbours in a row share the first coordinate
                vals = {a for a, _, _, _ in keys}
                (v,) = vals
                expect = sum(1 for t in tiles for p in G.sets[t] if p[0] == v)
            else:
                vals = {b for _, b, _, _ in keys}
                (v,) = vals
                expect = sum(1 for t in tiles for p in G.sets[t] if p[1] == v)
            assert len(keys) == expect
        extra = len(back.edge_index.get(e, ()))
        per_copy = sum(1 for key in keys for t in R.tile_square_index[key] if set(e) <= set(t))
        assert len(K.edge_index[e]) == per_copy + extra


# -- assembly ----------------------------------------------------------------------

def test_mismatch_is_not_a_sphere():
    G = full(2, 2)
    R = generate_reduction(G)
    sel = {(1, 1): (1, 1), (1, 2): (2, 1), (2, 1): (1, 1), (2, 2): (1, 1)}
    assert not is_grid_tiling_solution(G, sel)
    S = Complex2(assemble_solution(R, sel))
    cls = classify_surface(S)
    assert cls.kind is not SurfaceKind.SPHERE and boundary_edges(S)
    assert (cls.kind, cls.boundary_cycles) == (SurfaceKind.PUNCTURED_SPHERE, 1)


def test_selection_out_of_set():
    G = gt(2, 1, {(1, 1): {(1, 1)}})
    R = generate_reduction(G)
    with pytest.raises(SelectionOutOfSet):
        assemble_solution(R, {(1, 1): (2, 2)})
    with pytest.raises(SelectionOutOfSet):
        assemble_solution(R, {})


# -- solving -----------------------------------------------------------------------

def test_solver_examples():
    G = gt(3, 2, {(1, 1): {(1, 3), (2, 2)}, (1, 2): {(1, 1), (2, 3)},
                  (2, 1): {(3, 3), (1, 2)}, (2, 2): {(1, 3), (3, 1)}})
    sel = solve_grid_tiling(G)
    assert sel == {(1, 1): (1, 3), (1, 2): (1, 1), (2, 1): (3, 3), (2, 2): (3, 1)}
    assert is_grid_tiling_solution(G, sel)

    assert solve_grid_tiling(gt(3, 1, {(1, 1): {(3, 1), (2, 2)}})) == {(1, 1): (2, 2)}

    G = gt(2, 2, {(1, 1): {(1, 1)}, (1, 2): {(2, 2)}, (2, 1): {(1, 1)}, (2, 2): {(1, 1)}})
    assert solve_grid_tiling(G) is None


def test_solver_guard():
    with pytest.raises(GuardExceeded):
        solve_grid_tiling(full(5, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([None, "yes", "no"]))
def test_solver_matches_enumeration(seed, force):
    G = random_grid_tiling(seed, 3, 2, 0.3, force=force)
    sel = solve_grid_tiling(G)
    sols = [s for s in all_selections(G) if is_grid_tiling_solution(G, s)]
    assert (sel is not None) == bool(sols)
    if sols:
        first = min(sols, key=lambda s: [s[t] for t in G.tiles()])
        assert sel == first
    if force == "yes":
        assert sel is not None
    if force == "no":
        assert sel is None
