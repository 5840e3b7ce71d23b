import random

import pytest
from hypothesis import given, settings, strategies as st

from figdata import BEAD, FOX, TREFOIL
from wildmosaic.generate import random_child, random_kind, two_vertex_tree
from wildmosaic.grid import Kind, Tile, boundary_profile, components, mosaic, violations
from wildmosaic.transforms import (
    D4, F, IDENTITY, R, ConnectionMismatch, D4Element, DimensionError, EmbedError, EmbedSpec,
    UnsupportedArity, boundary_adjust, boundary_points, d4_act, embed, embedded_position,
    is_adjusted, map_index, side_map, tile_map, zoom, zoom_position,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_group_names_and_parse():
    assert [g.name for g in D4] == ["e", "r", "r2", "r3", "f", "rf", "r2f", "r3f"]
    for g in D4:
        assert D4Element.parse(str(g)) == g
        assert g * g.inverse() == IDENTITY
    with pytest.raises(ValueError):
        D4Element.parse("s")


def test_relations():
    assert R**4 == IDENTITY
    assert F * R * F == R**3
    assert len(set(D4)) == 8


def test_r_moves_index_clockwise_on_screen():
    # (1,1) is the NW corner; r carries it to the NE corner
    assert map_index(R, 4, (1, 1)) == (1, 4)
    assert map_index(F, 4, (1, 3)) == (3, 1)
    assert side_map(R)["N"] == "E"
    assert side_map(F)["N"] == "W"


def test_tile_maps_follow_side_maps():
    for g in D4:
        sm = side_map(g)
        for t in Tile:
            if t.is_crossing:
                continue
            u = tile_map(g)[t]
            assert {frozenset(sm[s] for s in arc) for arc in t.arcs} == {frozenset(arc) for arc in u.arcs}


def test_crossings_under_generators():
    assert tile_map(F)[Tile.T9] == Tile.T9
    assert tile_map(R)[Tile.T9] == Tile.T10
    assert tile_map(F)[Tile.B_EW] == Tile.B_NS


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(2, 7))
def test_action_is_a_left_action(seed, n):
    rng = random.Random(seed)
    M = random_kind(rng, "tangle", n)
    g, h = rng.choice(D4), rng.choice(D4)
    assert d4_act(g, d4_act(h, M)) == d4_act(g * h, M)
    assert d4_act(g.inverse(), d4_act(g, M)) == M


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 6))
def test_action_preserves_crossing_count_and_validity(seed, n):
    rng = random.Random(seed)
    M = random_kind(rng, "tangle", n)
    g = rng.choice(D4)
    out = d4_act(g, M)
    assert out.crossing_count() == M.crossing_count()
    assert not violations(out, Kind.TANGLE)
    assert len(components(out)) == len(components(M))


def test_zoom_examples():
    assert zoom(1, TREFOIL) == TREFOIL
    Z = zoom(3, TREFOIL)
    assert Z.dim == 12 and Z.kind == Kind.KNOT
    assert Z[5, 5] == TREFOIL[2, 2]
    with pytest.raises(ValueError):
        zoom(2, TREFOIL)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 5), st.sampled_from([1, 3, 5]))
def test_zoom_keeps_components(seed, n, p):
    M = random_kind(random.Random(seed), "tangle", n)
    Z = zoom(p, M)
    assert [c.closed for c in components(Z)] == [c.closed for c in components(M)]
    assert Z.crossing_count() == M.crossing_count()


def test_embed_rejects_bad_targets():
    with pytest.raises(EmbedError):
        embed(FOX, BEAD, EmbedSpec(1, 1))
    with pytest.raises(DimensionError):
        embed(mosaic([[5, 5], [0, 0]]), BEAD, EmbedSpec(2, 2))
    with pytest.raises(ConnectionMismatch):
        embed(FOX, BEAD, EmbedSpec(2, 2, R))


def test_embed_with_orientation():
    rotated = d4_act(R.inverse(), FOX)
    assert embed(rotated, BEAD, EmbedSpec(2, 2, R)) == embed(FOX, BEAD, EmbedSpec(2, 2))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_embedded_positions_track_child_tiles(seed):
    rng = random.Random(seed)
    tm = two_vertex_tree(rng)
    parent, child, spec = tm.mosaics["root"], tm.mosaics["leaf"], tm.edges["leaf"]
    W = embed(child, parent, spec)
    for p in child.inf_positions:
        q = embedded_position(child.dim, spec, p)
        assert W[q] == tile_map(spec.sigma)[child[p]]
    for p in parent.inf_positions:
        if p != spec.pos:
            assert W[zoom_position(child.dim, p)] == parent[p]


def test_spec_parse():
    assert EmbedSpec.parse("(2,3,rf)") == EmbedSpec(2, 3, D4Element(1, 1))
    assert EmbedSpec.parse("2,2") == EmbedSpec(2, 2, IDENTITY)
    assert str(EmbedSpec(1, 2, R)) == "(1,2,r)"


def test_adjust_two_points():
    T = mosaic([[2, 1], [6, 6]])
    assert boundary_points(T) == [("S", 2), ("S", 1)]
    res = boundary_adjust(T)
    assert is_adjusted(res.mosaic) and res.mosaic.dim % 2 == 1
    assert res.mosaic.crossing_count() == 0
    assert len(res.routes) == 2


def test_adjust_keeps_an_adjusted_tangle():
    assert boundary_adjust(FOX).mosaic == FOX
    assert boundary_adjust(FOX, min_dim=7).mosaic.dim >= 7


def test_adjust_arity():
    with pytest.raises(UnsupportedArity):
        boundary_adjust(mosaic([[6, 6, 6]] * 3))
    with pytest.raises(ValueError):
        boundary_adjust(TREFOIL)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(["NS", "EW", "NSEW"]), st.sampled_from(D4), st.sampled_from([3, 5]))
def test_random_child_fits(seed, conn, sigma, m):
    child, _ = random_child(random.Random(seed), set(conn), sigma, m)
    prof = boundary_profile(d4_act(sigma, child))
    mid = (m - 1) // 2
    for side in "NESW":
        flags = prof.side(side)
        assert flags == tuple(side in conn and k == mid for k in range(m))
