"""The ten acceptance criteria, one test each, at their stated sizes and tolerances.

Run with `pytest tests/test_acceptance.py`; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import os
import random
import sys
import time
from fractions import Fraction

import pytest

from figdata import (
    ADJUST_IN_1, ADJUST_IN_2, ADJUST_OUT_1, ADJUST_OUT_2, BEAD, CONTRACT_BEAD_KINK,
    EMBED_FOX_BEAD, FOX, FOX_F, KINK, TREFOIL, TREFOIL_R, ZOOM3_BEAD,
)
from wildmosaic import corpus_path
from wildmosaic.generate import random_kind, random_tree, two_vertex_tree, with_pattern
from wildmosaic.grid import Kind, is_suitably_connected, knot_inject, read_mosaic, tangle_inject, violations
from wildmosaic.moves import apply, catalog, replay, search_equiv
from wildmosaic.realize import crossing_signature, links, p_index_bound, place, ray_path, realize_tree, regions_and_shells
from wildmosaic.transforms import D4, F, IDENTITY, R, EmbedSpec, boundary_adjust, d4_act, embed, zoom
from wildmosaic.tree import TreeMosaic, contract, contract_all, is_star_like, read_tree, star_reduce, validate, wild_points

SEED = 20261014
TREES = sorted(f for f in os.listdir(corpus_path()) if f.endswith(".tree"))


def _kinds(rng, n):
    choices = ["knot", "tangle"] + (["rvknot", "rvtangle"] if n >= 3 else [])
    return rng.choice(choices)


def _ok(M, kind):
    return not violations(M, kind)


@pytest.mark.criterion(1, "D4 group law on 500 random mosaics, dims 2-7, exact, < 1 s")
def test_c1_d4_group_law():
    rng = random.Random(SEED + 1)
    mosaics = []
    for _ in range(500):
        n = rng.randint(2, 7)
        mosaics.append(random_kind(rng, _kinds(rng, n), n))
    t0 = time.perf_counter()
    failures = 0
    for M in mosaics:
        img = {h: d4_act(h, M) for h in D4}
        failures += img[IDENTITY] != M
        for g in D4:
            for h in D4:
                failures += d4_act(g, img[h]) != img[g * h]
    elapsed = time.perf_counter() - t0
    assert failures == 0
    assert R**4 == IDENTITY and F * F == IDENTITY and F * R * F.inverse() == R.inverse()
    assert elapsed < 1.0, f"{elapsed:.3f}s"


@pytest.mark.criterion(2, "validity closure, 1000 trials per operation")
def test_c2_validity_closure():
    rng = random.Random(SEED + 2)
    fails = {}

    def note(op, good):
        fails[op] = fails.get(op, 0) + (not good)

    for _ in range(1000):
        n = rng.randint(2, 6)
        M = random_kind(rng, rng.choice(["knot", "rvknot"]) if n >= 3 else "knot", n)
        note("knot_inject", _ok(knot_inject(M), M.kind))
        n = rng.randint(2, 6)
        T = random_kind(rng, _kinds(rng, n), n)
        note("tangle_inject", is_suitably_connected(tangle_inject(T), allow_boundary=True) and _ok(tangle_inject(T), T.kind))
        p = rng.choice([1, 3, 5])
        Z = zoom(p, T)
        note("zoom", _ok(Z, T.kind))
        g = rng.choice(D4)
        note("d4_act", _ok(d4_act(g, T), T.kind))
    for _ in range(1000):
        tm = two_vertex_tree(rng)
        parent, child, spec = tm.mosaics["root"], tm.mosaics["leaf"], tm.edges["leaf"]
        W = embed(child, parent, spec)
        want = Kind.RVKNOT if W.inf_positions else Kind.KNOT
        note("embed", _ok(W, want))
    rules = catalog()
    for k in range(1000):
        rule = rules[k % len(rules)]
        direction = "LR" if (k // len(rules)) % 2 == 0 else "RL"
        lhs, _ = rule.side(direction)
        size = len(lhs)
        n = rng.randint(size, size + 3)
        pos = (rng.randint(1, n - size + 1), rng.randint(1, n - size + 1))
        M = with_pattern(rng, lhs, n, pos)
        out = apply(M, rule, pos, direction)
        note("moves", _ok(out, Kind.RVTANGLE if out.inf_positions else Kind.TANGLE))
    assert sum(fails.values()) == 0, fails


@pytest.mark.criterion(3, "contraction of a leaf equals the embedding, 200 trials")
def test_c3_contraction_identity():
    rng = random.Random(SEED + 3)
    for _ in range(200):
        tm = two_vertex_tree(rng)
        want = embed(tm.mosaics["leaf"], tm.mosaics["root"], tm.edges["leaf"])
        got = contract(tm, {"root", "leaf"})
        assert got.mosaics["root"] == want
        assert got.vertices == ("root",)


@pytest.mark.criterion(4, "full contraction preserves components and crossing sequences, 100 trials")
def test_c4_contraction_preserves_realization():
    rng = random.Random(SEED + 4)
    for _ in range(100):
        tm = random_tree(rng, max_vertices=6, dims=(3, 5), max_product=2025)
        assert not validate(tm)
        before = crossing_signature(realize_tree(tm))
        flat = contract_all(tm)
        after = crossing_signature(realize_tree(flat))
        assert before == after


@pytest.mark.criterion(5, "sigma decay, link lengths, Cauchy bound on the Fox ray (m,n <= 12)")
def test_c5_quantitative_bounds():
    tm = read_tree(corpus_path("fox.tree"))
    vs = place(tm, 12)
    by_id = {P.vid: P for P in vs}
    for P in vs:
        assert Fraction(1, P.scale) <= Fraction(1, 3**P.depth)
        if P.parent is not None:
            u = by_id[P.parent]
            for p, q, _ in links(u, P):
                assert sum((p[k] - q[k]) ** 2 for k in range(3)) <= 3 * Fraction(1, u.scale) ** 2
    path = ray_path(tm, "root#0", 12)
    rho = {P.depth: P.rho for P in path}
    count = 0
    for n in range(1, 13):
        for m in range(n + 1, 13):
            d2 = sum((rho[m][k] - rho[n][k]) ** 2 for k in range(3))
            # ((9 sqrt 2 / 2) 3^-n)^2 = (81/2) 9^-n
            assert d2 < Fraction(81, 2) / 9**n
            count += 1
    assert count == 66


@pytest.mark.criterion(6, "region and shell checks on the whole corpus to depth 8")
@pytest.mark.parametrize("name", TREES)
def test_c6_regions(name):
    tm = read_tree(corpus_path(name))
    regions, shells, problems = regions_and_shells(tm, 8)
    assert not problems, problems[:3]
    assert len(shells) == len(regions)


@pytest.mark.criterion(7, "p-index bound: at most 4, Fox ray gives 2")
def test_c7_p_index():
    fox = read_tree(corpus_path("fox.tree"))
    assert p_index_bound(fox, "root#0") == 2
    cross = read_tree(corpus_path("cross.tree"))
    assert p_index_bound(cross, "root#0") == 4
    rng = random.Random(SEED + 7)
    for _ in range(30):
        tm = random_tree(rng, max_vertices=3, rays=rng.randint(1, 3), max_product=225)
        for r in tm.rays:
            assert p_index_bound(tm, r.name) in (2, 4)


@pytest.mark.criterion(8, "kinked unknot to unknot certificate, max_steps 6, max_dim 4, < 10 s")
def test_c8_move_search():
    A = read_mosaic(corpus_path("kinked-unknot.mosaic"))
    B = read_mosaic(corpus_path("unknot.mosaic"))
    t0 = time.perf_counter()
    res = search_equiv(A, B, max_dim=4, max_steps=6)
    elapsed = time.perf_counter() - t0
    assert res.found, res.status
    assert len(res.certificate) <= 6
    assert replay(A, res.certificate) == B
    assert elapsed < 10.0


@pytest.mark.criterion(9, "figure regressions: zoom, embedding, contraction, adjustment, D4 panels")
def test_c9_figures():
    assert zoom(3, BEAD) == ZOOM3_BEAD
    assert embed(FOX, BEAD, EmbedSpec(2, 2)) == EMBED_FOX_BEAD
    tm = TreeMosaic("panel", "root", {"root": BEAD, "a": KINK}, {"a": "root"}, {"a": EmbedSpec(2, 2, R)}, (), ("root", "a"))
    assert not validate(tm)
    assert contract_all(tm).mosaics["root"] == CONTRACT_BEAD_KINK
    assert boundary_adjust(ADJUST_IN_1).mosaic == ADJUST_OUT_1
    assert boundary_adjust(ADJUST_IN_2).mosaic == ADJUST_OUT_2
    assert d4_act(R, TREFOIL) == TREFOIL_R
    assert d4_act(F, FOX) == FOX_F


@pytest.mark.criterion(10, "star-like reduction of random trees with up to 3 rays, 50 trials")
def test_c10_star_reduction():
    rng = random.Random(SEED + 10)
    for _ in range(50):
        tm = random_tree(rng, max_vertices=6, rays=rng.randint(1, 3), max_product=2025)
        res = star_reduce(tm)
        star = res.tree
        assert is_star_like(star)
        assert not validate(star)
        assert len(wild_points(star)) == len(wild_points(tm))
        for k in (1, 2):
            assert crossing_signature(realize_tree(tm, ray_steps=k)) == crossing_signature(realize_tree(star, ray_steps=k))
        for r in tm.rays:
            assert p_index_bound(star, r.name) == p_index_bound(tm, r.name)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
