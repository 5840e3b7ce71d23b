import random

import pytest

from wildmosaic import corpus_path
from wildmosaic.generate import random_child, random_tree, two_vertex_tree, with_pattern
from wildmosaic.grid import conn_points
from wildmosaic.moves import NotApplicable, apply, get_rule, scan
from wildmosaic.realize import crossing_signature, realize_tree
from wildmosaic.transforms import D4, IDENTITY, R, EmbedSpec, d4_act, embed, profile_mismatch
from wildmosaic.tree import (
    ContractionError, StructuralMismatch, TreeFormatError, TreeMosaic, TreeMoveError, contract, contract_all,
    divergence_depth, format_tree, is_star_like, mosaic_level_equiv, parse_tree, read_tree, single_vertex,
    star_reduce, tree_equiv, tree_move_vstar, tree_move_viii, unroll, validate, viii_sites, walk, wild_points,
    write_tree,
)


def load(name):
    return read_tree(corpus_path(name))


def viii_tree(seed=1):
    rng = random.Random(seed)
    lhs = get_rule("VIII.a").side("LR")[0]
    root = with_pattern(rng, lhs, 5, (2, 2), boundary="none")
    (site,) = root.inf_positions
    child, _ = random_child(rng, conn_points(root[site]), IDENTITY, 3)
    return TreeMosaic("viii", "root", {"root": root, "leaf": child}, {"leaf": "root"},
                      {"leaf": EmbedSpec(site[0], site[1], IDENTITY)}, (), ("root", "leaf"))


@pytest.mark.parametrize("name", ["fox.tree", "prefix.tree", "branch.tree", "star.tree", "cross.tree", "combo.tree"])
def test_corpus_trees_validate(name):
    assert validate(load(name)) == []


def test_format_round_trip(tmp_path):
    tm = load("prefix.tree")
    again = parse_tree(format_tree(tm), str(corpus_path()))
    assert again == tm
    out = tmp_path / "copy.tree"
    write_tree(contract(tm, {"root", "a"}), str(out))
    back = read_tree(str(out))
    assert validate(back) == []
    assert back.mosaics == contract(tm, {"root", "a"}).mosaics


def test_parse_errors():
    with pytest.raises(TreeFormatError, match="header"):
        parse_tree("vertex root x.mosaic\n", loader=lambda f: None)
    with pytest.raises(TreeFormatError, match="unknown directive"):
        parse_tree("tree t\nknot a\n")
    with pytest.raises(TreeFormatError, match="no vertices"):
        parse_tree("tree t\n")


def test_validate_reports_bad_target():
    tm = load("fox.tree")
    r = tm.rays[0]
    bad = TreeMosaic(tm.name, tm.root, tm.mosaics, {}, {}, (type(r)(r.name, r.attach, EmbedSpec(1, 1), r.period),), tm.order)
    msgs = [v.message for v in validate(bad)]
    assert any("not a T-inf" in m for m in msgs)


def test_validate_reports_orientation_mismatch():
    rng = random.Random(3)
    for _ in range(20):
        tm = two_vertex_tree(rng)
        leaf = tm.edges["leaf"]
        for g in D4:
            spec = EmbedSpec(leaf.a, leaf.b, g)
            moved = TreeMosaic(tm.name, tm.root, tm.mosaics, tm.parent, {"leaf": spec}, (), tm.order)
            fits = not profile_mismatch(d4_act(g, tm.mosaics["leaf"]), conn_points(tm.mosaics["root"][leaf.pos]))
            assert (validate(moved) == []) == fits


def test_contract_errors():
    tm = load("branch.tree")
    with pytest.raises(ContractionError):
        contract(tm, set())
    with pytest.raises(ContractionError, match="not a core"):
        contract(tm, {"root", "nope"})
    with pytest.raises(ContractionError, match="not connected"):
        contract(tm, {"top", "low"})


def test_partial_contract_keeps_rays():
    tm = load("branch.tree")
    out = contract(tm, {"root", "top"})
    assert out.vertices == ("root", "low")
    assert validate(out) == []
    assert wild_points(out) == wild_points(tm)
    R1 = realize_tree(tm, ray_steps=1)
    R2 = realize_tree(out, ray_steps=1)
    assert crossing_signature(R1) == crossing_signature(R2)


def test_contract_single_vertex_is_identity():
    tm = load("fox.tree")
    out = contract(tm, {"root"})
    assert out.mosaics == tm.mosaics and out.rays == tm.rays


def test_unroll_preserves_realization():
    tm = load("prefix.tree")
    ray = tm.rays[0].name
    for k in (1, 2, 3):
        un = unroll(tm, ray, k)
        assert validate(un) == []
        assert len(un.vertices) == len(tm.vertices) + k
        assert realize_tree(un, depth=7).canonical() == realize_tree(tm, depth=7).canonical()


def test_walk_needs_a_bound():
    with pytest.raises(ValueError):
        list(walk(load("fox.tree")))
    infos = list(walk(load("fox.tree"), ray_steps=3))
    assert [i.depth for i in infos] == [0, 1, 2, 3]
    assert infos[-1].vid == "root#0.3"


def test_star_reduce_on_corpus():
    star = load("star.tree")
    assert is_star_like(star)
    assert star_reduce(star).tree == star
    # two unary paths off the root already count as star-like
    branch = load("branch.tree")
    res = star_reduce(branch)
    assert res.divergence_depth == 0 and res.tree == branch
    prefix = load("prefix.tree")
    assert is_star_like(prefix)
    assert divergence_depth(prefix) == 0


def test_star_reduce_random():
    rng = random.Random(11)
    reduced = 0
    for _ in range(10):
        tm = random_tree(rng, max_vertices=5, rays=rng.randint(2, 3), max_product=225)
        res = star_reduce(tm)
        reduced += res.tree != tm
        assert is_star_like(res.tree)
        assert validate(res.stage1) == []
        assert crossing_signature(realize_tree(res.tree, ray_steps=1)) == crossing_signature(realize_tree(tm, ray_steps=1))
    assert reduced > 0


def test_vstar_identity_and_inverse():
    rng = random.Random(5)
    tm = two_vertex_tree(rng)
    assert tree_move_vstar(tm, "leaf", IDENTITY) == tm
    done = 0
    for g in D4:
        try:
            moved = tree_move_vstar(tm, "leaf", g)
        except TreeMoveError:
            continue
        done += 1
        assert moved.mosaics == tm.mosaics
        assert validate(moved) == []
        assert tree_move_vstar(moved, "leaf", g.inverse()) == tm
    assert done >= 1
    with pytest.raises(TreeMoveError):
        tree_move_vstar(tm, "root", R)


def test_vstar_mismatch_raises():
    # a leaf under B:EW rotated by a quarter turn faces N-S
    tm = viii_tree()
    with pytest.raises(TreeMoveError, match="profile"):
        tree_move_vstar(tm, "leaf", R)


def test_viii_move_round_trip():
    tm = viii_tree()
    sites = viii_sites(tm, "root", "a")
    assert sites
    name, pos, d = sites[0]
    out = tree_move_viii(tm, "root", pos, "a", rule=name, direction=d)
    assert out.mosaics["leaf"] == tm.mosaics["leaf"] and out.edges == tm.edges
    assert out.mosaics["root"].inf_positions == tm.mosaics["root"].inf_positions
    assert validate(out) == []
    back = tree_move_viii(out, "root", pos, "a", rule=name, direction="RL" if d == "LR" else "LR")
    assert back == tm
    with pytest.raises(NotApplicable):
        tree_move_viii(tm, "root", (1, 1), "a")
    with pytest.raises(NotApplicable):
        tree_move_viii(tm, "root", pos, "b")


def test_mosaic_level_equiv():
    tm = load("fox.tree")
    res = mosaic_level_equiv(tm, tm)
    assert res.status == "found"
    assert all(len(c) == 0 for c in res.certificates.values())
    tm2 = viii_tree()
    name, pos, d = viii_sites(tm2, "root", "a")[0]
    moved = tree_move_viii(tm2, "root", pos, "a", rule=name, direction=d)
    # VIII is a tree move, not one of the mosaic-level families
    res = mosaic_level_equiv(tm2, moved, max_steps=1)
    assert res.status == "not-found" and res.failed == "root"
    with pytest.raises(StructuralMismatch):
        mosaic_level_equiv(tm, load("star.tree"))


def test_tree_equiv_contracts_first():
    rng = random.Random(8)
    tm = two_vertex_tree(rng)
    flat = single_vertex(embed(tm.mosaics["leaf"], tm.mosaics["root"], tm.edges["leaf"]), vid="root")
    res = tree_equiv(tm, flat, S1={"root", "leaf"})
    assert res.status == "found"


def test_single_vertex_tree():
    tm = load("trefoil.tree")
    assert tm.vertices == ("root",) and not tm.rays
    assert contract_all(tm).mosaics == tm.mosaics
    assert tm.mosaics["root"].crossing_count() == 3
    assert tm.mosaics["root"].inf_positions == ()


def test_unrolled_ids_survive_a_round_trip(tmp_path):
    # ray vertex ids contain '#', which must not read as a comment
    un = unroll(load("fox.tree"), "root#0", 2)
    path = tmp_path / "un.tree"
    write_tree(un, str(path))
    back = read_tree(str(path))
    assert back.vertices == un.vertices
    assert validate(back) == []


def _random_moved(rng, families):
    while True:
        tm = random_tree(rng, max_vertices=3, max_product=225)
        for v in tm.vertices:
            for s in scan(tm.mosaics[v], families):
                mosaics = dict(tm.mosaics)
                mosaics[v] = apply(tm.mosaics[v], get_rule(s.rule), s.pos, s.direction)
                return tm, v, TreeMosaic(tm.name, tm.root, mosaics, tm.parent, tm.edges, tm.rays, tm.order)


def test_planar_isotoped_vertex_is_found():
    rng = random.Random(21)
    for _ in range(5):
        tm, v, moved = _random_moved(rng, ["P"])
        assert validate(moved) == []
        res = mosaic_level_equiv(tm, moved, max_steps=1)
        assert res.status == "found"
        assert len(res.certificates[v]) == 1


def test_relocated_inf_is_a_structural_mismatch():
    tm = viii_tree()
    root = tm.mosaics["root"]
    (pos,) = root.inf_positions
    shifted = TreeMosaic(tm.name, tm.root, {**tm.mosaics, "root": root.replace({pos: root[pos[0] - 1, pos[1]]})},
                         tm.parent, tm.edges, (), tm.order)
    with pytest.raises(StructuralMismatch, match="T-inf"):
        mosaic_level_equiv(tm, shifted)


def test_vstar_commutes_with_disjoint_contraction():
    rng = random.Random(13)
    checked = 0
    while checked < 10:
        tm = random_tree(rng, max_vertices=5, max_product=675)
        for v in tm.vertices[1:]:
            S = {tm.root} | {c for c in tm.children(tm.root) if c != v and v not in tm.descendants(c)}
            if v in S or tm.parent[v] in S or len(S) < 2:
                continue
            for g in D4[1:]:
                try:
                    a = contract(tree_move_vstar(tm, v, g), S)
                except TreeMoveError:
                    continue
                assert a == tree_move_vstar(contract(tm, S), v, g)
                checked += 1
                break
