import random

import pytest
from hypothesis import given, settings, strategies as st

from figdata import TREFOIL
from wildmosaic import corpus_path
from wildmosaic.generate import with_pattern
from wildmosaic.grid import Mosaic, boundary_profile, components, knot_inject, mosaic, read_mosaic
from wildmosaic.moves import (
    CROSSING_DELTA, FAMILIES, MOSAIC_LEVEL_FAMILIES, MoveCertificate, NotApplicable, Step, applicable, apply,
    base_rules, catalog, family_of, get_rule, lint_catalog, parse_rules, replay, scan, search_equiv, search_reduce,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
KINKED = read_mosaic(corpus_path("kinked-unknot.mosaic"))
UNKNOT = read_mosaic(corpus_path("unknot.mosaic"))


def test_catalog_shape():
    names = {r.name for r in base_rules()}
    assert {"R1.a", "R2.a", "R3.a", "IV.a", "Vstar", "VI.a", "VIII.a", "VIII.b"} <= names
    assert len(base_rules()) == 26
    assert len(catalog()) == 122
    assert {r.family for r in catalog()} <= set(FAMILIES)


def test_catalog_lints_clean():
    assert lint_catalog() == []
    assert lint_catalog(catalog()) == []


def test_family_names():
    assert family_of("R3.b:rf[m]") == "R3"
    assert family_of("P11") == "P"
    assert family_of("Vstar") == "Vstar"


def test_crossing_changes_by_family():
    for r in catalog():
        d = abs(Mosaic(r.lhs).crossing_count() - Mosaic(r.rhs).crossing_count())
        assert d in CROSSING_DELTA.get(r.family, {0}), r.name


def test_parse_rejects_ragged_rules():
    with pytest.raises(ValueError):
        parse_rules("rule X d4m\n0 0 => 2 1\n1 => 7 4\n")


def test_scan_finds_the_kink():
    sites = scan(KINKED, ["R1"])
    assert any(s.rule.startswith("R1.") and s.direction == "LR" for s in sites)


def test_apply_and_not_applicable():
    rule = get_rule("R1.a")
    with pytest.raises(NotApplicable):
        apply(UNKNOT, rule, (1, 1))
    with pytest.raises(KeyError):
        get_rule("nope")


def test_certificate_text_round_trip():
    cert = MoveCertificate((Step("move", "R1.a:r", (2, 2), "LR"), Step("deinject")))
    assert str(cert) == "LR R1.a:r @(2,2)\ndeinject\n"
    assert MoveCertificate.parse(str(cert)) == cert
    with pytest.raises(ValueError):
        MoveCertificate.parse("LR R1.a\n")


def test_step_inverse():
    s = Step("move", "P1", (1, 1), "LR")
    assert s.inverse().direction == "RL"
    assert Step("inject").inverse() == Step("deinject")


def test_search_kinked_unknot():
    res = search_equiv(KINKED, UNKNOT, max_dim=4, max_steps=6)
    assert res.found
    assert replay(KINKED, res.certificate) == UNKNOT
    back = MoveCertificate(tuple(s.inverse() for s in reversed(res.certificate.steps)))
    assert replay(UNKNOT, back) == KINKED


def test_search_is_honest_about_failure():
    res = search_equiv(TREFOIL, knot_inject(knot_inject(UNKNOT)), max_dim=4, max_steps=2, injections=False)
    assert not res.found
    assert res.status in ("not-found", "exhausted")
    res = search_equiv(TREFOIL, knot_inject(knot_inject(UNKNOT)), max_dim=5, max_steps=8, max_states=50)
    assert res.status == "limit-exceeded"


def test_search_same_mosaic():
    res = search_equiv(TREFOIL, TREFOIL)
    assert res.found and len(res.certificate) == 0


def test_search_reduce_to_crossingless():
    res = search_reduce(KINKED, lambda M: M.crossing_count() == 0, max_steps=2, families=MOSAIC_LEVEL_FAMILIES)
    assert res.found
    assert replay(KINKED, res.certificate).crossing_count() == 0


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(0, 121), st.sampled_from(["LR", "RL"]))
def test_rule_application_round_trips(seed, k, direction):
    rng = random.Random(seed)
    rule = catalog()[k]
    pattern, _ = rule.side(direction)
    n = len(pattern) + rng.randint(0, 2)
    pos = (rng.randint(1, n - len(pattern) + 1), rng.randint(1, n - len(pattern) + 1))
    M = with_pattern(rng, pattern, n, pos)
    assert applicable(M, rule, pos, direction)
    out = apply(M, rule, pos, direction)
    back = "RL" if direction == "LR" else "LR"
    assert apply(out, rule, pos, back) == M
    assert boundary_profile(out) == boundary_profile(M)
    assert out.inf_positions == M.inf_positions


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 121))
def test_planar_and_reidemeister_rules_keep_open_strands(seed, k):
    rule = catalog()[k]
    if rule.family not in MOSAIC_LEVEL_FAMILIES:
        return
    rng = random.Random(seed)
    n = len(rule.lhs) + 1
    M = with_pattern(rng, rule.lhs, n, (1, 1))
    out = apply(M, rule, (1, 1))
    ends = lambda X: sorted(sorted(c.ends) for c in components(X) if not c.closed)
    assert ends(out) == ends(M)


def test_mosaic_from_patch():
    assert mosaic(get_rule("P1").lhs).dim == 2
