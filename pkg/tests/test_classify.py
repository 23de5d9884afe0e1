from __future__ import annotations

import random

import pytest

from oracles import homology_class
from surfclass.classify import (
    CompactClass,
    classify_collection,
    classify_compact,
    classify_surface,
    compare_collections,
    homeomorphic,
)
from surfclass.complex import subdivide
from surfclass.complex.library import annulus, rp2_6, tetrahedron, torus7
from surfclass.errors import NotClosedSurface
from surfclass.exhaustion import INF, builtin_recipes, relabel_recipe, subdivide_recipe

B = builtin_recipes


def test_classify_compact_examples():
    assert classify_compact(tetrahedron()) == CompactClass(True, 0)
    assert classify_compact(torus7()) == CompactClass(True, 1)
    assert classify_compact(rp2_6()) == CompactClass(False, 1)
    with pytest.raises(NotClosedSurface):
        classify_compact(annulus([0, 1, 2], [3, 4, 5]))


def test_classify_compact_subdivision_agrees_with_oracle():
    rng = random.Random(2)
    for K in (torus7(), rp2_6(), tetrahedron()):
        for _ in range(3):
            edges = rng.sample(sorted(K.edges), 1)
            K = subdivide(K, edges)
            c = classify_compact(K)
            assert homology_class(K) == (c.orientable, c.genus)


def test_classify_surface_examples():
    p = classify_surface(B("plane"), 3)
    assert (p.genus.value, p.oclass.value) == (0, "orientable")
    assert [str(c) for c in p.counts] == ["1", "0", "0"]
    ln = classify_surface(B("loch_ness"), 3)
    assert ln.genus.value == INF and [str(c) for c in ln.counts] == ["1", "1", "0"]
    cc = classify_surface(B("cantor_complement"), 3)
    assert cc.genus.value == 0 and str(cc.counts[0]) == ">=8" and cc.counts[0].infinite


@pytest.mark.parametrize("name", ["plane", "loch_ness", "jacobs_ladder", "crosscap_chain", "flute"])
def test_richards_invariant_consistency(name):
    inv = classify_surface(B(name), 3)
    if inv.oclass.value == "orientable":
        assert inv.counts[2].value == 0
    if inv.genus.certified and inv.genus.value == 0:
        assert inv.counts[1].value == 0


def test_homeomorphic_examples():
    v = homeomorphic(B("jacobs_ladder"), B("loch_ness"))
    assert v.kind == "No" and "end counts" in v.reason
    assert homeomorphic(B("prong(2)"), B("cylinder")).kind == "Yes"
    c = B("cantor_complement")
    v = homeomorphic(c, relabel_recipe(c, {"split": "other"}, 40))
    assert v.kind == "Yes" and v.reason == "bisimulation"


NAMES = ["plane", "cylinder", "prong(3)", "loch_ness", "jacobs_ladder", "cantor_complement", "flute", "crosscap_chain"]


def test_homeomorphic_reflexive_symmetric():
    for a in NAMES:
        assert homeomorphic(B(a), B(a)).kind == "Yes"
        for b in NAMES:
            assert homeomorphic(B(a), B(b)).kind == homeomorphic(B(b), B(a)).kind


def test_no_is_stable_in_depth():
    for a in NAMES:
        for b in NAMES:
            if homeomorphic(B(a), B(b), 2).kind == "No":
                assert homeomorphic(B(a), B(b), 5).kind == "No"


@pytest.mark.parametrize("name", NAMES)
def test_subdivision_invariance(name):
    r = B(name)
    x, y = classify_surface(r, 3), classify_surface(subdivide_recipe(r, 7), 3)
    assert str(x) == str(y)
    assert homeomorphic(r, subdivide_recipe(r, 7)).kind == "Yes"


def test_collections():
    assert compare_collections([B("plane"), B("cylinder")], [B("cylinder"), B("plane")]).kind == "Yes"
    assert compare_collections([B("plane"), B("plane")], [B("plane"), B("cylinder")]).kind == "No"
    assert compare_collections([B("loch_ness")], [B("loch_ness"), B("plane")]).kind == "No"
    col = classify_collection([B("plane"), B("cylinder")], 3)
    assert [[v.kind for v in row] for row in col.matrix] == [["Yes", "No"], ["No", "Yes"]]
