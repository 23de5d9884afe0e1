from __future__ import annotations

import pytest

from surfclass.complex import FiniteComplex2, invariants, surface_check
from surfclass.complex.library import annulus, cone_disk, rp2_6, tetrahedron, torus7, triangle
from surfclass.errors import GluingMismatch, UnknownName
from surfclass.exhaustion import (
    INF,
    INF_NONORIENTABLE,
    ORIENTABLE,
    Block,
    ExhaustionView,
    ExplicitRecipe,
    PeriodicRecipe,
    builtin_recipes,
    expand,
    limit_invariants,
    subdivide_recipe,
    relabel_recipe,
    validate_canonical,
)

NAMES = ["plane", "cylinder", "loch_ness", "jacobs_ladder", "cantor_complement", "flute", "prong(3)", "crosscap_chain"]


def test_plane_nested_disks():
    v = expand(builtin_recipes("plane"), 2)
    assert len(v.pieces) == 3
    for P in v.pieces:
        k = surface_check(P)
        assert k.kind == "Bordered" and k.boundary_circles == 1
        assert invariants(P).planar


def test_jacobs_ladder_genus_profile():
    v = expand(builtin_recipes("jacobs_ladder"), 4)
    genera = [invariants(P).genus for P in v.pieces]
    assert genera == [1, 3, 5, 7, 9]
    assert all(surface_check(P).boundary_circles == 2 for P in v.pieces)


def test_loch_ness_profile():
    v = expand(builtin_recipes("loch_ness"), 3)
    assert [invariants(P).genus for P in v.pieces] == [0, 1, 2, 3]


def test_gluing_mismatch():
    base = Block(cone_disk([0, 1, 2], 3), None, (((0, 1, 2), "t"),))
    rule = Block(annulus([0, 1, 2, 3], [4, 5, 6, 7]), (0, 1, 2, 3), (((4, 5, 6, 7), "t"),))
    with pytest.raises(GluingMismatch):
        expand(PeriodicRecipe(base, (("t", rule),)), 1)


def test_unknown_name():
    with pytest.raises(UnknownName):
        builtin_recipes("horn")


@pytest.mark.parametrize("name", NAMES)
def test_expand_is_canonical_and_prefix(name):
    r = builtin_recipes(name)
    short, long = expand(r, 2), expand(r, 4)
    assert validate_canonical(long)
    assert long.pieces[:3] == short.pieces
    assert long.circles[: len(short.circles)] == short.circles


def test_validate_canonical_violations():
    P0 = triangle()
    same = validate_canonical(ExhaustionView((P0, P0)))
    assert not same and same.condition == "border" and same.stage == 1
    pinched = FiniteComplex2.from_triangles([(0, 1, 2), (0, 3, 4)])
    bad = validate_canonical(ExhaustionView((P0, pinched)))
    assert not bad and bad.condition == "polyhedron" and bad.stage == 1


def test_limit_invariants_examples():
    li = limit_invariants(builtin_recipes("plane"), 3)
    assert (li.genus.value, li.oclass.value, li.planar.value) == (0, ORIENTABLE, True)
    assert li.genus.certified and li.oclass.certified and li.planar.certified
    li = limit_invariants(builtin_recipes("loch_ness"), 3)
    assert (li.genus.value, li.oclass.value, li.planar.value) == (INF, ORIENTABLE, False)
    li = limit_invariants(builtin_recipes("crosscap_chain"), 3)
    assert li.oclass.value == INF_NONORIENTABLE and li.oclass.certified and li.planar.value is False
    for name in ("cylinder", "prong(3)", "cantor_complement", "flute"):
        li = limit_invariants(builtin_recipes(name), 2)
        assert li.genus.value == 0 and li.planar.value


@pytest.mark.parametrize("name", NAMES)
def test_certified_values_stable(name):
    r = builtin_recipes(name)
    a, b = limit_invariants(r, 2), limit_invariants(r, 5)
    for x, y in zip((a.genus, a.oclass, a.planar), (b.genus, b.oclass, b.planar)):
        if x.certified:
            assert x.value == y.value


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("seed", [0, 1])
def test_subdivision_and_relabelling_invariance(name, seed):
    r = builtin_recipes(name)
    ref = limit_invariants(r, 3)
    for other in (subdivide_recipe(r, seed), relabel_recipe(r, {}, 100)):
        li = limit_invariants(other, 3)
        assert (li.genus.value, li.oclass.value, li.planar.value) == (ref.genus.value, ref.oclass.value, ref.planar.value)
        assert validate_canonical(expand(other, 2))


@pytest.mark.parametrize("closed", [tetrahedron(), torus7(), rp2_6()])
def test_explicit_closed_matches_compact_invariants(closed):
    t = sorted(closed.triangles)[0]
    view = ExhaustionView((FiniteComplex2.from_triangles([t]), closed))
    assert validate_canonical(view)
    li = limit_invariants(ExplicitRecipe(view), 1)
    inv = invariants(closed)
    assert li.genus.certified
    assert li.genus.value == (inv.genus if inv.orientable else inv.crosscaps)
    assert (li.oclass.value == ORIENTABLE) == inv.orientable


def test_genus_lower_bounds_monotone_for_explicit():
    view = expand(builtin_recipes("loch_ness"), 4)
    vals = [limit_invariants(ExplicitRecipe(view), d).genus.value for d in range(5)]
    assert vals == sorted(vals)
    assert not limit_invariants(ExplicitRecipe(view), 4).genus.certified
