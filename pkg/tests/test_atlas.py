from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfclass.atlas import (
    PLAtlas,
    RegionPieces,
    affine_transition,
    annulus_atlas,
    atlas_from_gluings,
    builtin_atlases,
    connected_components,
    disjoint_squares_atlas,
    doubled_origin_atlas,
    flat_torus_atlas,
    is_compact,
    is_hausdorff,
    mobius_atlas,
    open_square_atlas,
    refine_locally_finite,
    same_region,
    saturate,
    saturate_all,
    translation_atlas,
    triangulate,
    validate_atlas,
)
from surfclass.classify import classify_compact, classify_surface
from surfclass.errors import Disconnected, NotHausdorff
from surfclass.exhaustion import validate_canonical
from surfclass.geometry2d import PolygonalRegion, pt, rat

R = PolygonalRegion.rectangle
H, S = rat(1, 2), rat(3, 4)
TORUS_RECTS = [(x, y, x + S, y + S) for y in (0, H) for x in (0, H)]


@pytest.fixture(scope="module")
def torus():
    return flat_torus_atlas()


def _translate(pieces, tx, ty):
    return RegionPieces(tuple(tuple(pt(p.x + tx, p.y + ty) for p in P) for P in pieces))


# ---------------------------------------------------------------------------
# validation


def test_validate_examples(torus):
    assert validate_atlas(torus).ok
    assert validate_atlas(open_square_atlas()).ok
    assert validate_atlas(mobius_atlas()).ok


def test_violation_inverse():
    a = annulus_atlas()
    wrong = affine_transition(a.overlaps[(1, 0)], [(1, 0, 0, 1, 0, 0)] * 2)
    a.transitions[(1, 0)] = wrong
    v = validate_atlas(a)
    assert not v.ok and v.condition == "(iii)"


def test_violation_cocycle():
    sq = R(0, 0, 1, 1)
    piece = R(0, 0, H, 1)
    ident, flip = (1, 0, 0, 1, 0, 0), (-1, 0, 0, 1, H, 0)
    a = atlas_from_gluings([sq, sq, sq], [(0, 1, piece, ident), (1, 2, piece, ident), (0, 2, piece, flip)])
    v = validate_atlas(a)
    assert not v.ok and v.condition == "(iv)"


def test_violation_overlap_outside_chart():
    a = atlas_from_gluings([R(0, 0, 1, 1), R(0, 0, 3, 3)], [(0, 1, R(0, 0, 2, 1), (1, 0, 0, 1, 0, 1))])
    v = validate_atlas(a)
    assert not v.ok and v.condition == "(i)" and v.indices == (0, 1)


# ---------------------------------------------------------------------------
# saturation


def test_saturate_torus_square(torus):
    V = R(rat(1, 8), rat(1, 8), rat(5, 8), rat(3, 8))
    sat = saturate(torus, 0, V)
    assert [s.area for s in sat] == [rat(1, 8), rat(1, 16), rat(1, 16), rat(1, 32)]
    # chart 1 sees the strips x in [1/2, 5/8] (same coordinates) and [1/8, 1/4] shifted by +1
    a = _translate(saturate(torus, 0, R(H, rat(1, 8), rat(5, 8), rat(3, 8)))[0].pieces, 0, 0)
    b = _translate(saturate(torus, 0, R(rat(1, 8), rat(1, 8), rat(1, 4), rat(3, 8)))[0].pieces, 1, 0)
    assert same_region(sat[1], RegionPieces(a.pieces + b.pieces))


def test_saturate_disjoint_from_overlaps(torus):
    V = R(rat(5, 16), rat(5, 16), rat(7, 16), rat(7, 16))
    sat = saturate(torus, 0, V)
    assert sat[0].area == rat(1, 64) and not any(sat[1:])


def test_saturate_overlap_itself(torus):
    sat = saturate(torus, 0, RegionPieces(_pieces(torus.overlaps[(0, 1)])))
    assert same_region(sat[1], RegionPieces(_pieces(torus.overlaps[(1, 0)])))


def _pieces(regions):
    out = []
    for r in regions:
        out.extend(saturate(open_square_atlas(), 0, r)[0].pieces)
    return tuple(out)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 3), st.integers(0, 9), st.integers(0, 9), st.integers(1, 6), st.integers(1, 6))
def test_saturate_idempotent(chart, x, y, w, h):
    torus = flat_torus_atlas()
    x0, y0 = TORUS_RECTS[chart][:2]
    u = rat(1, 16)
    V = R(x0 + u * (x + 1), y0 + u * (y + 1), x0 + u * min(x + 1 + w, 11), y0 + u * min(y + 1 + h, 11))
    sat = saturate(torus, chart, V)
    again = saturate_all(torus, sat)
    assert all(same_region(p, q) for p, q in zip(sat, again))


# ---------------------------------------------------------------------------
# Hausdorff, compactness, components


def test_hausdorff(torus):
    assert is_hausdorff(torus).ok
    assert is_hausdorff(open_square_atlas()).ok
    h = is_hausdorff(doubled_origin_atlas())
    assert not h.ok
    p, q = h.witness
    assert p.point == q.point and {p.chart, q.chart} == {0, 1}
    assert max(abs(p.point.x), abs(p.point.y)) == rat(1, 4)


def test_compactness(torus):
    assert is_compact(torus)
    assert not is_compact(open_square_atlas())
    assert not is_compact(annulus_atlas())
    with pytest.raises(NotHausdorff):
        is_compact(doubled_origin_atlas())


def test_components(torus):
    assert len(connected_components(torus)) == 1
    assert len(connected_components(disjoint_squares_atlas(2))) == 2
    two = (R(0, 0, 1, 1), R(5, 5, 6, 6))
    a = atlas_from_gluings([two, R(0, 0, 1, 1)], [(0, 1, R(H, 0, 1, 1), (1, 0, 0, 1, -H, 0))])
    comps = connected_components(a)
    assert sorted(len(c.charts) for c in comps) == [1, 2]


# ---------------------------------------------------------------------------
# refinement


def test_refine_torus(torus):
    ref = refine_locally_finite(torus)
    assert ref.covers and len(ref.rects) == 64
    assert max(ref.meets) == 8
    for r in ref.rects:
        assert r.outer[0] < r.inner[0] < r.inner[2] < r.outer[2]


def test_refine_open_square():
    ref = refine_locally_finite(open_square_atlas(), 3)
    assert not ref.covers
    levels = sorted({r.level for r in ref.rects})
    assert len(levels) == 3
    # finer levels reach closer to the frontier
    reach = [min(r.inner[0] for r in ref.rects if r.level == lv) for lv in levels]
    assert reach == sorted(reach, reverse=True)
    assert max(ref.meets) < len(ref.rects)
    with pytest.raises(NotHausdorff):
        refine_locally_finite(doubled_origin_atlas())


# ---------------------------------------------------------------------------
# triangulation


def test_triangulate_torus(torus):
    t = triangulate(torus)
    assert t.complex is not None and t.complex.euler == 0
    c = classify_compact(t.complex)
    assert c.orientable and c.genus == 1
    assert validate_canonical(t.recipe.view).ok


@pytest.mark.parametrize("depth", [1, 3, 5])
def test_triangulate_open_square(depth):
    t = triangulate(open_square_atlas(), depth)
    assert t.complex is None and validate_canonical(t.recipe.view).ok
    inv = classify_surface(t.recipe, depth)
    assert inv.summary()["ends"] == ["1", "0", "0"] and inv.genus.value == 0 and inv.planar.value
    assert inv.certified


def test_triangulate_annulus_and_mobius():
    inv = classify_surface(triangulate(annulus_atlas(), 3).recipe, 3)
    assert str(inv) == "(0, orientable, (2,0,0))"
    inv = classify_surface(triangulate(mobius_atlas(), 3).recipe, 3)
    assert str(inv) == "(1, odd nonorientable, (1,0,0))"


def test_triangulate_errors():
    with pytest.raises(NotHausdorff):
        triangulate(doubled_origin_atlas())
    with pytest.raises(Disconnected):
        triangulate(disjoint_squares_atlas(2))


def _permuted(a: PLAtlas, perm):
    return PLAtlas(
        tuple(a.charts[perm.index(k)] for k in range(len(a.charts))),
        {(perm[i], perm[j]): v for (i, j), v in a.overlaps.items()},
        {(perm[i], perm[j]): v for (i, j), v in a.transitions.items()},
    )


@pytest.mark.parametrize(
    "rects, periods",
    [
        (TORUS_RECTS, (1, 1)),
        ([(0, 0, 2, 1), (rat(3, 2), 0, rat(7, 2), 1)], (3, 10)),
    ],
)
def test_pipeline_invariance(rects, periods):
    base = translation_atlas(rects, periods)
    ref = classify_surface(triangulate(base).recipe, 3)
    perm = list(range(len(rects)))[::-1]
    extra = translation_atlas(rects + [(rat(1, 4), rat(1, 8), rat(2, 3), rat(5, 8))], periods)
    for a in (_permuted(base, perm), extra):
        assert validate_atlas(a).ok
        inv = classify_surface(triangulate(a).recipe, 3)
        assert inv.summary() == ref.summary()


def test_builtin_names():
    for name in ("flat_torus", "open_square", "open_annulus", "open_mobius", "doubled_origin", "disjoint_squares"):
        assert validate_atlas(builtin_atlases(name)).ok
