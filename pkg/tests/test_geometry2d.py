from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfclass.errors import DegenerateVertex, NotInjective, OutsideDomain, SelfIntersection
from surfclass.geometry2d import (
    PLMap,
    Point2,
    PolygonalRegion,
    Segment,
    Triangulation2,
    arrangement,
    convex_embed,
    orientation,
    plmap_compose,
    plmap_eval,
    plmap_invert,
    plmap_verify,
    pt,
    segment_intersection,
    signed_area,
    triangulate_polygon,
    validate_simple,
)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=30)
points = st.builds(Point2, rats, rats)


def square(x0=0, y0=0, x1=1, y1=1):
    return [pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)]


def test_orientation_examples():
    assert orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == 1
    assert orientation(pt(0, 0), pt(1, 1), pt(2, 2)) == 0
    assert orientation(pt(0, 0), pt(0, 1), pt(1, 0)) == -1


@given(points, points, points)
def test_orientation_antisymmetric(a, b, c):
    assert orientation(a, b, c) == -orientation(a, c, b)
    assert orientation(a, b, c) == orientation(b, c, a)


def test_segment_intersection_examples():
    assert segment_intersection((pt(0, 0), pt(2, 2)), (pt(0, 2), pt(2, 0))) == pt(1, 1)
    assert segment_intersection((pt(0, 0), pt(1, 0)), (pt(2, 0), pt(3, 0))) is None
    x = segment_intersection((pt(0, 0), pt(2, 0)), (pt(1, 0), pt(3, 0)))
    assert isinstance(x, Segment) and set(x) == {pt(1, 0), pt(2, 0)}


@given(points, points, points, points)
def test_segment_intersection_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    x = segment_intersection((a, b), (c, d))
    y = segment_intersection((c, d), (a, b))
    if isinstance(x, Segment):
        assert isinstance(y, Segment) and set(x) == set(y)
    else:
        assert x == y


def test_validate_simple():
    assert len(validate_simple(square())) == 4
    with pytest.raises(SelfIntersection):
        validate_simple([pt(0, 0), pt(1, 1), pt(1, 0), pt(0, 1)])
    with pytest.raises(DegenerateVertex):
        validate_simple([pt(0, 0), pt(1, 0), pt(2, 0)])


def _check_triangulation(tri: Triangulation2, region: PolygonalRegion):
    assert sum(signed_area(tri.triangle_points(t)) for t in range(len(tri.triangles))) == region.area
    for t in range(len(tri.triangles)):
        assert orientation(*tri.triangle_points(t)) == 1
    count = {}
    for a, b, c in tri.triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            key = frozenset((u, v))
            count[key] = count.get(key, 0) + 1
    bedges = {frozenset((tri.points.index(p), tri.points.index(q))) for p, q in region.boundary_edges()}
    for e, k in count.items():
        assert k == (1 if e in bedges else 2)


def test_triangulate_examples():
    quad = PolygonalRegion.from_points([pt(0, 0), pt(2, 0), pt(3, 2), pt(0, 1)])
    assert len(triangulate_polygon(quad).triangles) == 2
    tri = PolygonalRegion.from_points([pt(0, 0), pt(1, 0), pt(0, 1)])
    assert len(triangulate_polygon(tri).triangles) == 1
    ring = PolygonalRegion.from_points(square(0, 0, 3, 3), [square(1, 1, 2, 2)])
    t = triangulate_polygon(ring)
    assert len(t.triangles) == 8
    used = {i for tr in t.triangles for i in tr}
    assert used == set(range(8))
    _check_triangulation(t, ring)


@st.composite
def star_polygons(draw):
    n = draw(st.integers(3, 12))
    import math

    pts = []
    for k in range(n):
        r = draw(st.fractions(min_value=F(1, 2), max_value=3, max_denominator=10))
        ang = 2 * math.pi * (k + F(1, 2) * draw(st.fractions(0, 1, max_denominator=5))) / n
        pts.append(Point2(F(round(float(r) * math.cos(ang) * 50), 50), F(round(float(r) * math.sin(ang) * 50), 50)))
    return pts


@settings(max_examples=60, deadline=None)
@given(star_polygons())
def test_triangulate_star_polygons(pts):
    try:
        region = PolygonalRegion.from_points(pts)
    except (SelfIntersection, DegenerateVertex):
        return
    _check_triangulation(triangulate_polygon(region), region)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2))
def test_triangulate_square_with_holes(i, j):
    holes = [square(F(1, 4) + i, F(1, 4) + j, F(3, 4) + i, F(3, 4) + j)]
    if (i, j) != (1, 1):
        holes.append(square(F(5, 4), F(5, 4), F(7, 4), F(7, 4)))
    region = PolygonalRegion.from_points(square(0, 0, 3, 3), holes).validate()
    _check_triangulation(triangulate_polygon(region), region)


def test_arrangement_examples():
    sq = PolygonalRegion.from_points(square())
    diag = [(pt(0, 0), pt(1, 1)), (pt(1, 0), pt(0, 1))]
    arr = arrangement(sq, diag)
    assert len(arr.faces) == 4
    assert all(len(f.boundary) == 3 for f in arr.faces)
    assert len(arrangement(sq).faces) == 1
    assert len(arrangement(sq, [(pt(0, F(1, 2)), pt(1, F(1, 2)))]).faces) == 2


def test_arrangement_euler_with_hole_and_floating_segment():
    region = PolygonalRegion.from_points(square(0, 0, 4, 4), [square(1, 1, 2, 2)])
    segs = [(pt(3, 1), pt(3, 3)), (pt(0, 3), pt(4, 3))]
    arr = arrangement(region, segs)
    # region faces plus the hole face satisfy Euler per component
    assert arr.euler + len(region.holes) == arr.components
    assert len(arr.faces) == 2
    hole_faces = [f for f in arr.faces if f.holes]
    assert len(hole_faces) == 1
    for f in arr.faces:
        assert region.locate(f.sample) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(points, points), min_size=0, max_size=5))
def test_arrangement_euler_relation(segs):
    region = PolygonalRegion.from_points(square(-20, -20, 20, 20))
    segs = [(a, b) for a, b in segs if a != b]
    arr = arrangement(region, segs)
    # Euler for a plane graph with c components, counting only bounded faces
    assert len(arr.vertices) - len(arr.edges) + len(arr.faces) == arr.components
    for f in arr.faces:
        assert region.locate(f.sample) >= 0


def test_convex_embed_wheel():
    tris = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]
    t = convex_embed(tris, [0, 1, 2, 3], square())
    assert t.points[4] == pt(F(1, 2), F(1, 2))


def test_convex_embed_single_triangle():
    pos = [pt(0, 0), pt(1, 0), pt(0, 1)]
    t = convex_embed([(0, 1, 2)], [0, 1, 2], pos)
    assert list(t.points) == pos


def test_convex_embed_double_wheel():
    # square boundary 0..3, interior 4 and 5 joined by an edge
    tris = [(0, 1, 4), (1, 5, 4), (1, 2, 5), (2, 3, 5), (3, 4, 5), (3, 0, 4)]
    t = convex_embed(tris, [0, 1, 2, 3], square(0, 0, 3, 3))
    # oracle: x4 = (p0+p1+p3+p5)/4, x5 = (p1+p2+p3+p4)/4 solved by hand
    # x4 = ((0,0)+(3,0)+(0,3)+x5)/4, x5 = ((3,0)+(3,3)+(0,3)+x4)/4
    # => 16 x4 = 4*(3,3) + (6,6) + x4 => x4 = (18,18)/15 = (6/5,6/5); x5 = (9/5,9/5)
    assert t.points[4] == pt(F(6, 5), F(6, 5))
    assert t.points[5] == pt(F(9, 5), F(9, 5))
    assert all(orientation(*t.triangle_points(k)) == 1 for k in range(len(t.triangles)))


def _unit_map(fn):
    tri = Triangulation2(tuple(square()), ((0, 1, 2), (0, 2, 3)), ((0, 1, 2, 3),))
    return PLMap(tri, tuple(fn(p) for p in tri.points), 1)


def test_plmap_examples():
    ident = _unit_map(lambda p: p)
    assert plmap_eval(ident, (F(1, 3), F(1, 3))) == pt(F(1, 3), F(1, 3))
    shear = _unit_map(lambda p: Point2(p.x + p.y, p.y))
    assert plmap_eval(shear, (F(1, 2), F(1, 2))) == pt(1, F(1, 2))
    with pytest.raises(OutsideDomain):
        plmap_eval(shear, (2, 2))
    inv = plmap_invert(shear)
    comp = plmap_compose(shear, inv)
    for p, q in zip(comp.domain.points, comp.images):
        assert p == q
    assert plmap_verify(comp).ok


def test_plmap_verify_detects_fold():
    folded = _unit_map(lambda p: Point2(p.x, p.y))
    pts = list(folded.images)
    pts[3] = pt(2, 0)  # second triangle flips over the first
    bad = PLMap(folded.domain, tuple(pts), 1)
    assert not plmap_verify(bad).ok
    overlap = PLMap(folded.domain, (pt(0, 0), pt(1, 0), pt(1, 1), pt(F(3, 2), F(1, 4))), 1)
    rep = plmap_verify(overlap)
    with pytest.raises((NotInjective, ValueError)):
        rep.raise_for_problems()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(F(1, 10), F(9, 10), max_denominator=12), min_size=2, max_size=2))
def test_compose_with_inverse_is_identity(c):
    # a wheel with center moved to c: PL homeomorphism of the square
    tris = ((0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4))
    dom = Triangulation2(tuple(square()) + (pt(F(1, 2), F(1, 2)),), tris, ((0, 1, 2, 3),))
    f = PLMap(dom, tuple(square()) + (Point2(*c),), 1)
    assert plmap_verify(f).ok
    g = plmap_compose(f, plmap_invert(f))
    assert all(p == q for p, q in zip(g.domain.points, g.images))
    assert plmap_verify(g).ok
