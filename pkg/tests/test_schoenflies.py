from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from polygen import random_star_polygon
from surfclass.errors import BoxTooSmall, CorrespondenceMismatch, NonDisk, NotSimple
from surfclass.geometry2d import SimplePolygon, Triangulation2, plmap_eval, plmap_verify, pt, triangulate_cycle
from surfclass.schoenflies import (
    BoundaryMap,
    disk_homeo,
    extend_to_plane_homeo,
    inner_image_area,
    jordan_sides,
    square_point,
    uniform_boundary_map,
    verify_homeo,
)

SQUARE = SimplePolygon((pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)))


def poly(*coords):
    return SimplePolygon(tuple(pt(x, y) for x, y in coords))


def test_jordan_sides():
    inner, outer = jordan_sides(SQUARE, (-2, -2, 2, 2))
    assert inner.area == 1 and outer.region.area == 15
    L = poly((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2))
    assert jordan_sides(L)[0].area == 3
    tri = poly((0, 0), (F(3, 2), 0), (0, 1))
    inner, outer = jordan_sides(tri)
    assert inner.area == F(3, 4)
    assert outer.contains(pt(5, 5)) and not outer.contains(pt(F(1, 10), F(1, 10)))


def _square_disk():
    return Triangulation2(tuple(SQUARE.vertices), ((0, 1, 2), (0, 2, 3)), ((0, 1, 2, 3),))


def test_disk_homeo_identity_and_rotation():
    d = _square_disk()
    f = disk_homeo(d, d, [(i, i) for i in range(4)])
    assert all(plmap_eval(f, p) == p for p in f.domain.points)
    g = disk_homeo(d, d, [(i, (i + 1) % 4) for i in range(4)])
    for i, p in enumerate(SQUARE.vertices):
        assert plmap_eval(g, p) == SQUARE.vertices[(i + 1) % 4]
    assert plmap_verify(g).ok


def test_disk_homeo_errors():
    d = _square_disk()
    ring = Triangulation2(
        tuple(pt(x, y) for x, y in [(0, 0), (3, 0), (3, 3), (0, 3), (1, 1), (2, 1), (2, 2), (1, 2)]),
        tuple(
            t
            for i in range(4)
            for t in (((i), (i + 1) % 4, 4 + (i + 1) % 4), (i, 4 + (i + 1) % 4, 4 + i))
        ),
    )
    with pytest.raises(NonDisk):
        disk_homeo(d, ring, [(i, i) for i in range(4)])
    with pytest.raises(CorrespondenceMismatch):
        disk_homeo(d, d, [(0, 0), (1, 2), (2, 1), (3, 3)])


def test_identity_extension():
    g = BoundaryMap((0, 1, 2, 3), SQUARE)
    h = extend_to_plane_homeo(g, (-2, -2, 2, 2))
    assert all(p == q for p, q in zip(h.forward.domain.points, h.forward.images))


def test_triangle_target():
    tri = poly((F(1, 3), F(1, 5)), (3, 1), (-1, 2))
    g = uniform_boundary_map(tri, F(1, 7))
    h = extend_to_plane_homeo(g)
    assert verify_homeo(h) == []
    assert inner_image_area(h) == tri.area
    for t in (F(1, 7), F(3, 2), F(5, 2)):
        assert plmap_eval(h.forward, square_point(t)) == g(t)


def test_nonconvex_twelve_gon():
    comb = poly((0, 0), (6, 0), (6, 3), (5, 3), (5, 1), (4, 1), (4, 3), (3, 3), (3, 1), (2, 1), (2, 3), (0, 3))
    g = uniform_boundary_map(comb, F(1, 3))
    h = extend_to_plane_homeo(g)
    assert plmap_verify(h.forward).ok
    for p, q in zip(h.forward.domain.points, h.forward.images):
        assert plmap_eval(h.inverse, q) == p
    for p, q in zip(h.inverse.domain.points, h.inverse.images):
        assert plmap_eval(h.forward, q) == p
    assert inner_image_area(h) == comb.area


def test_extension_errors():
    g = uniform_boundary_map(poly((0, 0), (5, 0), (0, 5)))
    with pytest.raises(BoxTooSmall):
        extend_to_plane_homeo(g, (-1, -1, 2, 2))
    bow = SimplePolygon(tuple(pt(x, y) for x, y in [(0, 0), (2, 2), (2, 0), (0, 2)]))
    with pytest.raises(NotSimple):
        extend_to_plane_homeo(BoundaryMap((0, 1, 2, 3), bow))
    cw = SimplePolygon(tuple(reversed(SQUARE.vertices)))
    with pytest.raises(CorrespondenceMismatch):
        extend_to_plane_homeo(BoundaryMap((0, 1, 2, 3), cw))


@pytest.mark.parametrize("seed", range(12))
def test_random_polygons(seed):
    rng = random.Random(seed)
    P = random_star_polygon(rng)
    g = uniform_boundary_map(P, F(rng.randint(0, 399), 100))
    h = extend_to_plane_homeo(g, check=False)
    assert verify_homeo(h) == []
    assert inner_image_area(h) == P.area


def test_reparametrization_composes():
    # a square-to-square reparametrization followed by a polygon map
    g1 = BoundaryMap((F(1, 2), F(3, 2), F(5, 2), F(7, 2)), SQUARE)
    target = poly((0, 0), (2, 0), (3, 2), (1, 3), (-1, 1))
    g2 = uniform_boundary_map(target)
    box = (-3, -3, 5, 5)
    h1, h2 = extend_to_plane_homeo(g1, box), extend_to_plane_homeo(g2, box)
    for k, t in enumerate(g1.params):
        corner = SQUARE.vertices[k]
        via = plmap_eval(h2.forward, plmap_eval(h1.forward, square_point(t)))
        assert via == g2(k)  # corner k sits at parameter k
        assert corner == square_point(k)


def test_earclip_with_straight_angles():
    pts = [pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 2), pt(1, 2), pt(0, 2)]
    assert len(triangulate_cycle(pts).triangles) == 4
