"""Constructive PL Schoenflies extension.

A boundary parametrization of a simple rational polygon by the unit square
is extended to a PL self-homeomorphism of a box that is the identity on the
box boundary. Every disk involved is mapped onto one common convex polygon
by a barycentric embedding; composing one embedding with the inverse of the
other gives the disk homeomorphism.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .complex import FiniteComplex2, surface_check
from .errors import (
    BoxTooSmall,
    CorrespondenceMismatch,
    DegenerateVertex,
    EmbeddingError,
    NonDisk,
    NotSimple,
    SelfIntersection,
)
from .geometry2d import (
    PLMap,
    Point2,
    PolygonalRegion,
    SimplePolygon,
    Triangulation2,
    convex_embed,
    orientation,
    plmap_compose,
    plmap_eval,
    plmap_invert,
    plmap_verify,
    rat,
    signed_area,
    triangulate_cycle,
    validate_simple,
)
from .geometry2d.plmap import boundary_cycles

_0 = rat(0)
_1 = rat(1)


# ---------------------------------------------------------------------------
# Jordan sides


@dataclass(frozen=True)
class Exterior:
    """The unbounded side of a polygon, optionally cut down to a box."""

    polygon: SimplePolygon
    box: Optional[PolygonalRegion] = None

    @property
    def region(self) -> Optional[PolygonalRegion]:
        if self.box is None:
            return None
        return PolygonalRegion(self.box.outer, (self.polygon.cw(),))

    def contains(self, p) -> bool:
        if self.polygon.contains(p) != -1:
            return False
        return self.box is None or self.box.locate(p) == 1


def jordan_sides(c, box=None):
    """(interior region, exterior descriptor) of a simple polygon."""
    poly = c if isinstance(c, SimplePolygon) else validate_simple(c)
    inner = PolygonalRegion(poly.ccw())
    if box is not None and not isinstance(box, PolygonalRegion):
        box = PolygonalRegion.rectangle(*box)
    return inner, Exterior(poly.ccw(), box)


# ---------------------------------------------------------------------------
# boundary maps


def square_point(t) -> Point2:
    """Arc-length parametrization of the unit square boundary, t in [0, 4)."""
    t = rat(t) % 4
    if t < 1:
        return Point2(t, _0)
    if t < 2:
        return Point2(_1, t - 1)
    if t < 3:
        return Point2(3 - t, _1)
    return Point2(_0, 4 - t)


@dataclass(frozen=True)
class BoundaryMap:
    """Breakpoint ``params[i]`` on the square boundary goes to ``target[i]``;
    the map is affine in the parameter between consecutive breakpoints."""

    params: tuple
    target: SimplePolygon

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(rat(p) for p in self.params))

    def validate(self) -> "BoundaryMap":
        ps = self.params
        if len(ps) != len(self.target):
            raise CorrespondenceMismatch(f"{len(ps)} breakpoints for {len(self.target)} polygon vertices")
        if not all(0 <= p < 4 for p in ps) or any(ps[i] >= ps[i + 1] for i in range(len(ps) - 1)):
            raise CorrespondenceMismatch("breakpoints must increase within [0, 4)")
        try:
            validate_simple(self.target.vertices)
        except (DegenerateVertex, SelfIntersection) as exc:
            raise NotSimple(str(exc)) from exc
        if not self.target.is_ccw():
            raise CorrespondenceMismatch("target polygon runs clockwise; the square boundary runs counterclockwise")
        return self

    def refined(self):
        """(square points, polygon points) with the square corners inserted."""
        ps = list(self.params)
        vs = list(self.target.vertices)
        n = len(ps)
        src, dst = [], []
        for i in range(n):
            a, b = ps[i], ps[(i + 1) % n] + (4 if i == n - 1 else 0)
            src.append(square_point(a))
            dst.append(vs[i])
            corner = math.floor(a) + 1
            while corner < b:
                s = (corner - a) / (b - a)
                src.append(square_point(corner))
                dst.append(vs[i] + (vs[(i + 1) % n] - vs[i]).scale(s))
                corner += 1
        return src, dst

    def __call__(self, t) -> Point2:
        t = rat(t) % 4
        ps = self.params
        n = len(ps)
        for i in range(n):
            a, b = ps[i], ps[(i + 1) % n]
            if i == n - 1:
                b += 4
            tt = t if t >= a else t + 4
            if a <= tt <= b:
                s = (tt - a) / (b - a)
                v, w = self.target.vertices[i], self.target.vertices[(i + 1) % n]
                return v + (w - v).scale(s)
        raise CorrespondenceMismatch(f"parameter {t} not covered")


def uniform_boundary_map(polygon, start=0) -> BoundaryMap:
    """Breakpoints spaced uniformly, the first at parameter ``start``."""
    poly = polygon if isinstance(polygon, SimplePolygon) else SimplePolygon(tuple(Point2(*map(rat, p)) for p in polygon))
    n = len(poly)
    params = [(rat(start) + rat(4 * k, n)) for k in range(n)]
    shift = min(range(n), key=lambda k: params[k] % 4)
    params = [p % 4 for p in params]
    order = list(range(shift, n)) + list(range(shift))
    return BoundaryMap(tuple(params[k] for k in order), SimplePolygon(tuple(poly.vertices[k] for k in order)))


# ---------------------------------------------------------------------------
# disk homeomorphisms


def _convex_targets(n):
    """n rational points in strictly convex position, counterclockwise."""
    pts = []
    for k in range(n):
        theta = 2 * math.pi * (k + 0.5) / n - math.pi
        t = rat(Fraction(math.tan(theta / 2)).limit_denominator(4 * n * n + 16))
        pts.append(Point2((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))
    for i in range(n):
        if orientation(pts[i - 1], pts[i], pts[(i + 1) % n]) <= 0:
            raise EmbeddingError("convex target construction failed")
    return pts


def _check_disk(tri: Triangulation2, name):
    K = FiniteComplex2.from_triangles(tri.triangles)
    kind = surface_check(K)
    if kind.kind != "Bordered" or kind.boundary_circles != 1 or K.euler != 1:
        raise NonDisk(f"{name} is not a triangulated disk ({kind.kind}, {kind.boundary_circles} boundary circles)")


def _cyclic_check(cycle, seq, name):
    n = len(cycle)
    if sorted(seq) != sorted(cycle):
        raise CorrespondenceMismatch(f"{name}: correspondence does not cover the boundary")
    k = cycle.index(seq[0])
    fwd = [cycle[(k + i) % n] for i in range(n)]
    if list(seq) != fwd:
        raise CorrespondenceMismatch(f"{name}: correspondence is not in counterclockwise boundary order")


def _compact(tri: Triangulation2, order):
    """Renumber so that vertices become 0..N-1; returns (triangles, boundary, old ids)."""
    used = sorted({v for t in tri.triangles for v in t})
    new = {v: k for k, v in enumerate(used)}
    return [tuple(new[v] for v in t) for t in tri.triangles], [new[v] for v in order], used


def disk_homeo(d1: Triangulation2, d2: Triangulation2, correspondence) -> PLMap:
    """PL homeomorphism d1 -> d2 sending boundary vertex i of d1 to j, for
    each (i, j) of ``correspondence`` (listed in counterclockwise order)."""
    _check_disk(d1, "source")
    _check_disk(d2, "target")
    pairs = list(correspondence)
    src = [i for i, _ in pairs]
    dst = [j for _, j in pairs]
    (c1,) = boundary_cycles(d1.triangles)
    (c2,) = boundary_cycles(d2.triangles)
    if len(src) != len(c1) or len(dst) != len(c2):
        raise CorrespondenceMismatch(f"boundary sizes {len(c1)} and {len(c2)} with {len(pairs)} pairs")
    _cyclic_check(list(c1), src, "source")
    _cyclic_check(list(c2), dst, "target")
    C = _convex_targets(len(pairs))
    tau1 = _barycentric(d1, src, C)
    tau2 = _barycentric(d2, dst, C)
    return plmap_compose(tau1, plmap_invert(tau2, check=False))


def _barycentric(d: Triangulation2, boundary, C) -> PLMap:
    """PLMap from the disk d onto the convex polygon C."""
    tris, bnd, old = _compact(d, boundary)
    emb = convex_embed(tris, bnd, C)
    # emb is oriented counterclockwise in C; the domain must agree
    pts = tuple(d.points[v] for v in old)
    dom_tris = list(emb.triangles)
    for t in dom_tris:
        if orientation(*(pts[v] for v in t)) <= 0:
            raise CorrespondenceMismatch("correspondence reverses orientation or a triangle is degenerate")
    dom = Triangulation2(pts, tuple(dom_tris), tuple(boundary_cycles(dom_tris)))
    return PLMap(dom, tuple(emb.points), 1)


# ---------------------------------------------------------------------------
# plane extension


@dataclass
class PLHomeo:
    box: PolygonalRegion
    forward: PLMap
    inverse: PLMap
    boundary_map: Optional[BoundaryMap] = None

    def __call__(self, p):
        return plmap_eval(self.forward, p)


def _box_bounds(box):
    if box is None:
        return None
    if isinstance(box, PolygonalRegion):
        xs = [p.x for p in box.outer.vertices]
        ys = [p.y for p in box.outer.vertices]
        return min(xs), min(ys), max(xs), max(ys)
    return tuple(rat(v) for v in box)


def default_box(g: BoundaryMap):
    xs = [p.x for p in g.target.vertices] + [_0, _1]
    ys = [p.y for p in g.target.vertices] + [_0, _1]
    m = max(max(xs) - min(xs), max(ys) - min(ys))
    lo = min(min(xs), min(ys)) - 1
    hi = lo + m + 3
    hi = max(hi, max(max(xs), max(ys)) + 1)
    return (lo, lo, hi, hi)


def _subdivide_path(path, count):
    """Insert points on a polyline until it has ``count`` vertices."""
    path = list(path)
    while len(path) < count:
        # split the longest segment (squared length; deterministic ties)
        k = max(range(len(path) - 1), key=lambda i: ((path[i + 1].x - path[i].x) ** 2 + (path[i + 1].y - path[i].y) ** 2, -i))
        a, b = path[k], path[k + 1]
        path.insert(k + 1, Point2((a.x + b.x) / 2, (a.y + b.y) / 2))
    return path


def _square_arc(p: Point2, x_end, x0, y0, x1, y1):
    """PL arc from p on the unit square boundary to (x_end, y1) outside the square."""
    delta = min(-x0, -y0, x1 - 1, y1 - 1) / 3
    lo, hi = -delta, 1 + delta
    nx = -1 if p.x == 0 else (1 if p.x == 1 else 0)
    ny = -1 if p.y == 0 else (1 if p.y == 1 else 0)
    q = Point2(p.x + nx * delta, p.y + ny * delta)
    if p.y == 1:
        path = [p] if p.x == x_end else [p, Point2(p.x, (1 + y1) / 2), Point2(x_end, (1 + y1) / 2)]
        return path + [Point2(x_end, y1)]
    path = [p, q]
    ring = [Point2(hi, lo), Point2(hi, hi)]  # bottom-right, top-right
    if q.y != hi:
        if q.x == lo:
            path += [Point2(lo, lo)] if q != Point2(lo, lo) else []
            path += ring
        elif q.y == lo:
            path += ring if q != ring[0] else ring[1:]
        else:  # right side
            path += ring[1:]
    mid = Point2(rat(1, 2), hi)
    if path[-1] != mid:
        path.append(mid)
    ymid = (hi + y1) / 2
    path.append(Point2(mid.x, ymid))
    if x_end != mid.x:
        path.append(Point2(x_end, ymid))
    path.append(Point2(x_end, y1))
    return path


def _box_corners_from(x0, y0, x1, y1, start: Point2):
    """Box boundary counterclockwise starting at a point on the top side."""
    # top side runs right-to-left in counterclockwise order
    return [start, Point2(x0, y1), Point2(x0, y0), Point2(x1, y0), Point2(x1, y1)]


def _cut_annulus(outer, arc, inner_cw):
    """Boundary cycle of an annulus cut open along ``arc``.

    ``outer`` runs counterclockwise around the box from arc[-1] back to a
    copy of it; ``inner_cw`` runs clockwise around the inner curve from arc[0].
    """
    down = list(reversed(arc[:-1]))  # arc interior, then a copy of the foot
    return list(outer) + down + list(inner_cw[1:]) + [inner_cw[0]] + list(arc[1:-1])


def extend_to_plane_homeo(g: BoundaryMap, box=None, check: bool = True) -> PLHomeo:
    g.validate()
    x0, y0, x1, y1 = _box_bounds(box) if box is not None else default_box(g)
    pts_all = list(g.target.vertices) + [Point2(_0, _0), Point2(_1, _1)]
    if not all(x0 < p.x < x1 and y0 < p.y < y1 for p in pts_all):
        raise BoxTooSmall(f"box {(x0, y0, x1, y1)} does not strictly contain the square and the polygon")
    src, dst = g.refined()
    n = len(src)

    # inner disks, both ear-clipped (equal inputs give the identity)
    sq = triangulate_cycle(src)
    pg = triangulate_cycle(dst)
    inner = disk_homeo(sq, pg, [(i, i) for i in range(n)])

    # annuli, cut along arcs that end at the same box point
    top = max(range(n), key=lambda i: (dst[i].y, dst[i].x))
    arc2 = [dst[top], Point2(dst[top].x, y1)]
    arc1 = _square_arc(src[top], dst[top].x, x0, y0, x1, y1)
    m = max(len(arc1), len(arc2))
    arc1 = _subdivide_path(arc1, m)
    arc2 = _subdivide_path(arc2, m)
    end = arc2[-1]
    outer = _box_corners_from(x0, y0, x1, y1, end) + [end]
    inner1 = [src[(top - k) % n] for k in range(n)]  # clockwise from the arc foot
    inner2 = [dst[(top - k) % n] for k in range(n)]
    cyc1 = _cut_annulus(outer, arc1, inner1)
    cyc2 = _cut_annulus(outer, arc2, inner2)
    a1 = triangulate_cycle(cyc1)
    a2 = triangulate_cycle(cyc2)
    ann = disk_homeo(a1, a2, [(i, i) for i in range(len(cyc1))])

    forward = _merge(inner, ann)
    inverse = plmap_invert(forward, check=False)
    box_region = PolygonalRegion.rectangle(x0, y0, x1, y1)
    h = PLHomeo(box_region, forward, inverse, g)
    if check:
        problems = verify_homeo(h)
        if problems:
            raise EmbeddingError("; ".join(problems))
    return h


def _merge(*maps) -> PLMap:
    """Union of PL maps whose domains meet along shared vertices."""
    index, points, images, tris = {}, [], [], []
    for f in maps:
        ids = []
        for p, q in zip(f.domain.points, f.images):
            if p not in index:
                index[p] = len(points)
                points.append(p)
                images.append(q)
            elif images[index[p]] != q:
                raise EmbeddingError(f"maps disagree at {p}")
            ids.append(index[p])
        tris.extend(tuple(ids[v] for v in t) for t in f.domain.triangles)
    dom = Triangulation2(tuple(points), tuple(tris), tuple(boundary_cycles(tris)))
    return PLMap(dom, tuple(images), 1)


# ---------------------------------------------------------------------------
# verification


def verify_homeo(h: PLHomeo) -> list:
    """Exact checks: PLMap invariants, boundary restriction to g, identity on
    the box boundary and a two-sided inverse on all vertices."""
    problems = []
    rep = plmap_verify(h.forward)
    problems += list(rep.problems) + [f"image triangles {o} overlap" for o in rep.overlaps]
    if problems:
        return problems
    f = h.forward
    x0, y0, x1, y1 = _box_bounds(h.box)
    for p, q in zip(f.domain.points, f.images):
        if p.x in (x0, x1) or p.y in (y0, y1):
            if p != q:
                problems.append(f"box boundary point {p} moved to {q}")
    g = h.boundary_map
    if g is not None:
        src, dst = g.refined()
        on_square = [p for p in f.domain.points if _on_square(p)]
        for p in on_square:
            if p not in src:
                problems.append(f"extra vertex {p} on the square boundary")
        img = dict(zip(f.domain.points, f.images))
        for p, q in zip(src, dst):
            if img.get(p) != q:
                problems.append(f"square point {p} maps to {img.get(p)}, expected {q}")
    inv = dict(zip(h.inverse.domain.points, h.inverse.images))
    for p, q in zip(f.domain.points, f.images):
        if inv.get(q) != p:
            problems.append(f"inverse does not undo the vertex {p}")
            break
    total = sum((abs(signed_area(f.image_triangle(t))) for t in range(len(f.domain.triangles))), _0)
    if total != (x1 - x0) * (y1 - y0):
        problems.append("image area differs from the box area")
    return problems


def _on_square(p):
    inside = 0 <= p.x <= 1 and 0 <= p.y <= 1
    return inside and (p.x in (0, 1) or p.y in (0, 1))


def inner_image_area(h: PLHomeo) -> Fraction:
    """Total area of the images of the domain triangles inside the square."""
    f = h.forward
    total = _0
    for t, (i, j, k) in enumerate(f.domain.triangles):
        P = f.domain.triangle_points(t)
        cx = (P[0].x + P[1].x + P[2].x) / 3
        cy = (P[0].y + P[1].y + P[2].y) / 3
        if 0 < cx < 1 and 0 < cy < 1:
            total += abs(signed_area(f.image_triangle(t)))
    return total
