"""Exact rational points, predicates, simple polygons and polygonal regions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq
from typing import NamedTuple, Sequence, Union

from ..errors import DegenerateVertex, InvalidRegion, SelfIntersection

# GMP rationals: exact like Fraction, about an order of magnitude faster,
# and interoperable with Fraction in arithmetic, comparison and hashing.
Rat = type(mpq())


_ZERO = mpq(0)
_ONE = mpq(1)


def rat(value, den=None) -> Rat:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact rational.

    Floats are rejected because they silently carry binary rounding.
    """
    if den is not None:
        return mpq(rat(value)) / rat(den)
    if isinstance(value, Rat):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    return mpq(value)


class Point2(NamedTuple):
    x: Rat
    y: Rat

    def __sub__(self, other):
        return Point2(self.x - other.x, self.y - other.y)

    def __add__(self, other):
        return Point2(self.x + other.x, self.y + other.y)

    def scale(self, s) -> "Point2":
        return Point2(self.x * s, self.y * s)

    def __repr__(self):
        return f"Point2({self.x}, {self.y})"


def pt(x, y) -> Point2:
    return Point2(rat(x), rat(y))


class Segment(NamedTuple):
    a: Point2
    b: Point2


def cross(o: Point2, a: Point2, b: Point2) -> Rat:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orientation(a: Point2, b: Point2, c: Point2) -> int:
    d = cross(a, b, c)
    return (d > 0) - (d < 0)


def on_segment(p: Point2, a: Point2, b: Point2) -> bool:
    """Closed-segment membership."""
    if cross(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def _param(p: Point2, a: Point2, b: Point2) -> Rat:
    # parameter of p along a->b, assuming collinear
    if a.x != b.x:
        return (p.x - a.x) / (b.x - a.x)
    return (p.y - a.y) / (b.y - a.y)


def segment_intersection(s1, s2) -> Union[None, Point2, Segment]:
    """Exact intersection of two closed segments.

    Returns None, the single crossing point, or the overlapping sub-segment.
    """
    a, b = s1
    c, d = s2
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    if d1 == 0 and d2 == 0:
        # collinear: overlap along the common line
        if a == b:
            return a if on_segment(a, c, d) else None
        tc, td = _param(c, a, b), _param(d, a, b)
        lo = max(_ZERO, min(tc, td))
        hi = min(_ONE, max(tc, td))
        if lo > hi:
            return None
        p = a + (b - a).scale(lo)
        q = a + (b - a).scale(hi)
        return p if lo == hi else Segment(p, q)
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
        return None
    if (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
        return None
    # lines cross at a single point within both segments
    t = d3 / (d3 - d4)
    return a + (b - a).scale(t)


def segments_cross_properly(a, b, c, d) -> bool:
    """Interiors cross at a single point that is an endpoint of neither."""
    o1, o2 = orientation(a, b, c), orientation(a, b, d)
    o3, o4 = orientation(c, d, a), orientation(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def signed_area2(points: Sequence[Point2]) -> Rat:
    """Twice the signed (shoelace) area; positive for counterclockwise."""
    s = _ZERO
    n = len(points)
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        s += p.x * q.y - q.x * p.y
    return s


def signed_area(points: Sequence[Point2]) -> Rat:
    return signed_area2(points) / 2


def point_in_polygon(p: Point2, poly: Sequence[Point2]) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (crossing number)."""
    n = len(poly)
    inside = False
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if on_segment(p, a, b):
            return 0
        if (a.y > p.y) != (b.y > p.y):
            x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x > p.x:
                inside = not inside
    return 1 if inside else -1


@dataclass(frozen=True)
class SimplePolygon:
    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    @property
    def area(self) -> Rat:
        return abs(signed_area(self.vertices))

    def is_ccw(self) -> bool:
        return signed_area2(self.vertices) > 0

    def ccw(self) -> "SimplePolygon":
        return self if self.is_ccw() else SimplePolygon(tuple(reversed(self.vertices)))

    def cw(self) -> "SimplePolygon":
        return self.ccw().reversed()

    def reversed(self) -> "SimplePolygon":
        return SimplePolygon(tuple(reversed(self.vertices)))

    def contains(self, p: Point2) -> int:
        return point_in_polygon(p, self.vertices)

    def bbox(self):
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


def validate_simple(points) -> SimplePolygon:
    """Check simplicity of a closed polygonal curve and return it.

    Raises DegenerateVertex for repeated or collinear consecutive vertices and
    SelfIntersection for any pair of non-adjacent edges that touch.
    """
    vs = tuple(p if isinstance(p, Point2) else pt(*p) for p in points)
    n = len(vs)
    if n < 3:
        raise DegenerateVertex(0)
    for i in range(n):
        if vs[i] == vs[(i + 1) % n]:
            raise DegenerateVertex((i + 1) % n)
        if orientation(vs[i - 1], vs[i], vs[(i + 1) % n]) == 0:
            raise DegenerateVertex(i)
    edges = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segment_intersection(edges[i], edges[j]) is not None:
                raise SelfIntersection((i, j))
    return SimplePolygon(vs)


@dataclass(frozen=True)
class PolygonalRegion:
    """Closed polygon minus the open interiors of disjoint holes.

    The outer boundary is stored counterclockwise and holes clockwise, so the
    region always lies to the left of every boundary edge.
    """

    outer: SimplePolygon
    holes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "outer", self.outer.ccw())
        object.__setattr__(self, "holes", tuple(h.cw() for h in self.holes))

    @classmethod
    def from_points(cls, outer, holes=()):
        return cls(validate_simple(outer), tuple(validate_simple(h) for h in holes))

    @classmethod
    def rectangle(cls, x0, y0, x1, y1):
        x0, y0, x1, y1 = map(rat, (x0, y0, x1, y1))
        return cls(SimplePolygon((Point2(x0, y0), Point2(x1, y0), Point2(x1, y1), Point2(x0, y1))))

    @property
    def area(self) -> Rat:
        return self.outer.area - sum((h.area for h in self.holes), _ZERO)

    def boundary_edges(self):
        out = list(self.outer.edges())
        for h in self.holes:
            out.extend(h.edges())
        return out

    def vertices(self):
        out = list(self.outer.vertices)
        for h in self.holes:
            out.extend(h.vertices)
        return out

    def locate(self, p: Point2) -> int:
        """+1 interior, 0 boundary, -1 exterior."""
        s = self.outer.contains(p)
        if s <= 0:
            return s
        for h in self.holes:
            t = h.contains(p)
            if t == 0:
                return 0
            if t > 0:
                return -1
        return 1

    def bbox(self):
        return self.outer.bbox()

    def validate(self) -> "PolygonalRegion":
        """Raise InvalidRegion unless holes sit strictly inside and apart."""
        validate_simple(self.outer.vertices)
        for h in self.holes:
            validate_simple(h.vertices)
        for k, h in enumerate(self.holes):
            if any(self.outer.contains(v) <= 0 for v in h.vertices):
                raise InvalidRegion(f"hole {k} is not strictly inside the outer boundary")
            for e in h.edges():
                for f in self.outer.edges():
                    if segment_intersection(e, f) is not None:
                        raise InvalidRegion(f"hole {k} touches the outer boundary")
            for m in range(k + 1, len(self.holes)):
                g = self.holes[m]
                for e in h.edges():
                    for f in g.edges():
                        if segment_intersection(e, f) is not None:
                            raise InvalidRegion(f"holes {k} and {m} touch")
                if g.contains(h.vertices[0]) > 0 or h.contains(g.vertices[0]) > 0:
                    raise InvalidRegion(f"holes {k} and {m} are nested")
        return self


@dataclass(frozen=True)
class Triangulation2:
    """Points, counterclockwise index triangles and boundary index cycles."""

    points: tuple
    triangles: tuple
    boundary: tuple = ()

    def triangle_points(self, t):
        i, j, k = self.triangles[t]
        return self.points[i], self.points[j], self.points[k]

    @property
    def area(self) -> Rat:
        return sum((cross(*self.triangle_points(t)) for t in range(len(self.triangles))), _ZERO) / 2

    def edges(self):
        out = set()
        for a, b, c in self.triangles:
            for u, v in ((a, b), (b, c), (c, a)):
                out.add((min(u, v), max(u, v)))
        return out
