"""Ear clipping for weakly simple cycles, with hole bridging for regions."""
from __future__ import annotations

from ..errors import InvalidRegion
from .core import (
    PolygonalRegion,
    Segment,
    Triangulation2,
    cross,
    on_segment,
    orientation,
    segment_intersection,
)


def _in_closed_triangle(p, a, b, c) -> bool:
    return cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0


def earclip(points, cycle) -> list:
    """Triangulate a counterclockwise, weakly simple index cycle.

    Repeated positions (bridge copies) and straight-angle vertices are
    allowed; every index of ``cycle`` appears in the output and no new
    vertices are introduced.
    """
    work = list(cycle)
    tris = []
    while len(work) > 3:
        n = len(work)
        for i in range(n):
            ip, iv, inx = work[i - 1], work[i], work[(i + 1) % n]
            a, b, c = points[ip], points[iv], points[inx]
            if orientation(a, b, c) <= 0:
                continue
            corners = (a, b, c)
            blocked = False
            for w in work:
                q = points[w]
                if q in corners:
                    continue
                if _in_closed_triangle(q, a, b, c):
                    blocked = True
                    break
            if blocked:
                continue
            tris.append((ip, iv, inx))
            del work[i]
            break
        else:
            raise InvalidRegion("ear clipping found no ear; cycle is not weakly simple")
    a, b, c = (points[i] for i in work)
    if orientation(a, b, c) <= 0:
        raise InvalidRegion("final triangle is degenerate")
    tris.append(tuple(work))
    return tris


def _in_wedge(prev, v, nxt, h) -> bool:
    # interior wedge of a counterclockwise cycle at v
    left_of_out = orientation(v, nxt, h) > 0
    left_of_in = orientation(prev, v, h) > 0
    turn = orientation(prev, v, nxt)
    if turn > 0:
        return left_of_out and left_of_in
    if turn < 0:
        return left_of_out or left_of_in
    return left_of_out


def bridge_holes(points, outer, holes) -> list:
    """Merge hole cycles (clockwise) into the outer cycle (counterclockwise).

    Each hole's leftmost vertex is joined to the nearest visible vertex of the
    partially merged cycle; ties go to the lexicographically least point.
    """
    merged = list(outer)
    pending = sorted(holes, key=lambda h: min((points[i].x, points[i].y) for i in h))
    edges = []
    for cyc in [outer, *holes]:
        edges.extend((points[cyc[k]], points[cyc[(k + 1) % len(cyc)]]) for k in range(len(cyc)))
    for hole in pending:
        start = min(range(len(hole)), key=lambda k: (points[hole[k]].x, points[hole[k]].y))
        hi = hole[start]
        h = points[hi]
        best = None
        for vi in dict.fromkeys(merged):
            v = points[vi]
            if v == h:
                continue
            if not _visible(h, v, edges, points):
                continue
            key = ((v.x - h.x) ** 2 + (v.y - h.y) ** 2, v.x, v.y)
            if best is None or key < best[0]:
                best = (key, vi)
        if best is None:
            raise InvalidRegion("no visible bridge vertex for hole")
        vi = best[1]
        v = points[vi]
        pos = None
        n = len(merged)
        for k in range(n):
            if merged[k] == vi and _in_wedge(points[merged[k - 1]], v, points[merged[(k + 1) % n]], h):
                pos = k
                break
        if pos is None:
            raise InvalidRegion("bridge vertex has no admissible wedge")
        loop = hole[start:] + hole[:start] + [hi]
        merged = merged[: pos + 1] + loop + [vi] + merged[pos + 1 :]
        edges.append((h, v))
    return merged


def _visible(h, v, edges, points) -> bool:
    for a, b in edges:
        x = segment_intersection((h, v), (a, b))
        if x is None:
            continue
        if isinstance(x, Segment):
            return False
        if x != h and x != v:
            return False
    return True


def triangulate_polygon(region: PolygonalRegion) -> Triangulation2:
    """Triangulate a closed polygonal region without adding vertices."""
    points = []
    index = {}

    def idx(p):
        if p not in index:
            index[p] = len(points)
            points.append(p)
        return index[p]

    outer = [idx(p) for p in region.outer.vertices]
    holes = [[idx(p) for p in h.vertices] for h in region.holes]
    if len(points) != sum(1 for _ in region.vertices()):
        raise InvalidRegion("region vertices are not distinct")
    cycle = bridge_holes(points, outer, holes) if holes else outer
    tris = earclip(points, cycle)
    return Triangulation2(tuple(points), tuple(tris), (tuple(outer), *map(tuple, holes)))


def triangulate_cycle(points) -> Triangulation2:
    """Triangulate a weakly simple counterclockwise point cycle, keeping
    repeated positions as distinct vertices."""
    pts = tuple(points)
    cyc = list(range(len(pts)))
    tris = earclip(pts, cyc)
    return Triangulation2(pts, tuple(tris), (tuple(cyc),))


def point_on_boundary(p, region: PolygonalRegion) -> bool:
    return any(on_segment(p, a, b) for a, b in region.boundary_edges())
