"""Exact segment arrangements inside a polygonal region."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key

from .core import (
    Point2,
    PolygonalRegion,
    Segment,
    _param,
    on_segment,
    point_in_polygon,
    rat,
    segment_intersection,
    signed_area2,
)


@dataclass(frozen=True)
class Face:
    boundary: tuple  # counterclockwise vertex indices
    holes: tuple = ()  # clockwise inner cycles
    sample: Point2 = None  # a point strictly inside the face


@dataclass
class Arrangement:
    vertices: list
    edges: list
    faces: list
    components: int = 1
    boundary_edges: set = field(default_factory=set)

    @property
    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)


def split_segments(segments):
    """Cut segments at every mutual intersection; collinear overlaps merge.

    Returns (points, edge index pairs) with points deduplicated.
    """
    segs = [(Point2(*a), Point2(*b)) for a, b in segments if a != b]
    cuts = [{s[0], s[1]} for s in segs]
    for i in range(len(segs)):
        a, b = segs[i]
        ax0, ax1 = min(a.x, b.x), max(a.x, b.x)
        ay0, ay1 = min(a.y, b.y), max(a.y, b.y)
        for j in range(i + 1, len(segs)):
            c, d = segs[j]
            if max(c.x, d.x) < ax0 or min(c.x, d.x) > ax1 or max(c.y, d.y) < ay0 or min(c.y, d.y) > ay1:
                continue
            x = segment_intersection(segs[i], segs[j])
            if x is None:
                continue
            if isinstance(x, Segment):
                cuts[i].update(x)
                cuts[j].update(x)
            else:
                cuts[i].add(x)
                cuts[j].add(x)
    index = {}
    points = []
    edges = set()
    for (a, b), pts in zip(segs, cuts):
        ordered = sorted(pts, key=lambda p: _param(p, a, b))
        ids = []
        for p in ordered:
            if p not in index:
                index[p] = len(points)
                points.append(p)
            ids.append(index[p])
        for u, v in zip(ids, ids[1:]):
            if u != v:
                edges.add((min(u, v), max(u, v)))
    return points, sorted(edges)


def _half_plane(d):
    return 0 if (d.y > 0 or (d.y == 0 and d.x > 0)) else 1


def _angle_cmp(d1, d2):
    h1, h2 = _half_plane(d1), _half_plane(d2)
    if h1 != h2:
        return h1 - h2
    c = d1.x * d2.y - d1.y * d2.x
    return -1 if c > 0 else (1 if c < 0 else 0)


def trace_cycles(points, edges):
    """Trace all face cycles, each keeping its face on the left."""
    out = {i: [] for i in range(len(points))}
    for u, v in edges:
        out[u].append(v)
        out[v].append(u)
    order = {}
    for u, nbrs in out.items():
        nbrs.sort(key=cmp_to_key(lambda a, b: _angle_cmp(points[a] - points[u], points[b] - points[u])))
        order[u] = {w: k for k, w in enumerate(nbrs)}
    seen = set()
    cycles = []
    for u, v in edges:
        for start in ((u, v), (v, u)):
            if start in seen:
                continue
            cyc = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                a, b = cur
                cyc.append(a)
                nb = out[b]
                k = order[b][a]
                nxt = nb[(k - 1) % len(nb)]  # clockwise neighbour of the reverse edge
                cur = (b, nxt)
            cycles.append(cyc)
    return cycles


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return parent, find


def sample_left(points, edges, a: Point2, b: Point2) -> Point2:
    """A point strictly left of the midpoint of a->b with no edge in between."""
    m = Point2((a.x + b.x) / 2, (a.y + b.y) / 2)
    n = Point2(a.y - b.y, b.x - a.x)  # left normal
    far = m + n
    best = rat(1)
    for u, v in edges:
        p, q = points[u], points[v]
        x = segment_intersection((m, far), (p, q))
        if x is None:
            continue
        cands = list(x) if isinstance(x, Segment) else [x]
        for c in cands:
            t = _param(c, m, far)
            if 0 < t < best:
                best = t
    return m + n.scale(best / 2)


def arrangement(region: PolygonalRegion, segments=()) -> Arrangement:
    """Planar subdivision of ``region`` cut by ``segments``.

    Faces are the connected components of the region minus all segments; each
    is reported with its counterclockwise outer cycle, clockwise inner cycles
    and an interior sample point.
    """
    boundary = region.boundary_edges()
    points, edges = split_segments(list(boundary) + [tuple(s) for s in segments])
    bset = set()
    directed_in = set()
    for a, b in boundary:
        for u, v in edges:
            p, q = points[u], points[v]
            if on_segment(p, a, b) and on_segment(q, a, b):
                bset.add((u, v))
                # orientation that keeps the region on the left
                if _param(q, a, b) > _param(p, a, b):
                    directed_in.add((u, v))
                else:
                    directed_in.add((v, u))
    cycles = trace_cycles(points, edges)

    def in_region(cyc):
        n = len(cyc)
        for k in range(n):
            u, v = cyc[k], cyc[(k + 1) % n]
            key = (min(u, v), max(u, v))
            if key not in bset or (u, v) in directed_in:
                return True
        return False

    kept = [c for c in cycles if in_region(c)]
    outers = [c for c in kept if signed_area2([points[i] for i in c]) > 0]
    inners = [c for c in kept if signed_area2([points[i] for i in c]) <= 0]
    holes_of = {k: [] for k in range(len(outers))}
    for cyc in inners:
        probe = points[cyc[0]]
        best = None
        for k, oc in enumerate(outers):
            poly = [points[i] for i in oc]
            if point_in_polygon(probe, poly) > 0:
                area = signed_area2(poly)
                if best is None or area < best[0]:
                    best = (area, k)
        if best is not None:
            holes_of[best[1]].append(tuple(cyc))
    faces = []
    for k, oc in enumerate(outers):
        a, b = points[oc[0]], points[oc[1]]
        faces.append(Face(tuple(oc), tuple(holes_of[k]), sample_left(points, edges, a, b)))
    _, find = _components(len(points), edges)
    ncomp = len({find(i) for i in range(len(points))})
    return Arrangement(points, edges, faces, ncomp, bset)
