"""Finite PL atlases: validation, Hausdorff and compactness tests,
saturation, rectangle refinement and triangulation.

A chart is an open polygonal region (the interior of a PolygonalRegion).
The overlap U_ij is a tuple of pieces inside chart i and the transition
phi_ij is a PLMap whose domain triangulates the closures of those pieces,
so every transition comes with its continuous extension to the frontier.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .complex import FiniteComplex2, surface_check
from .errors import AtlasError, Disconnected, FaceNotDisk, NotHausdorff
from .exhaustion import ExhaustionView, ExplicitRecipe
from .geometry2d import (
    PLMap,
    Point2,
    PolygonalRegion,
    Triangulation2,
    arrangement,
    cross,
    on_segment,
    plmap_compose,
    point_in_polygon,
    rat,
    segment_intersection,
    signed_area2,
    triangulate_polygon,
)
from .geometry2d.core import Segment, _param
from .geometry2d.plmap import _assemble, _ccw, apply_affine, boundary_cycles, clip_convex, invert_affine

IDENTITY = (rat(1), rat(0), rat(0), rat(1), rat(0), rat(0))


@dataclass
class PLAtlas:
    charts: tuple
    overlaps: dict  # (i, j) -> tuple of PolygonalRegion pieces inside chart i
    transitions: dict  # (i, j) -> PLMap from the closure of U_ij onto the closure of U_ji
    name: str = ""

    def __len__(self):
        return len(self.charts)

    def pairs(self):
        return sorted(self.transitions)


@dataclass(frozen=True)
class SurfacePoint:
    chart: int
    point: Point2


def surface_point(a: PLAtlas, chart: int, p) -> SurfacePoint:
    p = Point2(rat(p[0]), rat(p[1]))
    if a.charts[chart].locate(p) <= 0:
        raise AtlasError(f"{p} is not inside chart {chart}")
    return SurfacePoint(chart, p)


# ---------------------------------------------------------------------------
# construction


def _merge_triangulations(tris) -> Triangulation2:
    points, triangles = [], []
    for t in tris:
        off = len(points)
        points.extend(t.points)
        triangles.extend(tuple(off + v for v in tri) for tri in t.triangles)
    return Triangulation2(tuple(points), tuple(triangles), tuple(boundary_cycles(triangles)))


def _det(A):
    return A[0] * A[3] - A[1] * A[2]


def affine_transition(pieces, affines) -> PLMap:
    """The PLMap equal to ``affines[k]`` on ``pieces[k]``."""
    tris = [triangulate_polygon(p) for p in pieces]
    dom = _merge_triangulations(tris)
    images = []
    for t, A in zip(tris, affines):
        images.extend(apply_affine(A, q) for q in t.points)
    signs = {1 if _det(A) > 0 else -1 for A in affines}
    return PLMap(dom, tuple(images), signs.pop() if len(signs) == 1 else 0)


def _image_region(piece: PolygonalRegion, A) -> PolygonalRegion:
    from .geometry2d import SimplePolygon

    outer = SimplePolygon(tuple(apply_affine(A, p) for p in piece.outer.vertices))
    holes = tuple(SimplePolygon(tuple(apply_affine(A, p) for p in h.vertices)) for h in piece.holes)
    return PolygonalRegion(outer, holes)


def atlas_from_gluings(charts, gluings, name: str = "") -> PLAtlas:
    """Build an atlas from (i, j, piece, affine) gluings.

    Each gluing sends ``piece`` (inside chart i) affinely into chart j; the
    reverse direction is filled in with the inverse map.
    """
    by_pair = defaultdict(list)
    for i, j, piece, A in gluings:
        A = tuple(rat(x) for x in A)
        by_pair[(i, j)].append((piece, A))
        by_pair[(j, i)].append((_image_region(piece, A), invert_affine(A)))
    overlaps, transitions = {}, {}
    for key in sorted(by_pair):
        pieces = tuple(p for p, _ in by_pair[key])
        overlaps[key] = pieces
        transitions[key] = affine_transition(pieces, [A for _, A in by_pair[key]])
    return PLAtlas(tuple(charts), overlaps, transitions, name)


def _translation(tx, ty):
    return (1, 0, 0, 1, tx, ty)


def _rect_meet(r, s):
    x0, y0 = max(r[0], s[0]), max(r[1], s[1])
    x1, y1 = min(r[2], s[2]), min(r[3], s[3])
    return (x0, y0, x1, y1) if x0 < x1 and y0 < y1 else None


def translation_atlas(rects, periods=(1, 1), name: str = "") -> PLAtlas:
    """Open rectangles in the plane modulo the lattice spanned by ``periods``."""
    rects = [tuple(rat(v) for v in r) for r in rects]
    px, py = rat(periods[0]), rat(periods[1])
    gluings = []
    for i, r in enumerate(rects):
        for j in range(i + 1, len(rects)):
            s = rects[j]
            for a in (-1, 0, 1):
                for b in (-1, 0, 1):
                    tx, ty = a * px, b * py
                    m = _rect_meet(r, (s[0] - tx, s[1] - ty, s[2] - tx, s[3] - ty))
                    if m is not None:
                        gluings.append((i, j, PolygonalRegion.rectangle(*m), _translation(tx, ty)))
    charts = [PolygonalRegion.rectangle(*r) for r in rects]
    return atlas_from_gluings(charts, gluings, name)


def flat_torus_atlas() -> PLAtlas:
    s = rat(3, 4)
    h = rat(1, 2)
    rects = [(x, y, x + s, y + s) for y in (0, h) for x in (0, h)]
    return translation_atlas(rects, (1, 1), "flat_torus")


def open_square_atlas(side=1) -> PLAtlas:
    return PLAtlas((PolygonalRegion.rectangle(0, 0, side, side),), {}, {}, "open_square")


def annulus_atlas() -> PLAtlas:
    """A strip of two rectangles whose ends are glued by translations."""
    R = PolygonalRegion.rectangle(0, 0, 2, 1)
    gl = [
        (0, 1, PolygonalRegion.rectangle(rat(3, 2), 0, 2, 1), _translation(rat(-3, 2), 0)),
        (0, 1, PolygonalRegion.rectangle(0, 0, rat(1, 2), 1), _translation(rat(3, 2), 0)),
    ]
    return atlas_from_gluings([R, R], gl, "open_annulus")


def mobius_atlas() -> PLAtlas:
    """As the annulus, but one end is glued with a flip."""
    R = PolygonalRegion.rectangle(0, 0, 2, 1)
    gl = [
        (0, 1, PolygonalRegion.rectangle(rat(3, 2), 0, 2, 1), _translation(rat(-3, 2), 0)),
        (0, 1, PolygonalRegion.rectangle(0, 0, rat(1, 2), 1), (1, 0, 0, -1, rat(3, 2), 1)),
    ]
    return atlas_from_gluings([R, R], gl, "open_mobius")


def doubled_origin_atlas() -> PLAtlas:
    """Two squares glued by the identity off a small closed square about the
    origin: the origin region is doubled."""
    R = PolygonalRegion.rectangle(-1, -1, 1, 1)
    q = rat(1, 4)
    hole = PolygonalRegion.rectangle(-q, -q, q, q).outer
    piece = PolygonalRegion(R.outer, (hole,))
    return atlas_from_gluings([R, R], [(0, 1, piece, IDENTITY)], "doubled_origin")


def disjoint_squares_atlas(n: int = 2) -> PLAtlas:
    return PLAtlas(tuple(PolygonalRegion.rectangle(0, 0, 1, 1) for _ in range(n)), {}, {}, f"disjoint_squares({n})")


def builtin_atlases(name: str) -> PLAtlas:
    table = {
        "flat_torus": flat_torus_atlas,
        "open_square": open_square_atlas,
        "open_annulus": annulus_atlas,
        "open_mobius": mobius_atlas,
        "doubled_origin": doubled_origin_atlas,
        "disjoint_squares": disjoint_squares_atlas,
    }
    if name not in table:
        from .errors import UnknownName

        raise UnknownName(f"no builtin atlas {name!r}; known: {', '.join(sorted(table))}")
    return table[name]()


# ---------------------------------------------------------------------------
# small exact helpers


def _interior_intervals(a: Point2, b: Point2, region: PolygonalRegion):
    """Open parameter intervals of the segment a->b lying in the interior of
    ``region``."""
    ts = {rat(0), rat(1)}
    for e in region.boundary_edges():
        x = segment_intersection((a, b), e)
        if x is None:
            continue
        for p in (x if isinstance(x, Segment) else (x,)):
            ts.add(_param(p, a, b))
    ts = sorted(ts)
    out = []
    for t0, t1 in zip(ts, ts[1:]):
        tm = (t0 + t1) / 2
        if region.locate(Point2(a.x + (b.x - a.x) * tm, a.y + (b.y - a.y) * tm)) > 0:
            out.append((t0, t1))
    return out


def _lerp(a, b, t):
    return Point2(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)


def _clip_segment(a: Point2, b: Point2, tri):
    """Parameter range of a->b inside a closed counterclockwise triangle."""
    t0, t1 = rat(0), rat(1)
    dx, dy = b.x - a.x, b.y - a.y
    for k in range(3):
        p, q = tri[k], tri[(k + 1) % 3]
        c0 = cross(p, q, a)
        c1 = (q.x - p.x) * dy - (q.y - p.y) * dx
        if c1 == 0:
            if c0 < 0:
                return None
            continue
        t = -c0 / c1
        if c1 > 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    return (t0, t1) if t0 < t1 else None


def push_segment(f: PLMap, a: Point2, b: Point2):
    """Image under ``f`` of the part of a->b inside f's domain, as segments."""
    out = []
    for t in range(len(f.domain.triangles)):
        r = _clip_segment(a, b, f.domain.triangle_points(t))
        if r is None:
            continue
        A = f.affine(t)
        out.append((apply_affine(A, _lerp(a, b, r[0])), apply_affine(A, _lerp(a, b, r[1]))))
    return out


def _domain_boundary(f: PLMap):
    pts = f.domain.points
    out = []
    for cyc in f.domain.boundary:
        n = len(cyc)
        out.extend((cyc[k], cyc[(k + 1) % n]) for k in range(n))
    return [(u, v) for u, v in out if u != v and pts[u] != pts[v]]


def in_open_domain(f: PLMap, p: Point2) -> bool:
    if f.locate(p) is None:
        return False
    pts = f.domain.points
    return not any(on_segment(p, pts[u], pts[v]) for u, v in _domain_boundary(f))


def _piece_inside(piece: PolygonalRegion, chart: PolygonalRegion) -> bool:
    """Closed containment of a polygonal piece in the closure of a chart."""
    if any(chart.locate(v) < 0 for v in piece.vertices()):
        return False
    for a, b in chart.boundary_edges():
        if _interior_intervals(a, b, piece):
            return False
    tri = triangulate_polygon(piece)
    p, q, r = tri.triangle_points(0)
    c = Point2((p.x + q.x + r.x) / 3, (p.y + q.y + r.y) / 3)
    return chart.locate(c) > 0


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class AtlasCheck:
    ok: bool
    condition: str = ""  # "(i)" .. "(iv)" or "pairs"
    indices: tuple = ()
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return f"violation{self.condition} at {self.indices}: {self.detail}"


def _is_identity(f: PLMap) -> bool:
    return all(p == q for p, q in zip(f.domain.points, f.images))


def _area(f: PLMap):
    return f.domain.area


def validate_atlas(a: PLAtlas) -> AtlasCheck:
    n = len(a.charts)
    for i, j in a.pairs():
        if not (0 <= i < n and 0 <= j < n):
            return AtlasCheck(False, "pairs", (i, j), "chart index out of range")
        if (j, i) not in a.transitions:
            return AtlasCheck(False, "(iii)", (i, j), "reverse transition missing")
    # (i) overlaps lie in their charts and the transitions cover them
    for (i, j), f in sorted(a.transitions.items()):
        if i == j:
            continue
        pieces = a.overlaps.get((i, j), ())
        for k, piece in enumerate(pieces):
            if not _piece_inside(piece, a.charts[i]):
                return AtlasCheck(False, "(i)", (i, j), f"overlap piece {k} leaves chart {i}")
        if _area(f) != sum((p.area for p in pieces), rat(0)):
            return AtlasCheck(False, "(i)", (i, j), "transition domain differs from the overlap")
        for t in range(len(f.domain.triangles)):
            p, q, r = f.domain.triangle_points(t)
            c = Point2((p.x + q.x + r.x) / 3, (p.y + q.y + r.y) / 3)
            if not any(piece.locate(c) > 0 for piece in pieces):
                return AtlasCheck(False, "(i)", (i, j), "transition domain differs from the overlap")
    # (ii) self transitions, when given, are identities on the whole chart
    for i in range(n):
        f = a.transitions.get((i, i))
        if f is not None and (not _is_identity(f) or _area(f) != a.charts[i].area):
            return AtlasCheck(False, "(ii)", (i, i), "self transition is not the identity")
    # (iii) inverse pairs
    for (i, j), f in sorted(a.transitions.items()):
        if i >= j:
            continue
        g = a.transitions[(j, i)]
        for x, y, (p, q) in ((f, g, (i, j)), (g, f, (j, i))):
            # y after x being the identity on all of x's domain also proves x injective
            c = plmap_compose(x, y)
            if _area(c) != _area(x) or not _is_identity(c):
                return AtlasCheck(False, "(iii)", (p, q), f"phi_{q}{p} is not the inverse of phi_{p}{q}")
    # (iv) cocycle on triple overlaps
    for (i, j), f in sorted(a.transitions.items()):
        for (j2, k), g in sorted(a.transitions.items()):
            if j2 != j or k == i or i == j or j == k:
                continue
            c = plmap_compose(f, g)
            if not c.domain.triangles:
                continue
            back = a.transitions.get((k, i))
            d = plmap_compose(c, back) if back is not None else None
            if d is None or _area(d) != _area(c) or not _is_identity(d):
                return AtlasCheck(False, "(iv)", (i, j, k), "cocycle fails")
    return AtlasCheck(True)


# ---------------------------------------------------------------------------
# saturation


@dataclass(frozen=True)
class RegionPieces:
    """A finite union of closed convex counterclockwise polygons."""

    pieces: tuple = ()

    @property
    def area(self):
        return sum((signed_area2(p) for p in self.pieces), rat(0)) / 2

    def __bool__(self):
        return bool(self.pieces)

    def contains(self, p: Point2) -> bool:
        return any(point_in_polygon(p, q) >= 0 for q in self.pieces)

    def interior_contains(self, p: Point2) -> bool:
        return any(point_in_polygon(p, q) > 0 for q in self.pieces)


def _as_pieces(V) -> tuple:
    if isinstance(V, RegionPieces):
        return V.pieces
    if isinstance(V, PolygonalRegion):
        t = triangulate_polygon(V)
        return tuple(_ccw(list(t.triangle_points(k))) for k in range(len(t.triangles)))
    return tuple(V)


def image_pieces(f: PLMap, pieces) -> tuple:
    """Exact image of (union of convex pieces) meet (domain of f)."""
    out = []
    for t in range(len(f.domain.triangles)):
        T = list(f.domain.triangle_points(t))
        A = f.affine(t)
        for P in pieces:
            c = clip_convex(P, T)
            if c:
                out.append(tuple(_ccw([apply_affine(A, q) for q in c])))
    return tuple(out)


def saturate(a: PLAtlas, i: int, V) -> list:
    """Per chart j the region phi_ij[V meet U_ij], chart i holding V itself."""
    pieces = _as_pieces(V)
    out = []
    for j in range(len(a.charts)):
        if j == i:
            out.append(RegionPieces(pieces))
        elif (i, j) in a.transitions:
            out.append(RegionPieces(image_pieces(a.transitions[(i, j)], pieces)))
        else:
            out.append(RegionPieces())
    return out


def same_region(x: RegionPieces, y: RegionPieces) -> bool:
    """Exact equality of two finite unions of closed convex pieces (up to
    sets of measure zero, which closed unions of polygons cannot differ by)."""
    if not x.pieces and not y.pieces:
        return True
    if x.area == 0 or y.area == 0:
        return x.area == y.area
    segs = []
    for P in x.pieces + y.pieces:
        segs.extend((P[k], P[(k + 1) % len(P)]) for k in range(len(P)))
    xs = [p.x for P in x.pieces + y.pieces for p in P]
    ys = [p.y for P in x.pieces + y.pieces for p in P]
    box = PolygonalRegion.rectangle(min(xs) - 1, min(ys) - 1, max(xs) + 1, max(ys) + 1)
    for face in arrangement(box, segs).faces:
        if x.contains(face.sample) != y.contains(face.sample):
            return False
    return True


def saturate_all(a: PLAtlas, regions) -> list:
    """Saturate a per-chart list of regions and union the results by chart."""
    acc = [[] for _ in a.charts]
    for i, R in enumerate(regions):
        if not R:
            continue
        for j, S in enumerate(saturate(a, i, R)):
            acc[j].extend(S.pieces)
    return [RegionPieces(tuple(p)) for p in acc]


# ---------------------------------------------------------------------------
# Hausdorff test


@dataclass(frozen=True)
class HausdorffResult:
    ok: bool
    witness: Optional[tuple] = None  # (SurfacePoint, SurfacePoint)

    def __bool__(self):
        return self.ok


def is_hausdorff(a: PLAtlas) -> HausdorffResult:
    """Search for a frontier point of U_ij inside U_i whose image under the
    extended transition is a frontier point of U_ji inside U_j."""
    for (i, j), f in sorted(a.transitions.items()):
        if i == j:
            continue
        pts = f.domain.points
        for u, v in _domain_boundary(f):
            p, q = pts[u], pts[v]
            fp, fq = f.images[u], f.images[v]
            inside_i = _interior_intervals(p, q, a.charts[i])
            if not inside_i:
                continue
            inside_j = _interior_intervals(fp, fq, a.charts[j])
            for s0, s1 in inside_i:
                for t0, t1 in inside_j:
                    lo, hi = max(s0, t0), min(s1, t1)
                    if lo < hi:
                        m = (lo + hi) / 2
                        return HausdorffResult(False, (SurfacePoint(i, _lerp(p, q, m)), SurfacePoint(j, _lerp(fp, fq, m))))
    return HausdorffResult(True)


def _require_hausdorff(a: PLAtlas):
    h = is_hausdorff(a)
    if not h.ok:
        raise NotHausdorff(h.witness)


# ---------------------------------------------------------------------------
# components


def _chart_pieces(chart):
    return tuple(chart) if isinstance(chart, (tuple, list)) else (chart,)


def split_charts(a: PLAtlas) -> PLAtlas:
    """Split charts given as several disjoint regions into one chart each."""
    if all(isinstance(c, PolygonalRegion) for c in a.charts):
        return a
    new_index = []  # old chart -> list of new indices
    charts = []
    for c in a.charts:
        ids = []
        for piece in _chart_pieces(c):
            ids.append(len(charts))
            charts.append(piece)
        new_index.append(ids)

    def owner(i, p):
        for k, piece in zip(new_index[i], _chart_pieces(a.charts[i])):
            if piece.locate(p) >= 0:
                return k
        raise AtlasError(f"point {p} is outside chart {i}")

    pieces = defaultdict(list)
    for (i, j), f in a.transitions.items():
        for t in range(len(f.domain.triangles)):
            P = list(f.domain.triangle_points(t))
            c = Point2(sum((p.x for p in P), rat(0)) / 3, sum((p.y for p in P), rat(0)) / 3)
            A = f.affine(t)
            pieces[(owner(i, c), owner(j, apply_affine(A, c)))].append((_ccw(P), A))
    transitions = {k: _assemble(v, 1 if all(_det(A) > 0 for _, A in v) else -1) for k, v in pieces.items()}
    overlaps = {}
    for (i, j), (P, A) in ((k, v[0]) for k, v in pieces.items()):
        overlaps[(i, j)] = tuple(_region_of_triangles(P2 for P2, _ in pieces[(i, j)]))
    return PLAtlas(tuple(charts), overlaps, transitions, a.name)


def _region_of_triangles(polys):
    from .geometry2d import SimplePolygon

    return [PolygonalRegion(SimplePolygon(tuple(P))) for P in polys]


def connected_components(a: PLAtlas) -> list:
    a = split_charts(a)
    n = len(a.charts)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), f in a.transitions.items():
        if f.domain.triangles:
            parent[find(i)] = find(j)
    groups = defaultdict(list)
    for i in range(n):
        groups[find(i)].append(i)
    out = []
    for members in sorted(groups.values()):
        idx = {old: new for new, old in enumerate(members)}
        tr = {(idx[i], idx[j]): f for (i, j), f in a.transitions.items() if i in idx and j in idx}
        ov = {(idx[i], idx[j]): p for (i, j), p in a.overlaps.items() if i in idx and j in idx}
        out.append(PLAtlas(tuple(a.charts[i] for i in members), ov, tr, a.name))
    return out


# ---------------------------------------------------------------------------
# cell structure of the glued surface


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        p.setdefault(x, x)
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


def _own_segments(a: PLAtlas, i: int):
    segs = []
    t = triangulate_polygon(a.charts[i])
    segs.extend((t.points[u], t.points[v]) for u, v in t.edges())
    for (p, j), f in a.transitions.items():
        if p == i and j != i:
            pts = f.domain.points
            segs.extend((pts[u], pts[v]) for u, v in f.domain.edges())
    return segs


@dataclass
class CellStructure:
    """Per-chart arrangements and the identifications between their cells."""

    arrangements: list
    uf: _UnionFind
    real: set  # class roots of cells lying in the glued surface
    faces: list  # (chart, face index, ring of points)

    def ideal_cells(self):
        roots = {self.uf.find(k) for k in self.uf.parent if k[1] in "ve"}
        return sorted((r for r in roots if r not in self.real), key=repr)


def cell_structure(a: PLAtlas) -> CellStructure:
    n = len(a.charts)
    own = [_own_segments(a, i) for i in range(n)]
    total = [list(s) for s in own]
    for (j, i), f in a.transitions.items():
        if i == j:
            continue
        for p, q in own[j]:
            total[i].extend(push_segment(f, p, q))
    arrs = [arrangement(a.charts[i], total[i]) for i in range(n)]
    uf = _UnionFind()
    real = set()
    faces = []
    polys = []
    edge_sets = []
    point_sets = []
    for i, A in enumerate(arrs):
        pts = A.vertices
        point_sets.append(set(pts))
        edge_sets.append({frozenset((pts[u], pts[v])) for u, v in A.edges})
        ch = a.charts[i]
        for p in pts:
            uf.find((i, "v", p))
            if ch.locate(p) > 0:
                real.add((i, "v", p))
        for u, v in A.edges:
            key = (i, "e", frozenset((pts[u], pts[v])))
            uf.find(key)
            if ch.locate(_lerp(pts[u], pts[v], rat(1, 2))) > 0:
                real.add(key)
        fl = []
        for k, face in enumerate(A.faces):
            if face.holes:
                raise FaceNotDisk((i, k))
            ring = [pts[v] for v in face.boundary]
            fl.append(ring)
            faces.append((i, k, ring, face.sample))
            uf.find((i, "f", k))
            real.add((i, "f", k))
        polys.append(fl)

    def face_at(j, q):
        for k, ring in enumerate(polys[j]):
            if point_in_polygon(q, ring) > 0:
                return k
        return None

    for i, k, ring, s in faces:
        for (p, j), f in a.transitions.items():
            if p != i or j == i:
                continue
            t = f.locate(s)
            if t is None or not in_open_domain(f, s):
                continue
            A = f.affine(t)
            g = face_at(j, apply_affine(A, s))
            if g is None:
                raise AtlasError(f"face {k} of chart {i} has no image face in chart {j}")
            uf.union((i, "f", k), (j, "f", g))
            img = [apply_affine(A, p2) for p2 in ring]
            m = len(ring)
            for x in range(m):
                if img[x] not in point_sets[j]:
                    raise AtlasError(f"chart {j} arrangement misses the image of {ring[x]} from chart {i}")
                uf.union((i, "v", ring[x]), (j, "v", img[x]))
                e1 = frozenset((ring[x], ring[(x + 1) % m]))
                e2 = frozenset((img[x], img[(x + 1) % m]))
                if e2 not in edge_sets[j]:
                    raise AtlasError(f"chart {j} arrangement misses an image edge from chart {i}")
                uf.union((i, "e", e1), (j, "e", e2))
    real = {uf.find(k) for k in real}
    return CellStructure(arrs, uf, real, [(i, k, ring) for i, k, ring, _ in faces])


def is_compact(a: PLAtlas) -> bool:
    """True iff no cell of the closure complex lies outside the glued surface.

    Every point approached from inside a chart then has a limit in the
    surface, which is the compact-sets-covering criterion for a finite atlas.
    """
    _require_hausdorff(a)
    a = split_charts(a)
    return not cell_structure(a).ideal_cells()


# ---------------------------------------------------------------------------
# triangulation


@dataclass
class Triangulated:
    recipe: ExplicitRecipe
    complex: Optional[FiniteComplex2]  # closed complex when the surface is compact
    closure: FiniteComplex2  # coned closure complex before ideal cells are removed
    ideal_vertices: int = 0
    ideal_edges: int = 0
    stats: dict = field(default_factory=dict)


def _boundary_circles(K: FiniteComplex2):
    adj = defaultdict(list)
    for u, v in K.boundary_edges():
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        if len(adj[s]) != 2:
            raise AtlasError(f"boundary vertex {s} is not on a simple circle")
        cyc = [s]
        seen.add(s)
        prev, cur = s, min(adj[s])
        while cur != s:
            if len(adj[cur]) != 2:
                raise AtlasError(f"boundary vertex {cur} is not on a simple circle")
            cyc.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        out.append(tuple(cyc))
    return out


def collar_stages(K: FiniteComplex2, depth: int):
    """P_0 = K and P_k = P_{k-1} plus an annulus on every boundary circle."""
    circles = _boundary_circles(K)
    nxt = K.max_label() + 1
    pieces = [K]
    P = K
    for _ in range(depth):
        tris = []
        new = []
        for c in circles:
            m = len(c)
            d = tuple(range(nxt, nxt + m))
            nxt += m
            for k in range(m):
                tris.append((c[k], c[(k + 1) % m], d[k]))
                tris.append((c[(k + 1) % m], d[(k + 1) % m], d[k]))
            new.append(d)
        P = P.union(FiniteComplex2.from_triangles(tris))
        pieces.append(P)
        circles = new
    return pieces


def triangulate(a: PLAtlas, depth: int = 3) -> Triangulated:
    _require_hausdorff(a)
    a = split_charts(a)
    if len(connected_components(a)) > 1:
        raise Disconnected(f"atlas has {len(connected_components(a))} components")
    cs = cell_structure(a)
    uf = cs.uf
    label = {}

    def lab(key):
        r = uf.find(key)
        if r not in label:
            label[r] = len(label)
        return label[r]

    seen_faces = set()
    tris = []
    for i, k, ring in sorted(cs.faces, key=lambda f: (f[0], f[1])):
        root = uf.find((i, "f", k))
        if root in seen_faces:
            continue
        seen_faces.add(root)
        m = len(ring)
        vs = [lab((i, "v", p)) for p in ring]
        es = [lab((i, "e", frozenset((ring[x], ring[(x + 1) % m])))) for x in range(m)]
        if len(set(vs)) != m or len(set(es)) != m:
            raise FaceNotDisk((i, k))
        c = lab(root)
        for x in range(m):
            tris.append((c, vs[x], es[x]))
            tris.append((c, es[x], vs[(x + 1) % m]))
    closure = FiniteComplex2.from_triangles(tris)
    kind = surface_check(closure)
    if not kind.is_surface:
        raise AtlasError(f"glued cells do not form a surface: {kind}")
    ideal = {label[r] for r in cs.ideal_cells() if r in label}
    ideal_v = {label[r] for r in cs.ideal_cells() if r[1] == "v" and r in label}
    bverts = {v for e in closure.boundary_edges() for v in e}
    punctures = sorted(v for v in ideal_v if v not in bverts)
    K = closure
    if punctures:
        keep = [t for t in closure.triangles if not any(v in t for v in punctures)]
        K = FiniteComplex2.from_triangles(keep)
    for u, v in K.boundary_edges():
        if u in bverts and v in bverts and not (u in ideal or v in ideal):
            raise AtlasError(f"boundary edge {(u, v)} lies in the glued surface")
    if not K.boundary_edges():
        view = ExhaustionView((K,))
        compact = K
    else:
        view = ExhaustionView(tuple(collar_stages(K, depth)), (), "collar")
        compact = None
    stats = {"charts": len(a.charts), "faces": len(seen_faces), "punctures": len(punctures)}
    return Triangulated(
        ExplicitRecipe(view, a.name or "atlas"),
        compact,
        closure,
        len(ideal_v),
        len(ideal) - len(ideal_v),
        stats,
    )


# ---------------------------------------------------------------------------
# rectangle refinement


@dataclass(frozen=True)
class Rect:
    chart: int
    inner: tuple  # Q1 as (x0, y0, x1, y1)
    outer: tuple  # Q2, containing Q1 in its interior
    level: int = 0


@dataclass
class Refinement:
    rects: list
    atlas: PLAtlas  # charts are the open Q2 rectangles
    covers: bool  # Q1 interiors cover the surface (compact case)
    meets: list  # per rectangle, the number of other rectangles it meets


def _rect_inside(r, chart: PolygonalRegion) -> bool:
    R = PolygonalRegion.rectangle(*r)
    if any(chart.locate(v) <= 0 for v in R.vertices()):
        return False
    for e in chart.boundary_edges():
        for f in R.boundary_edges():
            if segment_intersection(e, f) is not None:
                return False
    return all(R.locate(v) < 0 for v in chart.vertices())


def _floor_div(x, h) -> int:
    q = x / h
    n = int(q)
    return n - 1 if n > q else n


def _grid(chart: PolygonalRegion, level: int, chart_id: int):
    """Cells of side 2**-level anchored at the origin, so that grids of
    charts related by dyadic translations line up."""
    x0, y0, x1, y1 = chart.bbox()
    h = rat(1, 2**level) if level >= 0 else rat(2 ** (-level))
    out = []
    for a in range(_floor_div(x0, h), _floor_div(x1, h) + 1):
        for b in range(_floor_div(y0, h), _floor_div(y1, h) + 1):
            cx, cy = a * h, b * h
            inner = (cx - h / 8, cy - h / 8, cx + h + h / 8, cy + h + h / 8)
            outer = (cx - h / 4, cy - h / 4, cx + h + h / 4, cy + h + h / 4)
            if _rect_inside(outer, chart):
                out.append(Rect(chart_id, inner, outer, level))
    return out


def _rect_poly(r):
    x0, y0, x1, y1 = r
    return [Point2(x0, y0), Point2(x1, y0), Point2(x1, y1), Point2(x0, y1)]


def _in_open_rect(p, r):
    return r[0] < p.x < r[2] and r[1] < p.y < r[3]


def _covered(a: PLAtlas, rects) -> bool:
    by_chart = defaultdict(list)
    for r in rects:
        by_chart[r.chart].append(r)
    for i, chart in enumerate(a.charts):
        segs = []
        for r in by_chart[i]:
            P = _rect_poly(r.inner)
            segs.extend((P[k], P[(k + 1) % 4]) for k in range(4))
        for (j, i2), f in a.transitions.items():
            if i2 != i:
                continue
            for r in by_chart[j]:
                P = _rect_poly(r.inner)
                for k in range(4):
                    segs.extend(push_segment(f, P[k], P[(k + 1) % 4]))
        back = {j: f for (i2, j), f in a.transitions.items() if i2 == i}
        for f in back.values():
            pts = f.domain.points
            segs.extend((pts[u], pts[v]) for u, v in f.domain.edges())
        A = arrangement(chart, segs)
        probes = [f.sample for f in A.faces]
        pts = A.vertices
        probes += [p for p in pts if chart.locate(p) > 0]
        probes += [m for m in (_lerp(pts[u], pts[v], rat(1, 2)) for u, v in A.edges) if chart.locate(m) > 0]
        for p in probes:
            if any(_in_open_rect(p, r.inner) for r in by_chart[i]):
                continue
            ok = False
            for j, f in back.items():
                if in_open_domain(f, p):
                    q = f(p)
                    if any(_in_open_rect(q, r.inner) for r in by_chart[j]):
                        ok = True
                        break
            if not ok:
                return False
    return True


def _images(a: PLAtlas, r: Rect):
    """Pieces of Q2(r) carried into every chart: (chart, domain piece,
    affine, image piece, image bbox)."""
    R = _rect_poly(r.outer)
    out = [(r.chart, R, IDENTITY, R, r.outer)]
    for (i, j), f in sorted(a.transitions.items()):
        if i != r.chart or i == j:
            continue
        for t in range(len(f.domain.triangles)):
            c = clip_convex(list(f.domain.triangle_points(t)), R)
            if not c:
                continue
            A = f.affine(t)
            img = _ccw([apply_affine(A, q) for q in c])
            box = (min(p.x for p in img), min(p.y for p in img), max(p.x for p in img), max(p.y for p in img))
            out.append((j, c, A, img, box))
    return out


def _restricted(images, s: Rect):
    """Transition pieces from Q2(r) into Q2(s), given r's carried images."""
    S = _rect_poly(s.outer)
    out = []
    for j, c, A, img, box in images:
        if j != s.chart or _rect_meet(box, s.outer) is None:
            continue
        cut = clip_convex(img, S)
        if not cut:
            continue
        Ainv = invert_affine(A)
        out.append((_ccw([apply_affine(Ainv, q) for q in cut]), A))
    return out


def _center_covered(a: PLAtlas, kept, r: Rect) -> bool:
    x0, y0, x1, y1 = r.inner
    c = Point2((x0 + x1) / 2, (y0 + y1) / 2)
    for k in kept:
        if k.chart == r.chart:
            if _in_open_rect(c, k.inner):
                return True
            continue
        f = a.transitions.get((r.chart, k.chart))
        if f is not None and in_open_domain(f, c) and _in_open_rect(f(c), k.inner):
            return True
    return False


def _prune(a: PLAtlas, rects):
    kept = []
    for r in rects:
        if not _center_covered(a, kept, r):
            kept.append(r)
    return kept


def _first_level(a: PLAtlas) -> int:
    """Coarsest dyadic level at which some chart holds a grid cell."""
    for level in range(-8, 40):
        if any(_grid(ch, level, i) for i, ch in enumerate(a.charts)):
            return level
    raise AtlasError("charts are too thin for a dyadic grid")


def refine_locally_finite(a: PLAtlas, depth: int = 3, max_level: int = 6) -> Refinement:
    """Cover the charts by grids of nested rectangles Q1 inside Q2.

    Rectangles whose centre is already inside a kept Q1 are dropped. For
    compact atlases the grid is refined until the Q1 interiors cover the
    surface; otherwise the levels up to ``depth`` are stacked, finer levels
    reaching closer to the frontier.
    """
    _require_hausdorff(a)
    a = split_charts(a)
    compact = not cell_structure(a).ideal_cells()
    rects = []
    covers = False
    start = _first_level(a)
    if compact:
        for level in range(start, start + max_level):
            full = [r for i, ch in enumerate(a.charts) for r in _grid(ch, level, i)]
            rects = _prune(a, full)
            if _covered(a, rects):
                covers = True
                break
            if _covered(a, full):
                rects, covers = full, True
                break
    else:
        cands = [r for level in range(start, start + depth) for i, ch in enumerate(a.charts) for r in _grid(ch, level, i)]
        rects = _prune(a, cands)
    overlaps, transitions = {}, {}
    meets = [0] * len(rects)
    from .geometry2d import SimplePolygon

    for x, r in enumerate(rects):
        images = _images(a, r)
        for y, s in enumerate(rects):
            if x == y:
                continue
            pieces = _restricted(images, s)
            if not pieces:
                continue
            meets[x] += 1
            sign = 1 if all(_det(A) > 0 for _, A in pieces) else -1
            transitions[(x, y)] = _assemble(pieces, sign)
            overlaps[(x, y)] = tuple(PolygonalRegion(SimplePolygon(tuple(P))) for P, _ in pieces)
    charts = tuple(PolygonalRegion.rectangle(*r.outer) for r in rects)
    return Refinement(rects, PLAtlas(charts, overlaps, transitions, a.name), covers, meets)


__all__ = [
    "AtlasCheck",
    "CellStructure",
    "HausdorffResult",
    "PLAtlas",
    "Rect",
    "Refinement",
    "RegionPieces",
    "SurfacePoint",
    "Triangulated",
    "annulus_atlas",
    "atlas_from_gluings",
    "builtin_atlases",
    "cell_structure",
    "connected_components",
    "doubled_origin_atlas",
    "flat_torus_atlas",
    "is_compact",
    "is_hausdorff",
    "mobius_atlas",
    "open_square_atlas",
    "refine_locally_finite",
    "same_region",
    "saturate",
    "saturate_all",
    "split_charts",
    "surface_point",
    "translation_atlas",
    "triangulate",
    "validate_atlas",
]
