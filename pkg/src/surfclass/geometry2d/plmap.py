"""Piecewise-linear maps on triangulations: evaluation, composition,
inversion and exact verification."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotInjective, OutsideDomain
from .core import rat, Point2, Triangulation2, cross, on_segment, orientation

_ONE = rat(1)


def affine_from(P, Q):
    """Coefficients (a, b, c, d, e, f) of x' = ax+by+e, y' = cx+dy+f sending
    the triangle P onto Q vertex by vertex."""
    p0, p1, p2 = P
    q0, q1, q2 = Q
    ux, uy = p1.x - p0.x, p1.y - p0.y
    vx, vy = p2.x - p0.x, p2.y - p0.y
    D = ux * vy - uy * vx
    Ux, Uy = q1.x - q0.x, q1.y - q0.y
    Vx, Vy = q2.x - q0.x, q2.y - q0.y
    a = (Ux * vy - Vx * uy) / D
    b = (Vx * ux - Ux * vx) / D
    c = (Uy * vy - Vy * uy) / D
    d = (Vy * ux - Uy * vx) / D
    e = q0.x - a * p0.x - b * p0.y
    f = q0.y - c * p0.x - d * p0.y
    return (a, b, c, d, e, f)


def apply_affine(A, p: Point2) -> Point2:
    a, b, c, d, e, f = A
    return Point2(a * p.x + b * p.y + e, c * p.x + d * p.y + f)


def compose_affine(G, F):
    """Coefficients of G after F."""
    a, b, c, d, e, f = F
    A, B, C, D, E, Fy = G
    return (A * a + B * c, A * b + B * d, C * a + D * c, C * b + D * d, A * e + B * f + E, C * e + D * f + Fy)


def invert_affine(A):
    a, b, c, d, e, f = A
    det = a * d - b * c
    ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
    return (ia, ib, ic, id_, -(ia * e + ib * f), -(ic * e + id_ * f))


def _bbox(pts):
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def _in_closed_tri(p, a, b, c):
    return cross(a, b, p) >= 0 and cross(b, c, p) >= 0 and cross(c, a, p) >= 0


def clip_convex(subject, clip):
    """Sutherland-Hodgman clipping of convex counterclockwise polygons."""
    out = list(subject)
    n = len(clip)
    for i in range(n):
        a, b = clip[i], clip[(i + 1) % n]
        if not out:
            break
        inp, out = out, []
        m = len(inp)
        for j in range(m):
            p, q = inp[j], inp[(j + 1) % m]
            sp, sq = cross(a, b, p), cross(a, b, q)
            if sp >= 0:
                out.append(p)
            if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
                t = sp / (sp - sq)
                out.append(Point2(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t))
    cleaned = []
    for p in out:
        if not cleaned or cleaned[-1] != p:
            cleaned.append(p)
    while len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
        cleaned.pop()
    # drop straight-angle vertices
    changed = True
    while changed and len(cleaned) >= 3:
        changed = False
        for i in range(len(cleaned)):
            if orientation(cleaned[i - 1], cleaned[i], cleaned[(i + 1) % len(cleaned)]) == 0:
                del cleaned[i]
                changed = True
                break
    if len(cleaned) < 3:
        return []
    return cleaned


def interiors_overlap(A, B) -> bool:
    """Separating-axis test for counterclockwise convex polygons."""
    for P, Q in ((A, B), (B, A)):
        n = len(P)
        for i in range(n):
            a, b = P[i], P[(i + 1) % n]
            if all(cross(a, b, q) <= 0 for q in Q):
                return False
    return True


def overlapping_pairs(polys):
    """Index pairs of counterclockwise convex polygons whose interiors meet."""
    boxes = [(_bbox(p), k) for k, p in enumerate(polys)]
    boxes.sort(key=lambda t: t[0][0])
    active = []
    found = []
    for box, k in boxes:
        x0 = box[0]
        active = [(b, j) for b, j in active if b[2] > x0]
        for b, j in active:
            if b[1] < box[3] and box[1] < b[3] and interiors_overlap(polys[j], polys[k]):
                found.append((min(j, k), max(j, k)))
        active.append((box, k))
    return found


def boundary_cycles(triangles):
    """Boundary edges (used by exactly one oriented triangle) chained into cycles."""
    count = {}
    for a, b, c in triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            key = frozenset((u, v))
            count[key] = count.get(key, 0) + 1
    nxt = {}
    for a, b, c in triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            if count[frozenset((u, v))] == 1:
                nxt.setdefault(u, []).append(v)
    cycles = []
    used = set()
    for s in sorted(nxt):
        for first in nxt[s]:
            if (s, first) in used:
                continue
            cyc = [s]
            used.add((s, first))
            cur = first
            while cur != s:
                cyc.append(cur)
                cand = [w for w in nxt.get(cur, []) if (cur, w) not in used]
                if not cand:
                    break
                used.add((cur, cand[0]))
                cur = cand[0]
            cycles.append(tuple(cyc))
    return cycles


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    problems: tuple = ()
    overlaps: tuple = ()

    def raise_for_problems(self):
        if self.overlaps:
            raise NotInjective(self.overlaps[0])
        if self.problems:
            raise ValueError("; ".join(self.problems))


@dataclass(frozen=True)
class PLMap:
    """A map affine on each triangle of ``domain``; ``images`` holds one image
    point per domain point and ``orientation`` the sign of every image triangle."""

    domain: Triangulation2
    images: tuple
    orientation: int = 1
    _affines: dict = field(default_factory=dict, compare=False, repr=False)

    def affine(self, t):
        A = self._affines.get(t)
        if A is None:
            i, j, k = self.domain.triangles[t]
            P = (self.domain.points[i], self.domain.points[j], self.domain.points[k])
            Q = (self.images[i], self.images[j], self.images[k])
            A = affine_from(P, Q)
            self._affines[t] = A
        return A

    def locate(self, p: Point2):
        pts = self.domain.points
        for t, (i, j, k) in enumerate(self.domain.triangles):
            if _in_closed_tri(p, pts[i], pts[j], pts[k]):
                return t
        return None

    def __call__(self, p):
        return plmap_eval(self, p)

    def image_triangle(self, t):
        i, j, k = self.domain.triangles[t]
        return self.images[i], self.images[j], self.images[k]


def identity_map(tri: Triangulation2) -> PLMap:
    return PLMap(tri, tuple(tri.points), 1)


def plmap_eval(f: PLMap, p) -> Point2:
    if not isinstance(p, Point2):
        p = Point2(rat(p[0]), rat(p[1]))
    t = f.locate(p)
    if t is None:
        raise OutsideDomain(p)
    return apply_affine(f.affine(t), p)


def _ccw(poly):
    return poly if orientation(*poly[:3]) > 0 else list(reversed(poly))


def plmap_compose(f: PLMap, g: PLMap) -> PLMap:
    """The map ``g`` after ``f``, on the overlay refinement of f's domain."""
    g_tris = []
    for s in range(len(g.domain.triangles)):
        P = list(g.domain.triangle_points(s))
        g_tris.append((_bbox(P), s, P))
    g_tris.sort(key=lambda t: t[0][0])
    pieces = []
    for t in range(len(f.domain.triangles)):
        img = _ccw(list(f.image_triangle(t)))
        bx = _bbox(img)
        Finv = invert_affine(f.affine(t))
        Ft = f.affine(t)
        for box, s, S in g_tris:
            if box[0] >= bx[2]:
                break
            if box[2] <= bx[0] or box[3] <= bx[1] or box[1] >= bx[3]:
                continue
            poly = clip_convex(img, S)
            if not poly:
                continue
            dom = _ccw([apply_affine(Finv, q) for q in poly])
            pieces.append((dom, compose_affine(g.affine(s), Ft)))
    return _assemble(pieces, f.orientation * g.orientation)


def _assemble(pieces, sign) -> PLMap:
    """Build a conforming triangulation from convex pieces with affine maps."""
    index = {}
    points = []
    images = []

    def vid(p, A):
        if p not in index:
            index[p] = len(points)
            points.append(p)
            images.append(apply_affine(A, p))
        return index[p]

    corner_set = set()
    for dom, _ in pieces:
        corner_set.update(dom)
    corners = sorted(corner_set)
    xs = [c.x for c in corners]
    import bisect

    tris = []
    for dom, A in pieces:
        ring = []
        n = len(dom)
        for i in range(n):
            a, b = dom[i], dom[(i + 1) % n]
            ring.append(a)
            lo, hi = min(a.x, b.x), max(a.x, b.x)
            extra = []
            ylo, yhi = min(a.y, b.y), max(a.y, b.y)
            for c in corners[bisect.bisect_left(xs, lo): bisect.bisect_right(xs, hi)]:
                if ylo <= c.y <= yhi and c != a and c != b and on_segment(c, a, b):
                    extra.append(c)
            if extra:
                key = (lambda c: c.x - a.x) if a.x != b.x else (lambda c: c.y - a.y)
                extra.sort(key=key, reverse=(a.x > b.x) if a.x != b.x else (a.y > b.y))
                ring.extend(extra)
        ids = [vid(p, A) for p in ring]
        if len(ring) == 3:
            tris.append(tuple(ids))
            continue
        # fan from a corner whose two sides carry no extra points
        m = len(ids)
        apex = next((k for k in range(m) if ring[k] in dom and ring[k - 1] in dom and ring[(k + 1) % m] in dom), None)
        if apex is not None:
            for i in range(1, m - 1):
                tris.append((ids[apex], ids[(apex + i) % m], ids[(apex + i + 1) % m]))
            continue
        cx = sum((p.x for p in dom), rat(0)) / n
        cy = sum((p.y for p in dom), rat(0)) / n
        c = vid(Point2(cx, cy), A)
        m = len(ids)
        for i in range(m):
            tris.append((c, ids[i], ids[(i + 1) % m]))
    dom_tri = Triangulation2(tuple(points), tuple(tris), tuple(boundary_cycles(tris)))
    return PLMap(dom_tri, tuple(images), sign)


def plmap_invert(f: PLMap, check: bool = True) -> PLMap:
    """Swap domain and image; the result is positively oriented in its domain."""
    if check:
        plmap_verify(f).raise_for_problems()
    tris = []
    for t, (i, j, k) in enumerate(f.domain.triangles):
        if orientation(f.images[i], f.images[j], f.images[k]) > 0:
            tris.append((i, j, k))
        else:
            tris.append((i, k, j))
    dom = Triangulation2(tuple(f.images), tuple(tris), tuple(boundary_cycles(tris)))
    return PLMap(dom, tuple(f.domain.points), f.orientation)


def _is_combinatorial_disk(triangles) -> bool:
    tris = list(triangles)
    if not tris:
        return False
    count = {}
    star = {}
    for t in tris:
        a, b, c = t
        for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
            key = frozenset((u, v))
            count[key] = count.get(key, 0) + 1
            star.setdefault(w, []).append((u, v))
    if any(k > 2 for k in count.values()):
        return False
    verts = set(star)
    if len(verts) - len(count) + len(tris) != 1:
        return False
    cycles = boundary_cycles(tris)
    if len(cycles) != 1 or len(set(cycles[0])) != len(cycles[0]):
        return False
    # every vertex link is one path or one cycle
    for v, link in star.items():
        nxt = {}
        for u, w in link:
            if u in nxt:
                return False
            nxt[u] = w
        starts = set(nxt) - set(nxt.values())
        if len(starts) > 1:
            return False
        cur = next(iter(starts)) if starts else link[0][0]
        seen = 0
        while cur in nxt and seen <= len(link):
            cur = nxt[cur]
            seen += 1
            if not starts and cur == link[0][0]:
                break
        if seen != len(link):
            return False
    return True


def _simple_cycle(points) -> bool:
    """Closed polyline without self-contact; straight angles are allowed."""
    from .core import segment_intersection

    n = len(points)
    if len(set(points)) != n:
        return False
    segs = [(points[i], points[(i + 1) % n]) for i in range(n)]
    boxes = [_bbox(list(s)) for s in segs]
    order = sorted(range(n), key=lambda i: boxes[i][0])
    active = []
    for i in order:
        bi = boxes[i]
        active = [j for j in active if boxes[j][2] >= bi[0]]
        for j in active:
            bj = boxes[j]
            if bj[1] > bi[3] or bi[1] > bj[3]:
                continue
            x = segment_intersection(segs[i], segs[j])
            if x is None:
                continue
            if (i + 1) % n == j or (j + 1) % n == i:
                shared = segs[i][1] if (i + 1) % n == j else segs[i][0]
                if x == shared:
                    continue
            return False
        active.append(i)
    return True


def _degree_certificate(f: PLMap) -> bool:
    """Injectivity of a PL map on a triangulated disk by a degree count.

    With every triangle of the declared sign and the boundary mapped onto a
    simple closed polygon, each point off the image boundary has exactly as
    many preimages as the winding number of that polygon, i.e. at most one.
    The same count on the identity map shows the domain triangles are
    interior-disjoint and conforming.
    """
    tris = f.domain.triangles
    if not _is_combinatorial_disk(tris):
        return False
    (cyc,) = boundary_cycles(tris)
    from .core import signed_area2

    dom = [f.domain.points[v] for v in cyc]
    img = [f.images[v] for v in cyc]
    if signed_area2(dom) <= 0 or (signed_area2(img) > 0) != (f.orientation > 0):
        return False
    return _simple_cycle(dom) and _simple_cycle(img)


def plmap_verify(f: PLMap, check_domain_overlap: bool = True) -> VerifyReport:
    """Exact check of the PLMap invariants.

    Domain triangles must be positive, image triangles nondegenerate with the
    declared sign, the domain conforming (no vertex inside another triangle's
    edge) and both the domain and the image triangles interior-disjoint.
    """
    problems = []
    pts, ims = f.domain.points, f.images
    dom_polys, img_polys = [], []
    for t, (i, j, k) in enumerate(f.domain.triangles):
        if orientation(pts[i], pts[j], pts[k]) <= 0:
            problems.append(f"domain triangle {t} is not positively oriented")
        s = orientation(ims[i], ims[j], ims[k])
        if s != f.orientation:
            problems.append(f"image triangle {t} has orientation {s}")
        dom_polys.append(_ccw([pts[i], pts[j], pts[k]]))
        img_polys.append(_ccw([ims[i], ims[j], ims[k]]))
    if problems:
        return VerifyReport(False, tuple(problems))
    if _degree_certificate(f):
        return VerifyReport(True)
    # conformity: no vertex lies in the relative interior of an edge
    edges = {}
    for i, j, k in f.domain.triangles:
        for u, v in ((i, j), (j, k), (k, i)):
            edges[frozenset((u, v))] = (u, v)
    by_x = sorted(range(len(pts)), key=lambda v: pts[v].x)
    xs = [pts[v].x for v in by_x]
    import bisect

    for u, v in edges.values():
        a, b = pts[u], pts[v]
        lo, hi = min(a.x, b.x), max(a.x, b.x)
        for w in by_x[bisect.bisect_left(xs, lo): bisect.bisect_right(xs, hi)]:
            c = pts[w]
            if c != a and c != b and on_segment(c, a, b):
                problems.append(f"vertex {w} lies inside edge {(u, v)}")
                break
    overlaps = overlapping_pairs(img_polys)
    if check_domain_overlap:
        dover = overlapping_pairs(dom_polys)
        if dover:
            problems.append(f"domain triangles {dover[0]} overlap")
    ok = not problems and not overlaps
    return VerifyReport(ok, tuple(problems), tuple(overlaps))
