"""Finite 2-dimensional simplicial complexes and their surface invariants."""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from ..errors import (
    ComplexError,
    IsolatedVertexViolation,
    MissingFace,
    NotAnEdge,
    NotSubcomplex,
    SharedTriangle,
)


def _edge(u, v):
    return (u, v) if u < v else (v, u)


def _tri(a, b, c):
    return tuple(sorted((a, b, c)))


@dataclass(frozen=True)
class FiniteComplex2:
    vertices: frozenset
    edges: frozenset
    triangles: frozenset

    @classmethod
    def from_triangles(cls, triangles, extra_edges=(), extra_vertices=()) -> "FiniteComplex2":
        """Downward closure of the given triangles (plus optional lower simplices)."""
        tris = frozenset(_tri(*t) for t in triangles)
        edges = {_edge(*e) for e in extra_edges}
        for a, b, c in tris:
            edges.update(((a, b), (a, c), (b, c)))
        verts = set(extra_vertices)
        for u, v in edges:
            verts.update((u, v))
        return cls(frozenset(verts), frozenset(edges), tris)

    @classmethod
    def empty(cls) -> "FiniteComplex2":
        return cls(frozenset(), frozenset(), frozenset())

    def __len__(self):
        return len(self.triangles)

    @property
    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def edge_triangles(self):
        """Map from edge to the third vertices of the triangles containing it."""
        out = defaultdict(list)
        for a, b, c in self.triangles:
            out[(a, b)].append(c)
            out[(a, c)].append(b)
            out[(b, c)].append(a)
        return out

    def boundary_edges(self):
        et = self.edge_triangles()
        return sorted(e for e in self.edges if len(et.get(e, ())) == 1)

    def link(self, v):
        """Edges of the link of ``v``."""
        out = []
        for t in self.triangles:
            if v in t:
                a, b = (x for x in t if x != v)
                out.append((a, b))
        return out

    def neighbours(self, v):
        return {u for e in self.edges if v in e for u in e if u != v}

    def max_label(self) -> int:
        return max(self.vertices) if self.vertices else -1

    def union(self, other: "FiniteComplex2") -> "FiniteComplex2":
        return FiniteComplex2(self.vertices | other.vertices, self.edges | other.edges, self.triangles | other.triangles)

    def relabel(self, mapping) -> "FiniteComplex2":
        m = lambda v: mapping.get(v, v)
        return FiniteComplex2(
            frozenset(m(v) for v in self.vertices),
            frozenset(_edge(m(u), m(v)) for u, v in self.edges),
            frozenset(_tri(m(a), m(b), m(c)) for a, b, c in self.triangles),
        )

    def is_subcomplex_of(self, other: "FiniteComplex2") -> bool:
        return self.vertices <= other.vertices and self.edges <= other.edges and self.triangles <= other.triangles

    def __repr__(self):
        return f"FiniteComplex2(V={len(self.vertices)}, E={len(self.edges)}, F={len(self.triangles)})"


@dataclass(frozen=True, repr=False)
class SpanComponent(FiniteComplex2):
    """A complementary piece, remembering the edges it shares with the removed part."""

    frontier: frozenset = frozenset()


def validate_complex(vertices, edges, triangles) -> FiniteComplex2:
    verts = set(vertices)
    es = set()
    for e in edges:
        u, v = e
        if u == v:
            raise ComplexError(f"degenerate edge {e}")
        for x in (u, v):
            if x not in verts:
                raise MissingFace(tuple(e), x)
        es.add(_edge(u, v))
    ts = set()
    for t in triangles:
        if len(set(t)) != 3:
            raise ComplexError(f"degenerate triangle {t}")
        a, b, c = _tri(*t)
        for e in ((a, b), (a, c), (b, c)):
            if e not in es:
                raise MissingFace((a, b, c), e)
        ts.add((a, b, c))
    used = {x for e in es for x in e}
    for v in sorted(verts):
        if v < 0:
            raise ComplexError(f"negative vertex label {v}")
        if v not in used:
            raise IsolatedVertexViolation(v)
    return FiniteComplex2(frozenset(verts), frozenset(es), frozenset(ts))


@dataclass(frozen=True)
class SurfaceKind:
    kind: str  # "Closed" | "Bordered" | "NotSurface"
    boundary_circles: int = 0
    witness: Optional[tuple] = None

    @property
    def is_surface(self) -> bool:
        return self.kind != "NotSurface"

    def __str__(self):
        if self.kind == "Bordered":
            return f"Bordered({self.boundary_circles})"
        if self.kind == "NotSurface":
            return f"NotSurface({self.witness})"
        return "Closed"


def _link_shape(pairs):
    """'cycle', 'path' or None for a link given as edge pairs."""
    adj = defaultdict(list)
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    if not adj:
        return None
    if any(len(n) > 2 for n in adj.values()):
        return None
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(adj):
        return None
    ends = sum(1 for n in adj.values() if len(n) == 1)
    return "cycle" if ends == 0 else "path"


def _boundary_cycle_count(edges) -> int:
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in parent})


def surface_check(K: FiniteComplex2) -> SurfaceKind:
    if not K.triangles:
        return SurfaceKind("NotSurface", 0, ("empty",))
    et = K.edge_triangles()
    for e in sorted(K.edges):
        n = len(et.get(e, ()))
        if n == 0:
            return SurfaceKind("NotSurface", 0, ("dangling edge", e))
        if n > 2:
            return SurfaceKind("NotSurface", 0, ("edge in %d triangles" % n, e))
    links = defaultdict(list)
    for a, b, c in K.triangles:
        links[a].append((b, c))
        links[b].append((a, c))
        links[c].append((a, b))
    for v in sorted(K.vertices):
        if v not in links:
            return SurfaceKind("NotSurface", 0, ("vertex in no triangle", v))
        if _link_shape(links[v]) is None:
            return SurfaceKind("NotSurface", 0, ("pinch vertex", v))
    ncomp = len(_component_vertex_sets(K))
    if ncomp != 1:
        return SurfaceKind("NotSurface", 0, ("disconnected", ncomp))
    bedges = [e for e in K.edges if len(et[e]) == 1]
    if not bedges:
        return SurfaceKind("Closed", 0)
    return SurfaceKind("Bordered", _boundary_cycle_count(bedges))


def orient_triangles(K: FiniteComplex2):
    """Coherent orientation by BFS on the dual graph.

    Returns (orientable, mapping triangle -> oriented vertex tuple). The
    search starts from the lexicographically least triangle of each component.
    """
    et = defaultdict(list)
    for t in K.triangles:
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            et[e].append(t)
    oriented = {}
    ok = True
    for start in sorted(K.triangles):
        if start in oriented:
            continue
        oriented[start] = start
        queue = deque([start])
        while queue:
            t = queue.popleft()
            a, b, c = oriented[t]
            for x, y in ((a, b), (b, c), (c, a)):
                for s in et[_edge(x, y)]:
                    if s == t:
                        continue
                    (z,) = set(s) - {x, y}
                    want = (y, x, z)
                    if s not in oriented:
                        oriented[s] = want
                        queue.append(s)
                    elif not _same_cycle(oriented[s], want):
                        ok = False
    return ok, oriented


def _same_cycle(p, q):
    k = q.index(p[0])
    return q[k:] + q[:k] == p


@dataclass(frozen=True)
class PieceInvariants:
    euler: int
    orientable: bool
    genus: int
    crosscaps: int
    boundary_circles: int
    planar: bool
    connected: bool

    @property
    def classification(self):
        """(orientable, genus) or (nonorientable, crosscaps)."""
        return (self.orientable, self.genus if self.orientable else self.crosscaps)


def invariants(K: FiniteComplex2) -> PieceInvariants:
    comps = connected_components(K)
    if len(comps) > 1:
        parts = [invariants(c) for c in comps]
        genus = sum(p.genus for p in parts)
        cc = sum(p.crosscaps for p in parts)
        orient = all(p.orientable for p in parts)
        b = sum(p.boundary_circles for p in parts)
        return PieceInvariants(K.euler, orient, genus, cc, b, orient and genus == 0, False)
    bedges = K.boundary_edges()
    b = _boundary_cycle_count(bedges) if bedges else 0
    orient, _ = orient_triangles(K)
    chi = K.euler
    if orient:
        twice = 2 - chi - b
        if twice < 0 or twice % 2:
            raise ComplexError(f"euler {chi} with {b} boundary circles is not a surface")
        return PieceInvariants(chi, True, twice // 2, 0, b, twice == 0, True)
    return PieceInvariants(chi, False, 0, 2 - chi - b, b, False, True)


def subdivide(K: FiniteComplex2, edges) -> FiniteComplex2:
    """Simple subdivision: each selected edge gets a fresh midpoint vertex.

    For a new vertex x on {x1, x2} and each triangle {x1, x2, x3}, the
    triangle is replaced by {x1, x3, x} and {x2, x3, x}.
    """
    if isinstance(edges, tuple) and len(edges) == 2 and not isinstance(edges[0], (tuple, list)):
        edges = [edges]
    sel = [_edge(*e) for e in edges]
    if not sel:
        return K
    for e in sel:
        if e not in K.edges:
            raise NotAnEdge(f"{e} is not an edge")
    if len(set(sel)) != len(sel):
        raise SharedTriangle((sel[0], sel[0]))
    et = K.edge_triangles()
    owner = {}
    for e in sel:
        for z in et.get(e, ()):
            t = _tri(e[0], e[1], z)
            if t in owner:
                raise SharedTriangle((owner[t], e))
            owner[t] = e
    fresh = K.max_label() + 1
    verts = set(K.vertices)
    es = set(K.edges)
    ts = set(K.triangles)
    for e in sel:
        x = fresh
        fresh += 1
        x1, x2 = e
        verts.add(x)
        es.discard(e)
        es.update((_edge(x1, x), _edge(x2, x)))
        for x3 in et.get(e, ()):
            ts.discard(_tri(x1, x2, x3))
            es.add(_edge(x3, x))
            ts.add(_tri(x1, x3, x))
            ts.add(_tri(x2, x3, x))
    return FiniteComplex2(frozenset(verts), frozenset(es), frozenset(ts))


def _component_vertex_sets(K: FiniteComplex2):
    adj = defaultdict(set)
    for u, v in K.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    comps = []
    for v in sorted(K.vertices):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def connected_components(K: FiniteComplex2):
    out = []
    for vs in _component_vertex_sets(K):
        out.append(
            FiniteComplex2(
                frozenset(vs),
                frozenset(e for e in K.edges if e[0] in vs),
                frozenset(t for t in K.triangles if t[0] in vs),
            )
        )
    return out


def complement_span(K: FiniteComplex2, sub: FiniteComplex2):
    """Components of the triangles of K not in ``sub``.

    Two remaining triangles are joined when they share an edge, or a vertex
    that does not belong to ``sub``. Each piece records its frontier: the
    edges it shares with ``sub``.
    """
    if not sub.is_subcomplex_of(K):
        raise NotSubcomplex("sub is not a subcomplex of K")
    rest = sorted(K.triangles - sub.triangles)
    if not rest:
        return []
    parent = {t: t for t in rest}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_edge = defaultdict(list)
    by_vertex = defaultdict(list)
    for t in rest:
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            by_edge[e].append(t)
        for v in t:
            if v not in sub.vertices:
                by_vertex[v].append(t)
    for group in list(by_edge.values()) + list(by_vertex.values()):
        r = find(group[0])
        for t in group[1:]:
            parent[find(t)] = r
    pieces = defaultdict(list)
    for t in rest:
        pieces[find(t)].append(t)
    out = []
    for root in sorted(pieces, key=lambda r: min(pieces[r])):
        tris = pieces[root]
        C = FiniteComplex2.from_triangles(tris)
        frontier = frozenset(e for e in C.edges if e in sub.edges)
        out.append(SpanComponent(C.vertices, C.edges, C.triangles, frontier))
    return out


def disjoint_union(*complexes):
    """Relabel so the pieces are disjoint, then take the union."""
    out = FiniteComplex2.empty()
    shift = 0
    for C in complexes:
        mapping = {v: v + shift for v in C.vertices}
        out = out.union(C.relabel(mapping))
        shift = out.max_label() + 1
    return out


def standardize(K: FiniteComplex2) -> FiniteComplex2:
    """Relabel vertices to 0..n-1 in increasing order."""
    mapping = {v: k for k, v in enumerate(sorted(K.vertices))}
    return K.relabel(mapping)


def triangle_list(K: FiniteComplex2):
    return sorted(K.triangles)


def edges_of(triangles: Iterable) -> set:
    out = set()
    for t in triangles:
        for u, v in combinations(t, 2):
            out.add(_edge(u, v))
    return out
