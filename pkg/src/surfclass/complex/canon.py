"""Canonical labelling of triangulated surfaces and bounded equivalence search."""
from __future__ import annotations

from collections import defaultdict
from itertools import permutations

from ..errors import ComplexError
from .core import FiniteComplex2, _edge, _tri, connected_components, subdivide, surface_check


def _ordered_links(K: FiniteComplex2):
    """Each vertex's link as (walk order, is_cycle)."""
    adj = defaultdict(lambda: defaultdict(list))
    for a, b, c in K.triangles:
        for v, x, y in ((a, b, c), (b, a, c), (c, a, b)):
            adj[v][x].append(y)
            adj[v][y].append(x)
    out = {}
    for v, g in adj.items():
        ends = [x for x, n in g.items() if len(n) == 1]
        start = min(ends) if ends else min(g)
        order = [start]
        prev, cur = None, start
        while True:
            nxt = [y for y in g[cur] if y != prev]
            if not nxt or nxt[0] == start:
                break
            prev, cur = cur, nxt[0]
            order.append(cur)
        out[v] = (order, not ends)
    return out


def _walk_from(order, is_cycle, s, towards):
    """Link vertices in walk order from s, stepping first to ``towards``."""
    n = len(order)
    k = order.index(s)
    if is_cycle:
        step = 1 if order[(k + 1) % n] == towards else -1
        return [order[(k + step * i) % n] for i in range(n)]
    if towards is None:
        step = 1 if k == 0 else -1
    else:
        step = 1 if k + 1 < n and order[k + 1] == towards else -1
    first = order[k::step] if step == 1 else order[k::-1]
    rest = order[:k][::-1] if step == 1 else order[k + 1:]
    return first + rest


def _code_from(K, links, root, root_walk):
    label = {root: 0}
    for x in root_walk:
        if x not in label:
            label[x] = len(label)
    queue = sorted(label, key=label.get)
    qi = 1
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        order, is_cycle = links[u]
        s = min(order, key=lambda x: label.get(x, 1 << 60))
        k = order.index(s)
        cands = []
        n = len(order)
        if is_cycle:
            cands = [order[(k + 1) % n], order[k - 1]]
        else:
            if k + 1 < n:
                cands.append(order[k + 1])
            if k > 0:
                cands.append(order[k - 1])
        towards = min(cands, key=lambda x: label.get(x, 1 << 60)) if cands else None
        for x in _walk_from(order, is_cycle, s, towards):
            if x not in label:
                label[x] = len(label)
                queue.append(x)
    return tuple(sorted(_tri(label[a], label[b], label[c]) for a, b, c in K.triangles))


def canonical_code(K: FiniteComplex2):
    """A labelling-independent code: equal codes iff isomorphic complexes.

    Connected (bordered) surfaces use link walks from every flag; other small
    complexes fall back to trying all vertex permutations.
    """
    kind = surface_check(K)
    if kind.is_surface:
        links = _ordered_links(K)
        best = None
        for v, (order, is_cycle) in links.items():
            n = len(order)
            if is_cycle:
                starts = [(order[i], order[(i + 1) % n]) for i in range(n)] + [
                    (order[i], order[i - 1]) for i in range(n)
                ]
            else:
                starts = [(order[0], None), (order[-1], None)]
            for s, t in starts:
                code = _code_from(K, links, v, _walk_from(order, is_cycle, s, t))
                if best is None or code < best:
                    best = code
        return (len(K.vertices), best)
    if len(connected_components(K)) > 1:
        parts = sorted(canonical_code(C) for C in connected_components(K))
        return ("union", tuple(parts))
    vs = sorted(K.vertices)
    if len(vs) > 8:
        raise ComplexError("canonical code for large non-surface complexes is not supported")
    best = None
    for perm in permutations(range(len(vs))):
        m = dict(zip(vs, perm))
        code = (
            tuple(sorted(_tri(m[a], m[b], m[c]) for a, b, c in K.triangles)),
            tuple(sorted(_edge(m[u], m[v]) for u, v in K.edges)),
        )
        if best is None or code < best:
            best = code
    return (len(vs), best)


def isomorphic(K: FiniteComplex2, L: FiniteComplex2) -> bool:
    if (len(K.vertices), len(K.edges), len(K.triangles)) != (len(L.vertices), len(L.edges), len(L.triangles)):
        return False
    return canonical_code(K) == canonical_code(L)


def _one_step(codes_and_complexes, limit):
    out = {}
    for K in codes_and_complexes.values():
        for e in sorted(K.edges):
            S = subdivide(K, [e])
            c = canonical_code(S)
            if c not in out:
                out[c] = S
                if len(out) >= limit:
                    return out
    return out


def combinatorially_equivalent(K: FiniteComplex2, L: FiniteComplex2, depth: int = 1, limit: int = 5000) -> str:
    """'Yes' if K and L have isomorphic subdivisions reachable within ``depth``
    rounds of single-edge subdivisions, otherwise 'Unknown'."""
    A = {canonical_code(K): K}
    B = {canonical_code(L): L}
    if A.keys() & B.keys():
        return "Yes"
    nk, nl = len(K.vertices), len(L.vertices)
    for _ in range(depth):
        # only grow the side with fewer vertices to keep the frontiers aligned
        if nk <= nl:
            A = _one_step(A, limit)
            nk += 1
        else:
            B = _one_step(B, limit)
            nl += 1
        if A.keys() & B.keys():
            return "Yes"
    return "Unknown"
