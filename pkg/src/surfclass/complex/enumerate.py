"""Isomorph-free enumeration of small closed triangulated surfaces.

Vertex 0 is a vertex of maximum degree d with link 1, 2, ..., d. The rest is
filled by repeatedly closing the least open edge, a new vertex always taking
the least unused label. A finished surface is kept only when no other flag
at a maximum-degree vertex replays to a lexicographically smaller triangle
sequence, so each isomorphism class appears exactly once.
"""
from __future__ import annotations

import heapq
from collections import defaultdict

from .core import FiniteComplex2


class _Search:
    def __init__(self, nmax, d):
        self.nmax = nmax
        self.d = d
        self.count = {}
        self.third = defaultdict(list)
        self.tris = []
        self.tset = set()
        self.ladj = [dict() for _ in range(nmax)]
        self.closed = [False] * nmax
        self.nused = d + 1
        self.found = []

    # -- link bookkeeping -------------------------------------------------
    def _link_ok(self, v, x, y):
        """Can edge x-y join the link of v? Returns None, 'open' or 'close'."""
        if self.closed[v]:
            return None
        lk = self.ladj[v]
        lx, ly = lk.get(x), lk.get(y)
        if (lx is not None and len(lx) >= 2) or (ly is not None and len(ly) >= 2):
            return None
        size = len(lk) + (lx is None) + (ly is None)
        if size > self.d:
            return None
        if lx is not None and ly is not None:
            # walk the path from x; closing onto y must cover the whole link
            prev, cur, steps = None, x, 1
            while True:
                nb = [w for w in lk[cur] if w != prev]
                if not nb:
                    break
                prev, cur = cur, nb[0]
                steps += 1
            if cur == y:
                return "close" if steps == len(lk) else None
        return "open"

    def _add(self, a, b, c, closes):
        for v, x, y in ((a, b, c), (b, a, c), (c, a, b)):
            lk = self.ladj[v]
            lk.setdefault(x, []).append(y)
            lk.setdefault(y, []).append(x)
        for v in closes:
            self.closed[v] = True
        for e, z in (((a, b), c), ((a, c), b), ((b, c), a)):
            self.count[e] = self.count.get(e, 0) + 1
            self.third[e].append(z)
        t = (a, b, c)
        self.tris.append(t)
        self.tset.add(t)

    def _remove(self, closes):
        a, b, c = t = self.tris.pop()
        self.tset.discard(t)
        for e, z in (((a, b), c), ((a, c), b), ((b, c), a)):
            self.third[e].pop()
            k = self.count[e] - 1
            if k:
                self.count[e] = k
            else:
                del self.count[e]
        for v in closes:
            self.closed[v] = False
        for v, x, y in ((a, b, c), (b, a, c), (c, a, b)):
            lk = self.ladj[v]
            for p, q in ((x, y), (y, x)):
                lst = lk[p]
                lst.remove(q)
                if not lst:
                    del lk[p]

    # -- search -----------------------------------------------------------
    def run(self):
        d = self.d
        for i in range(1, d + 1):
            j = i % d + 1
            a, b = min(i, j), max(i, j)
            self._add(0, a, b, [])
        self.closed[0] = True
        self._recurse()
        return self.found

    def _recurse(self):
        opened = [e for e, k in self.count.items() if k == 1]
        if not opened:
            self._leaf()
            return
        a, b = min(opened)
        cands = list(range(1, self.nused))
        if self.nused < self.nmax:
            cands.append(self.nused)
        for c in cands:
            if c == a or c == b or self.closed[c]:
                continue
            ac = (a, c) if a < c else (c, a)
            bc = (b, c) if b < c else (c, b)
            if self.count.get(ac, 0) >= 2 or self.count.get(bc, 0) >= 2:
                continue
            t = tuple(sorted((a, b, c)))
            if t in self.tset:
                continue
            closes = []
            ok = True
            for v, x, y in ((a, b, c), (b, a, c), (c, a, b)):
                r = self._link_ok(v, x, y)
                if r is None:
                    ok = False
                    break
                if r == "close":
                    closes.append(v)
            if not ok:
                continue
            fresh = c == self.nused
            if fresh:
                self.nused += 1
            self._add(*t, closes)
            if not (closes and self._pruned(closes)):
                self._recurse()
            self._remove(closes)
            if fresh:
                self.nused -= 1

    def _pruned(self, closes) -> bool:
        # a newly closed vertex of maximum degree offers new starting flags
        if not any(len(self.ladj[v]) == self.d for v in closes):
            return False
        return self._smaller_flag_exists(lambda v: self.closed[v])

    def _leaf(self):
        if not self._smaller_flag_exists(lambda v: True):
            self.found.append(tuple(sorted(self.tris)))

    def _smaller_flag_exists(self, eligible) -> bool:
        d = self.d
        n = self.nused
        seq = self.tris[d:]
        third = self.third
        for v in range(n):
            if len(self.ladj[v]) != d or not eligible(v):
                continue
            cyc = _cycle(self.ladj[v])
            for s in range(d):
                for step in (1, -1):
                    if v == 0 and s == 0 and step == 1 and cyc[1] == 2 and cyc[0] == 1:
                        continue
                    order = [cyc[(s + step * i) % d] for i in range(d)]
                    if _replay_less(order, v, d, n, third, seq):
                        return True
        return False


def _cycle(lk):
    start = min(lk)
    order = [start]
    prev, cur = None, start
    while True:
        nb = [w for w in lk[cur] if w != prev]
        nxt = nb[0] if prev is not None else min(nb)
        if nxt == start:
            return order
        prev, cur = cur, nxt
        order.append(cur)


def _replay_less(order, v, d, n, third, seq) -> bool:
    """True if the flag (v, order) provably yields a smaller sequence than
    ``seq``; stops undecided where the partial complex runs out."""
    label = {v: 0}
    for i, x in enumerate(order):
        label[x] = i + 1
    old = {0: v}
    for x, k in label.items():
        old[k] = x
    count = {}
    heap = []
    done = set()
    for i in range(1, d + 1):
        j = i % d + 1
        e = (min(i, j), max(i, j))
        count[e] = 1
        heap.append(e)
        count[(0, i)] = 2
        done.add(tuple(sorted((v, order[i - 1], order[j - 1]))))
    heapq.heapify(heap)
    nxt_label = d + 1
    for expect in seq:
        e = None
        while heap:
            e = heapq.heappop(heap)
            if count.get(e) == 1:
                break
            e = None
        if e is None:
            return False
        x, y = old[e[0]], old[e[1]]
        key = (x, y) if x < y else (y, x)
        z = None
        for w in third.get(key, ()):
            t = tuple(sorted((x, y, w)))
            if t not in done:
                z = w
                break
        if z is None:
            return False
        done.add(tuple(sorted((x, y, z))))
        if z not in label:
            label[z] = nxt_label
            old[nxt_label] = z
            nxt_label += 1
        lz = label[z]
        got = tuple(sorted((e[0], e[1], lz)))
        if got != expect:
            return got < expect
        for f in ((got[0], got[1]), (got[0], got[2]), (got[1], got[2])):
            k = count.get(f, 0) + 1
            count[f] = k
            if k == 1:
                heapq.heappush(heap, f)
    return False


def enumerate_closed_surfaces(max_vertices: int, compiled: bool = True):
    """All closed connected triangulated surfaces with at most ``max_vertices``
    vertices, one per isomorphism class, labelled 0..n-1.

    ``compiled`` selects the numba kernel; the pure Python search is the
    reference it is tested against.
    """
    out = []
    for d in range(3, max_vertices):
        if compiled:
            from ._fastenum import enumerate_fast

            found = enumerate_fast(max_vertices, d)
        else:
            found = _Search(max_vertices, d).run()
        for tris in found:
            out.append(FiniteComplex2.from_triangles(tris))
    return out
