"""Compiled kernel for the surface enumeration in ``enumerate.py``.

Same search and the same canonicity rule, written over flat arrays so numba
can compile it. Vertex labels are small (at most 16).
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _link_ok(v, x, y, closed, ladj, ldeg, lsize, d):
    # 0 = reject, 1 = extend, 2 = closes the link into one cycle
    if closed[v]:
        return 0
    dx = ldeg[v, x]
    dy = ldeg[v, y]
    if dx >= 2 or dy >= 2:
        return 0
    size = lsize[v] + (1 if dx == 0 else 0) + (1 if dy == 0 else 0)
    if size > d:
        return 0
    if dx == 1 and dy == 1:
        prev = -1
        cur = x
        steps = 1
        while True:
            nxt = -1
            for k in range(2):
                w = ladj[v, cur, k]
                if w >= 0 and w != prev:
                    nxt = w
            if nxt < 0:
                break
            prev = cur
            cur = nxt
            steps += 1
        if cur == y:
            if steps == lsize[v]:
                return 2
            return 0
    return 1


@njit(cache=True)
def _link_add(v, x, y, ladj, ldeg, lsize):
    if ldeg[v, x] == 0:
        lsize[v] += 1
    if ldeg[v, y] == 0:
        lsize[v] += 1
    ladj[v, x, ldeg[v, x]] = y
    ldeg[v, x] += 1
    ladj[v, y, ldeg[v, y]] = x
    ldeg[v, y] += 1


@njit(cache=True)
def _link_del(v, x, y, ladj, ldeg, lsize):
    for p, q in ((x, y), (y, x)):
        if ladj[v, p, 0] == q:
            ladj[v, p, 0] = ladj[v, p, 1]
        ladj[v, p, 1] = -1
        ldeg[v, p] -= 1
        if ldeg[v, p] == 0:
            ladj[v, p, 0] = -1
            lsize[v] -= 1


@njit(cache=True)
def _add(a, b, c, cnt, thr, ladj, ldeg, lsize, tset, tris, ntris):
    _link_add(a, b, c, ladj, ldeg, lsize)
    _link_add(b, a, c, ladj, ldeg, lsize)
    _link_add(c, a, b, ladj, ldeg, lsize)
    thr[a, b, cnt[a, b]] = c
    cnt[a, b] += 1
    thr[a, c, cnt[a, c]] = b
    cnt[a, c] += 1
    thr[b, c, cnt[b, c]] = a
    cnt[b, c] += 1
    tset[a, b, c] = True
    tris[ntris, 0] = a
    tris[ntris, 1] = b
    tris[ntris, 2] = c


@njit(cache=True)
def _remove(a, b, c, cnt, thr, ladj, ldeg, lsize, tset):
    tset[a, b, c] = False
    cnt[a, b] -= 1
    thr[a, b, cnt[a, b]] = -1
    cnt[a, c] -= 1
    thr[a, c, cnt[a, c]] = -1
    cnt[b, c] -= 1
    thr[b, c, cnt[b, c]] = -1
    _link_del(a, b, c, ladj, ldeg, lsize)
    _link_del(b, a, c, ladj, ldeg, lsize)
    _link_del(c, a, b, ladj, ldeg, lsize)


@njit(cache=True)
def _sort3(a, b, c):
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
    if a > b:
        a, b = b, a
    return a, b, c


@njit(cache=True)
def _replay_less(order, v, d, n, thr, cnt, tris, ntris, label, old, rcnt, rdone, trail):
    """1 if flag (v, order) gives a provably smaller sequence, else 0."""
    for i in range(n):
        label[i] = -1
    label[v] = 0
    old[0] = v
    for i in range(d):
        label[order[i]] = i + 1
        old[i + 1] = order[i]
    ntrail = 0
    for i in range(1, d + 1):
        j = i % d + 1
        p, q = (i, j) if i < j else (j, i)
        rcnt[p, q] = 1
        rcnt[0, i] = 2
        a, b, c = _sort3(v, order[i - 1], order[j - 1])
        rdone[a, b, c] = True
        trail[ntrail, 0] = a
        trail[ntrail, 1] = b
        trail[ntrail, 2] = c
        ntrail += 1
    nxt = d + 1
    result = 0
    for k in range(d, ntris):
        # least open edge in label space
        ea = -1
        eb = -1
        for p in range(nxt):
            for q in range(p + 1, nxt):
                if rcnt[p, q] == 1:
                    ea = p
                    eb = q
                    break
            if ea >= 0:
                break
        if ea < 0:
            break
        x = old[ea]
        y = old[eb]
        if x > y:
            x, y = y, x
        z = -1
        for m in range(cnt[x, y]):
            w = thr[x, y, m]
            a, b, c = _sort3(x, y, w)
            if not rdone[a, b, c]:
                z = w
                break
        if z < 0:
            break
        a, b, c = _sort3(x, y, z)
        rdone[a, b, c] = True
        trail[ntrail, 0] = a
        trail[ntrail, 1] = b
        trail[ntrail, 2] = c
        ntrail += 1
        if label[z] < 0:
            label[z] = nxt
            old[nxt] = z
            nxt += 1
        g0, g1, g2 = _sort3(ea, eb, label[z])
        e0, e1, e2 = tris[k, 0], tris[k, 1], tris[k, 2]
        if g0 != e0 or g1 != e1 or g2 != e2:
            if (g0, g1, g2) < (e0, e1, e2):
                result = 1
            break
        rcnt[g0, g1] += 1
        rcnt[g0, g2] += 1
        rcnt[g1, g2] += 1
    for t in range(ntrail):
        rdone[trail[t, 0], trail[t, 1], trail[t, 2]] = False
    for p in range(n):
        for q in range(n):
            rcnt[p, q] = 0
    return result


@njit(cache=True)
def _smaller_flag(only_closed, n, d, closed, ladj, lsize, thr, cnt, tris, ntris, label, old, rcnt, rdone, trail, cyc, order):
    for v in range(n):
        if lsize[v] != d:
            continue
        if only_closed and not closed[v]:
            continue
        # link cycle of v
        start = 0
        while ladj[v, start, 0] < 0:
            start += 1
        cyc[0] = start
        prev = start
        cur = ladj[v, start, 0]
        if ladj[v, start, 1] < cur:
            cur = ladj[v, start, 1]
        m = 1
        while cur != start:
            cyc[m] = cur
            m += 1
            w = ladj[v, cur, 0]
            if w == prev:
                w = ladj[v, cur, 1]
            prev = cur
            cur = w
        for s in range(d):
            for step in (1, -1):
                for i in range(d):
                    order[i] = cyc[(s + step * i) % d]
                if v == 0:
                    same = True
                    for i in range(d):
                        if order[i] != i + 1:
                            same = False
                            break
                    if same:
                        continue
                if _replay_less(order, v, d, n, thr, cnt, tris, ntris, label, old, rcnt, rdone, trail) == 1:
                    return True
    return False


@njit(cache=True)
def enumerate_kernel(nmax, d, out, max_out):
    """Write each accepted surface's triangles into ``out``; returns the count
    and the number of triangles per surface in out[k, -1, 0]."""
    n = nmax
    fmax = out.shape[1] - 1
    cnt = np.zeros((n, n), np.int64)
    thr = -np.ones((n, n, 2), np.int64)
    ladj = -np.ones((n, n, 2), np.int64)
    ldeg = np.zeros((n, n), np.int64)
    lsize = np.zeros(n, np.int64)
    closed = np.zeros(n, np.bool_)
    tset = np.zeros((n, n, n), np.bool_)
    tris = np.zeros((fmax, 3), np.int64)
    label = np.zeros(n, np.int64)
    old = np.zeros(n, np.int64)
    rcnt = np.zeros((n, n), np.int64)
    rdone = np.zeros((n, n, n), np.bool_)
    trail = np.zeros((fmax + 1, 3), np.int64)
    cyc = np.zeros(n, np.int64)
    order = np.zeros(n, np.int64)
    # per-level search state
    la = np.zeros(fmax + 1, np.int64)
    lb = np.zeros(fmax + 1, np.int64)
    lc = np.zeros(fmax + 1, np.int64)
    lclose = np.zeros((fmax + 1, 3), np.int64)
    lnclose = np.zeros(fmax + 1, np.int64)
    lfresh = np.zeros(fmax + 1, np.bool_)
    ntris = 0
    for i in range(1, d + 1):
        j = i % d + 1
        a, b, c = _sort3(0, i, j)
        _add(a, b, c, cnt, thr, ladj, ldeg, lsize, tset, tris, ntris)
        ntris += 1
    closed[0] = True
    nused = d + 1
    found = 0
    level = 0
    need_edge = True
    while level >= 0:
        if need_edge:
            need_edge = False
            ea = -1
            eb = -1
            for p in range(nused):
                for q in range(p + 1, nused):
                    if cnt[p, q] == 1:
                        ea = p
                        eb = q
                        break
                if ea >= 0:
                    break
            if ea < 0:
                if not _smaller_flag(False, nused, d, closed, ladj, lsize, thr, cnt, tris, ntris, label, old, rcnt, rdone, trail, cyc, order):
                    if found < max_out:
                        for t in range(ntris):
                            out[found, t, 0] = tris[t, 0]
                            out[found, t, 1] = tris[t, 1]
                            out[found, t, 2] = tris[t, 2]
                        out[found, fmax, 0] = ntris
                    found += 1
                level -= 1
                if level >= 0:
                    ntris -= 1
                    _undo(level, tris, ntris, cnt, thr, ladj, ldeg, lsize, tset, closed, lclose, lnclose)
                    if lfresh[level]:
                        nused -= 1
                continue
            la[level] = ea
            lb[level] = eb
            lc[level] = 1
        a = la[level]
        b = lb[level]
        limit = nused + 1 if nused < nmax else nused
        advanced = False
        while lc[level] < limit:
            c = lc[level]
            lc[level] += 1
            if c == a or c == b or closed[c]:
                continue
            ac0, ac1 = (a, c) if a < c else (c, a)
            bc0, bc1 = (b, c) if b < c else (c, b)
            if cnt[ac0, ac1] >= 2 or cnt[bc0, bc1] >= 2:
                continue
            t0, t1, t2 = _sort3(a, b, c)
            if tset[t0, t1, t2]:
                continue
            r0 = _link_ok(a, b, c, closed, ladj, ldeg, lsize, d)
            if r0 == 0:
                continue
            r1 = _link_ok(b, a, c, closed, ladj, ldeg, lsize, d)
            if r1 == 0:
                continue
            r2 = _link_ok(c, a, b, closed, ladj, ldeg, lsize, d)
            if r2 == 0:
                continue
            nc = 0
            maxclose = False
            for vv, rr in ((a, r0), (b, r1), (c, r2)):
                if rr == 2:
                    lclose[level, nc] = vv
                    nc += 1
            lnclose[level] = nc
            fresh = c == nused
            lfresh[level] = fresh
            if fresh:
                nused += 1
            _add(t0, t1, t2, cnt, thr, ladj, ldeg, lsize, tset, tris, ntris)
            ntris += 1
            for k in range(nc):
                closed[lclose[level, k]] = True
                if lsize[lclose[level, k]] == d:
                    maxclose = True
            if maxclose and _smaller_flag(True, nused, d, closed, ladj, lsize, thr, cnt, tris, ntris, label, old, rcnt, rdone, trail, cyc, order):
                ntris -= 1
                _undo(level, tris, ntris, cnt, thr, ladj, ldeg, lsize, tset, closed, lclose, lnclose)
                if fresh:
                    nused -= 1
                continue
            advanced = True
            break
        if advanced:
            level += 1
            need_edge = True
            continue
        level -= 1
        if level >= 0:
            ntris -= 1
            _undo(level, tris, ntris, cnt, thr, ladj, ldeg, lsize, tset, closed, lclose, lnclose)
            if lfresh[level]:
                nused -= 1
    return found


@njit(cache=True)
def _undo(level, tris, ntris, cnt, thr, ladj, ldeg, lsize, tset, closed, lclose, lnclose):
    for k in range(lnclose[level]):
        closed[lclose[level, k]] = False
    _remove(tris[ntris, 0], tris[ntris, 1], tris[ntris, 2], cnt, thr, ladj, ldeg, lsize, tset)


def enumerate_fast(nmax: int, d: int):
    """Triangle lists of the accepted surfaces for one maximum degree."""
    fmax = 2 * (nmax * (nmax - 1) // 2) // 3 + 2
    cap = 1024
    while True:
        out = np.zeros((cap, fmax + 1, 3), np.int64)
        found = enumerate_kernel(nmax, d, out, cap)
        if found <= cap:
            break
        cap = found
    res = []
    for k in range(found):
        f = int(out[k, fmax, 0])
        res.append(tuple(sorted(tuple(int(x) for x in out[k, t]) for t in range(f))))
    return res
