"""Independent reference computations used only by the tests."""
from __future__ import annotations

import numpy as np

P1 = 2_147_483_647
P2 = 2_147_483_629


def rank_mod(mat, p: int) -> int:
    """Rank of an integer matrix over Z/p by row reduction."""
    a = np.array(mat, dtype=np.int64) % p
    if a.size == 0:
        return 0
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        f = a[:, c].copy()
        f[r] = 0
        if f.any():
            a = (a - (f[:, None] * a[r][None, :]) % p) % p
        r += 1
        if r == rows:
            break
    return r


def boundary_matrices(K):
    verts = sorted(K.vertices)
    edges = sorted(K.edges)
    tris = sorted(K.triangles)
    vi = {v: k for k, v in enumerate(verts)}
    ei = {e: k for k, e in enumerate(edges)}
    d1 = np.zeros((len(verts), len(edges)), dtype=np.int64)
    for k, (u, v) in enumerate(edges):
        d1[vi[u], k] = -1
        d1[vi[v], k] = 1
    d2 = np.zeros((len(edges), len(tris)), dtype=np.int64)
    for k, (a, b, c) in enumerate(tris):
        d2[ei[(b, c)], k] = 1
        d2[ei[(a, c)], k] = -1
        d2[ei[(a, b)], k] = 1
    return d1, d2


def homology_class(K):
    """(orientable, genus) or (False, crosscaps) of a closed connected surface
    from Betti numbers over Q (two large primes) and Z/2."""
    d1, d2 = boundary_matrices(K)
    E, F = d1.shape[1], d2.shape[1]
    rq = []
    for p in (P1, P2):
        rq.append((rank_mod(d1, p), rank_mod(d2, p)))
    assert rq[0] == rq[1], "rank over the two primes disagrees"
    r1, r2 = rq[0]
    s1, s2 = rank_mod(d1, 2), rank_mod(d2, 2)
    b2_q = F - r2
    b1_q = E - r1 - r2
    b1_2 = E - s1 - s2
    if b2_q == 1:
        assert b1_q % 2 == 0
        return (True, b1_q // 2)
    assert b2_q == 0
    assert b1_q == b1_2 - 1
    return (False, b1_2)


def fixed_point_count(a, b, c, d, tol=1e-6):
    """Fixed points of z -> (az+b)/(cz+d) by numpy root finding: None for the
    identity, otherwise the number of distinct points on the sphere."""
    import numpy as np

    scale = max(abs(a), abs(b), abs(c), abs(d))
    coeffs = [c, d - a, -b]
    if all(abs(x) <= tol * scale for x in coeffs):
        return None
    if abs(c) <= tol * scale:
        # infinity is fixed; one more finite root unless the linear term vanishes too
        return 1 if abs(d - a) <= tol * scale else 2
    r = np.roots(coeffs)
    return 1 if abs(r[0] - r[1]) <= tol * max(1.0, abs(r[0])) else 2
