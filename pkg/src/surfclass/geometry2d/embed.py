"""Barycentric (Tutte) straight-line embedding of triangulated disks."""
from __future__ import annotations


from ..errors import EmbeddingError, SingularSystem
from .core import rat, Point2, Triangulation2, orientation


def solve_exact(matrix, rhs):
    """Gauss-Jordan elimination over the rationals.

    ``rhs`` is a list of row vectors (one column per right-hand side).
    Raises SingularSystem when the matrix is not invertible.
    """
    n = len(matrix)
    m = len(rhs[0]) if rhs else 0
    a = [list(map(rat, matrix[i])) + list(map(rat, rhs[i])) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularSystem(f"no pivot in column {col}")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        row = [x / p for x in a[col]]
        a[col] = row
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                ar = a[r]
                for k in range(col, n + m):
                    if row[k]:
                        ar[k] -= f * row[k]
    return [a[i][n:] for i in range(n)]


def orient_coherently(triangles, boundary):
    """Orient abstract disk triangles so the boundary runs counterclockwise."""
    tris = [tuple(t) for t in triangles]
    by_edge = {}
    for k, (a, b, c) in enumerate(tris):
        for u, v in ((a, b), (b, c), (c, a)):
            by_edge.setdefault(frozenset((u, v)), []).append(k)
    oriented = [None] * len(tris)
    u, v = boundary[0], boundary[1]
    owners = by_edge.get(frozenset((u, v)), [])
    if len(owners) != 1:
        raise EmbeddingError("first boundary edge is not a boundary edge of the triangulation")
    start = owners[0]
    (w,) = set(tris[start]) - {u, v}
    oriented[start] = (u, v, w)
    stack = [start]
    while stack:
        k = stack.pop()
        a, b, c = oriented[k]
        for x, y in ((a, b), (b, c), (c, a)):
            for j in by_edge[frozenset((x, y))]:
                if j == k:
                    continue
                (z,) = set(tris[j]) - {x, y}
                want = (y, x, z)
                if oriented[j] is None:
                    oriented[j] = want
                    stack.append(j)
                elif _cyclic(oriented[j]) != _cyclic(want):
                    raise EmbeddingError("triangulation is not orientable as a disk")
    if any(t is None for t in oriented):
        raise EmbeddingError("triangulation is not connected")
    return oriented


def _cyclic(t):
    a, b, c = t
    k = min(range(3), key=lambda i: t[i])
    return t[k:] + t[:k]


def convex_embed(triangles, boundary, boundary_positions) -> Triangulation2:
    """Place interior vertices at the average of their neighbours.

    Vertices are the integers ``0..N-1``; ``boundary`` is the boundary cycle
    and ``boundary_positions`` the matching convex polygon, counterclockwise.
    Every output triangle is checked to be positively oriented.
    """
    boundary = list(boundary)
    pos_b = [p if isinstance(p, Point2) else Point2(*map(rat, p)) for p in boundary_positions]
    if len(pos_b) != len(boundary):
        raise EmbeddingError("one position per boundary vertex is required")
    nb = len(pos_b)
    for i in range(nb):
        if orientation(pos_b[i - 1], pos_b[i], pos_b[(i + 1) % nb]) < 0:
            raise EmbeddingError("boundary placement is not convex")
    tris = orient_coherently(triangles, boundary)
    n = 1 + max(max(t) for t in tris)
    nbrs = {i: set() for i in range(n)}
    for a, b, c in tris:
        nbrs[a] |= {b, c}
        nbrs[b] |= {a, c}
        nbrs[c] |= {a, b}
    fixed = dict(zip(boundary, pos_b))
    interior = [v for v in range(n) if v not in fixed and nbrs[v]]
    col = {v: k for k, v in enumerate(interior)}
    pts = [None] * n
    for v, p in fixed.items():
        pts[v] = p
    if interior:
        mat = [[0] * len(interior) for _ in interior]
        rhs = [[rat(0), rat(0)] for _ in interior]
        for v in interior:
            r = col[v]
            mat[r][r] = len(nbrs[v])
            for u in nbrs[v]:
                if u in col:
                    mat[r][col[u]] -= 1
                else:
                    rhs[r][0] += fixed[u].x
                    rhs[r][1] += fixed[u].y
        sol = solve_exact(mat, rhs)
        for v in interior:
            x, y = sol[col[v]]
            pts[v] = Point2(x, y)
    for t in tris:
        if orientation(pts[t[0]], pts[t[1]], pts[t[2]]) <= 0:
            raise EmbeddingError(f"triangle {t} is not positively oriented")
    return Triangulation2(tuple(pts), tuple(tris), (tuple(boundary),))
