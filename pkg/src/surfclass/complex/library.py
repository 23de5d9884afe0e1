"""Small standard triangulations."""
from __future__ import annotations

from .core import FiniteComplex2


def triangle() -> FiniteComplex2:
    return FiniteComplex2.from_triangles([(0, 1, 2)])


def tetrahedron() -> FiniteComplex2:
    return FiniteComplex2.from_triangles([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def octahedron() -> FiniteComplex2:
    # poles 0 and 5 over the square 1-2-3-4
    ring = [1, 2, 3, 4]
    tris = []
    for i in range(4):
        a, b = ring[i], ring[(i + 1) % 4]
        tris += [(0, a, b), (5, a, b)]
    return FiniteComplex2.from_triangles(tris)


TORUS7 = [((i) % 7, (i + 1) % 7, (i + 3) % 7) for i in range(7)] + [
    (i % 7, (i + 2) % 7, (i + 3) % 7) for i in range(7)
]

# hemi-icosahedron: the antipodal quotient of the icosahedron
RP2_6 = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
]


def torus7() -> FiniteComplex2:
    return FiniteComplex2.from_triangles(TORUS7)


def rp2_6() -> FiniteComplex2:
    return FiniteComplex2.from_triangles(RP2_6)


def cone_disk(cycle, apex) -> FiniteComplex2:
    n = len(cycle)
    return FiniteComplex2.from_triangles([(apex, cycle[i], cycle[(i + 1) % n]) for i in range(n)])


def annulus(inner, outer) -> FiniteComplex2:
    """Strip between two equal-length cycles: 2n triangles."""
    n = len(inner)
    tris = []
    for i in range(n):
        a0, a1 = inner[i], inner[(i + 1) % n]
        b0, b1 = outer[i], outer[(i + 1) % n]
        tris += [(a0, a1, b0), (a1, b1, b0)]
    return FiniteComplex2.from_triangles(tris)
