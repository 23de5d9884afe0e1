from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complexgen import random_legal_edges
from oracles import homology_class
from surfclass.complex import (
    FiniteComplex2,
    canonical_code,
    combinatorially_equivalent,
    complement_span,
    connected_components,
    disjoint_union,
    enumerate_closed_surfaces,
    invariants,
    isomorphic,
    subdivide,
    surface_check,
    validate_complex,
)
from surfclass.complex.library import annulus, octahedron, rp2_6, tetrahedron, torus7, triangle
from surfclass.errors import IsolatedVertexViolation, MissingFace, NotSubcomplex, SharedTriangle


def test_validate_complex():
    T = tetrahedron()
    assert validate_complex(T.vertices, T.edges, T.triangles) == T
    with pytest.raises(MissingFace):
        validate_complex({0, 1, 2}, {(1, 2), (0, 2)}, {(0, 1, 2)})
    with pytest.raises(IsolatedVertexViolation):
        validate_complex({0, 1, 2, 5}, {(0, 1), (1, 2), (0, 2)}, {(0, 1, 2)})


def test_surface_check_examples():
    assert surface_check(tetrahedron()).kind == "Closed"
    k = surface_check(triangle())
    assert k.kind == "Bordered" and k.boundary_circles == 1
    bowtie = FiniteComplex2.from_triangles([(0, 1, 2), (0, 3, 4)])
    k = surface_check(bowtie)
    assert k.kind == "NotSurface" and k.witness == ("pinch vertex", 0)
    book = FiniteComplex2.from_triangles([(0, 1, 2), (0, 1, 3), (0, 1, 4)])
    assert surface_check(book).witness[1] == (0, 1)


def test_invariants_examples():
    t = torus7()
    assert (len(t.vertices), len(t.edges), len(t.triangles)) == (7, 21, 14)
    inv = invariants(t)
    assert (inv.euler, inv.orientable, inv.genus, inv.boundary_circles) == (0, True, 1, 0)
    p = rp2_6()
    assert (len(p.vertices), len(p.edges), len(p.triangles)) == (6, 15, 10)
    inv = invariants(p)
    assert (inv.euler, inv.orientable, inv.crosscaps) == (1, False, 1)
    inv = invariants(triangle())
    assert (inv.euler, inv.orientable, inv.genus, inv.boundary_circles, inv.planar) == (1, True, 0, 1, True)


def test_subdivide_examples():
    T = tetrahedron()
    S = subdivide(T, [(0, 1)])
    assert (len(S.vertices), len(S.edges), len(S.triangles)) == (5, 9, 6)
    assert S.euler == 2
    assert subdivide(T, []) == T
    with pytest.raises(SharedTriangle):
        subdivide(T, [(0, 1), (1, 2)])


def test_components():
    T = tetrahedron()
    assert len(connected_components(disjoint_union(T, T))) == 2
    assert len(connected_components(T)) == 1
    assert connected_components(FiniteComplex2.empty()) == []


def _strip():
    tris = []
    for i in range(4):
        tris += [(i, i + 1, i + 5), (i + 1, i + 6, i + 5)]
    return FiniteComplex2.from_triangles(tris)


def test_complement_span_examples():
    K = _strip()
    assert len(K.triangles) == 8
    end = FiniteComplex2.from_triangles([(0, 1, 5), (1, 6, 5)])
    parts = complement_span(K, end)
    assert len(parts) == 1
    assert 4 in parts[0].vertices and 9 in parts[0].vertices
    assert parts[0].frontier == frozenset({(1, 6)})
    assert complement_span(K, K) == []
    whole = complement_span(K, FiniteComplex2.empty())
    assert len(whole) == 1 and whole[0].triangles == K.triangles
    with pytest.raises(NotSubcomplex):
        complement_span(K, FiniteComplex2.from_triangles([(0, 1, 9)]))


SMALL = enumerate_closed_surfaces(8, compiled=False)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, len(SMALL) - 1), st.integers(0, 10**6), st.booleans())
def test_subdivision_preserves_invariants(idx, seed, puncture):
    rng = random.Random(seed)
    K = SMALL[idx]
    if puncture:
        t = sorted(K.triangles)[rng.randrange(len(K.triangles))]
        K = FiniteComplex2.from_triangles(K.triangles - {t})
    before = invariants(K)
    S = subdivide(K, random_legal_edges(K, rng))
    after = invariants(S)
    assert after == before
    kind = surface_check(S)
    assert kind.boundary_circles == before.boundary_circles
    assert (kind.kind == "Closed") == (not puncture)


def test_enumeration_matches_homology_oracle_small():
    for K in SMALL:
        assert invariants(K).classification == homology_class(K)


def test_enumeration_compiled_matches_reference():
    a = sorted(sorted(K.triangles) for K in enumerate_closed_surfaces(8, compiled=True))
    b = sorted(sorted(K.triangles) for K in SMALL)
    assert a == b


def test_enumeration_census():
    from collections import Counter

    c = Counter(len(K.vertices) for K in enumerate_closed_surfaces(9))
    assert [c[n] for n in range(4, 10)] == [1, 1, 3, 9, 43, 655]


def test_enumerated_classes_pairwise_nonisomorphic():
    codes = [canonical_code(K) for K in SMALL]
    assert len(set(codes)) == len(codes)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(SMALL) - 1), st.permutations(range(8)))
def test_canonical_code_is_label_invariant(idx, perm):
    K = SMALL[idx]
    L = K.relabel({v: perm[v] + 20 for v in K.vertices})
    assert isomorphic(K, L)


def test_combinatorial_equivalence():
    T = tetrahedron()
    assert combinatorially_equivalent(T, subdivide(T, [(2, 3)]).relabel({4: 9})) == "Yes"
    assert combinatorially_equivalent(T, torus7(), depth=1) == "Unknown"
    assert combinatorially_equivalent(octahedron(), octahedron().relabel({0: 7})) == "Yes"


def test_annulus_library():
    A = annulus([0, 1, 2, 3], [4, 5, 6, 7])
    assert surface_check(A).boundary_circles == 2
    assert invariants(A).euler == 0
