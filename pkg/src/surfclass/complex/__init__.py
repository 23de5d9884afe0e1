"""Finite simplicial 2-complexes, surface checks and invariants."""
from .canon import canonical_code, combinatorially_equivalent, isomorphic
from .core import (
    FiniteComplex2,
    PieceInvariants,
    SpanComponent,
    SurfaceKind,
    complement_span,
    connected_components,
    disjoint_union,
    invariants,
    orient_triangles,
    standardize,
    subdivide,
    surface_check,
    validate_complex,
)
from .enumerate import enumerate_closed_surfaces
