"""Exact rational planar geometry."""
from .arrangement import Arrangement, Face, arrangement, split_segments, trace_cycles
from .core import (
    Point2,
    PolygonalRegion,
    Rat,
    Segment,
    SimplePolygon,
    Triangulation2,
    cross,
    on_segment,
    orientation,
    point_in_polygon,
    pt,
    rat,
    segment_intersection,
    signed_area,
    signed_area2,
    validate_simple,
)
from .embed import convex_embed, solve_exact
from .plmap import (
    PLMap,
    VerifyReport,
    identity_map,
    plmap_compose,
    plmap_eval,
    plmap_invert,
    plmap_verify,
)
from .triangulate import earclip, triangulate_cycle, triangulate_polygon
