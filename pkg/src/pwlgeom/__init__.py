"""Exact vertex counts for envelopes of piecewise linear functions and for
unions and intersections of simple polygons."""

from .bounds import (envelope_bound, envelope_bound_free, grid_maximize, intersection_bound,
                     intersection_bound_free, union_bound, union_bound_free)
from .geom import Point, point, rational
from .plf import PLFunction, census, from_points, lower_envelope, plf_new, upper_envelope
from .polygon import (SimplePolygon, Status, census_polygon, contains_point, polygon_intersection,
                      polygon_new, polygon_union)

__all__ = [
    "Point", "point", "rational",
    "PLFunction", "plf_new", "from_points", "census", "lower_envelope", "upper_envelope",
    "SimplePolygon", "Status", "polygon_new", "census_polygon", "contains_point",
    "polygon_union", "polygon_intersection",
    "envelope_bound", "union_bound", "intersection_bound",
    "envelope_bound_free", "union_bound_free", "intersection_bound_free", "grid_maximize",
]
__version__ = "0.1.0"
