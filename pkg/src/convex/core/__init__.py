"""
多面体幾何のコア: 凸包・半空間交差・体積・面・ミンコフスキー和・相対内接半径
"""

from src.convex.core.hull import convex_hull, halfspace_intersection
from src.convex.core.inradius import relative_inradius
from src.convex.core.operations import (
    hausdorff_distance,
    minkowski_sum,
    minkowski_sum_many,
    project_out,
    scale_translate,
    translate,
    translate_to_centroid,
)
from src.convex.core.polytope import (
    Facet,
    HalfspaceSystem,
    Polytope,
    contains,
    diameter,
    facets,
    support_value,
    support_values,
    vertex_centroid,
    volume,
)

__all__ = [
    "Facet",
    "HalfspaceSystem",
    "Polytope",
    "contains",
    "convex_hull",
    "diameter",
    "facets",
    "halfspace_intersection",
    "hausdorff_distance",
    "minkowski_sum",
    "minkowski_sum_many",
    "project_out",
    "relative_inradius",
    "scale_translate",
    "support_value",
    "support_values",
    "translate",
    "translate_to_centroid",
    "vertex_centroid",
    "volume",
]
