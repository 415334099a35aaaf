"""
支持関数・測度・混合体積
"""

from src.convex.measures.mixed_volume import mixed_volume, mixed_volume_via_measure
from src.convex.measures.support_sample import SupportSample
from src.convex.measures.surface_measure import (
    SurfaceMeasure,
    area_measure,
    centroid_defect,
    integrate,
    mixed_area_measure,
)

__all__ = [
    "SupportSample",
    "SurfaceMeasure",
    "area_measure",
    "centroid_defect",
    "integrate",
    "mixed_area_measure",
    "mixed_volume",
    "mixed_volume_via_measure",
]
