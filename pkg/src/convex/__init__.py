"""
凸幾何ライブラリ

多面体の混合体積・表面積測度・ミンコフスキー問題・アレクサンドロフ分解・不等式チェック・
トーリック側の体積計算を、厳密な有理数演算（Fraction）と浮動小数点演算の両方で提供します。
"""

from src.convex.alexandrov import Decomposition, alexandrov_body, decompose, polar_volume, volume_of_function
from src.convex.core import HalfspaceSystem, Polytope, convex_hull, halfspace_intersection, volume
from src.convex.inequalities import CheckReport
from src.convex.measures import SupportSample, SurfaceMeasure, area_measure, mixed_area_measure, mixed_volume
from src.convex.solver import SolverOptions, blaschke_add, mixed_body, solve_minkowski

__all__ = [
    "CheckReport",
    "Decomposition",
    "HalfspaceSystem",
    "Polytope",
    "SolverOptions",
    "SupportSample",
    "SurfaceMeasure",
    "alexandrov_body",
    "area_measure",
    "blaschke_add",
    "convex_hull",
    "decompose",
    "halfspace_intersection",
    "mixed_area_measure",
    "mixed_body",
    "mixed_volume",
    "polar_volume",
    "solve_minkowski",
    "volume",
    "volume_of_function",
]
