"""
トーリック側の確認: フロップの例と格子点・体積の対応
"""

from src.convex.toric.flop import (
    FlopDivisor,
    WallJump,
    check_flop_volume,
    flop_wall_jump,
    section_count_closed_form,
    section_count_flop,
    volume_closed_form,
    volume_flop,
)
from src.convex.toric.lattice import LatticePolytope, check_volume_correspondence, lattice_point_count

__all__ = [
    "FlopDivisor",
    "LatticePolytope",
    "WallJump",
    "check_flop_volume",
    "check_volume_correspondence",
    "flop_wall_jump",
    "lattice_point_count",
    "section_count_closed_form",
    "section_count_flop",
    "volume_closed_form",
    "volume_flop",
]
