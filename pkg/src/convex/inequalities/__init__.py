"""
不等式チェック（等号ケースの検出・混合判別式を含む）
"""

from src.convex.inequalities.checks import (
    check_alexandrov_decomposition,
    check_alexandrov_fenchel,
    check_blaschke_compatibility,
    check_box_bound,
    check_brunn_minkowski,
    check_derivative_lemma,
    check_diskant_bound,
    check_improved_bm,
    check_indecomposability,
    check_kneser_suss,
    check_log_concavity,
    check_loomis_whitney,
    check_minkowski_first,
    check_mixed_body_volume,
    check_mixed_discriminant_kt,
    check_mixed_volume_linearity,
    check_morse,
    check_oracle_equivalence,
    check_polar_volume,
    check_reverse_kt,
    check_solver_round_trip,
    mixed_body_volumes,
)
from src.convex.inequalities.detectors import Homothety, all_homothetic, detect_homothety, is_axis_box
from src.convex.inequalities.discriminant import SymmetricMatrix, mixed_discriminant
from src.convex.inequalities.report import CheckReport

__all__ = [
    "CheckReport",
    "Homothety",
    "SymmetricMatrix",
    "all_homothetic",
    "check_alexandrov_decomposition",
    "check_alexandrov_fenchel",
    "check_blaschke_compatibility",
    "check_box_bound",
    "check_brunn_minkowski",
    "check_derivative_lemma",
    "check_diskant_bound",
    "check_improved_bm",
    "check_indecomposability",
    "check_kneser_suss",
    "check_log_concavity",
    "check_loomis_whitney",
    "check_minkowski_first",
    "check_mixed_body_volume",
    "check_mixed_discriminant_kt",
    "check_mixed_volume_linearity",
    "check_morse",
    "check_oracle_equivalence",
    "check_polar_volume",
    "check_reverse_kt",
    "check_solver_round_trip",
    "detect_homothety",
    "is_axis_box",
    "mixed_body_volumes",
    "mixed_discriminant",
]
