"""
等号ケースの検出器
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.config.constants import HOMOTHETY_TOLERANCE
from src.convex.core import arithmetic as ar
from src.convex.core.directions import merge_directions
from src.convex.core.polytope import Polytope, support_values


@dataclass
class Homothety:
    """h_L(u) ≈ ratio·h_K(u) + translation·u の最小二乗解"""

    homothetic: bool
    ratio: float
    translation: np.ndarray
    residual: float


def detect_homothety(first: Polytope, second: Polytope, tol: float = HOMOTHETY_TOLERANCE) -> Homothety:
    """
    second = λ·first + t（λ > 0）かどうかを両者の法線扇の和集合上で判定

    残差は max|h_L - λh_K - t·u| / max(1, max|h_L|)。
    """
    n = first.dim
    groups = [
        np.array([ar.float_array(f.normal) for f in body.facets])
        for body in (first, second)
        if body.is_full_dimensional
    ]
    if len(groups) < 2:
        return Homothety(False, 0.0, np.zeros(n), float("inf"))
    directions = merge_directions(groups)
    h_first = ar.float_array(support_values(first, directions))
    h_second = ar.float_array(support_values(second, directions))
    system = np.hstack([h_first[:, None], directions])
    solution, *_ = np.linalg.lstsq(system, h_second, rcond=None)
    residual = float(np.abs(system @ solution - h_second).max()) / max(1.0, float(np.abs(h_second).max()))
    ratio = float(solution[0])
    return Homothety(ratio > 0 and residual <= tol, ratio, solution[1:], residual)


def all_homothetic(bodies: Sequence[Polytope], tol: float = HOMOTHETY_TOLERANCE) -> bool:
    """すべての物体が最初の物体と相似か"""
    return all(detect_homothety(bodies[0], body, tol).homothetic for body in bodies[1:])


def is_axis_box(polytope: Polytope, tol: float = HOMOTHETY_TOLERANCE) -> bool:
    """座標軸に平行な直方体か（すべての面法線が ±e_i）"""
    if not polytope.is_full_dimensional:
        return False
    for facet in polytope.facets:
        if polytope.is_exact:
            if sum(1 for x in facet.raw_normal if x != 0) != 1:
                return False
        else:
            normal = np.abs(ar.float_array(facet.normal))
            if float(np.sort(normal)[:-1].sum()) > tol:
                return False
    return len(polytope.facets) == 2 * polytope.dim
