"""
多面体の演算: ミンコフスキー和、相似変換、座標射影、平行移動、ハウスドルフ距離
"""

import math
from fractions import Fraction
from typing import Any, List

import numpy as np

from src.config.constants import HAUSDORFF_SAMPLE_FACTOR
from src.convex.core import arithmetic as ar
from src.convex.core.directions import sphere_directions, unit_float
from src.convex.core.hull import convex_hull
from src.convex.core.polytope import (
    Facet,
    Polytope,
    support_values,
    vertex_centroid,
)
from src.convex.exceptions import DimensionMismatch, NegativeScale


def minkowski_sum(first: Polytope, second: Polytope) -> Polytope:
    """
    ミンコフスキー和 P + Q（頂点和の凸包）

    Raises:
        DimensionMismatch: 次元が異なる場合
    """
    if first.dim != second.dim:
        raise DimensionMismatch(f"次元が一致しません: {first.dim} と {second.dim}")
    a, b = ar.unify(first.vertices, second.vertices)
    points = (a[:, None, :] + b[None, :, :]).reshape(-1, first.dim)
    return convex_hull(points, allow_lower=True)


def minkowski_sum_many(bodies: List[Polytope]) -> Polytope:
    """複数の多面体のミンコフスキー和（左から順に畳み込む）"""
    if not bodies:
        raise DimensionMismatch("ミンコフスキー和には少なくとも1つの多面体が必要です")
    total = bodies[0]
    for body in bodies[1:]:
        total = minkowski_sum(total, body)
    return total


def scale_translate(polytope: Polytope, scale: Any, translation: Any = None) -> Polytope:
    """
    x ↦ λx + t による像

    面データは凸包を計算し直さずに変換します。

    Args:
        polytope: 対象の多面体
        scale: λ >= 0
        translation: t（None はゼロベクトル）

    Raises:
        NegativeScale: λ < 0 の場合
    """
    n = polytope.dim
    exact = polytope.is_exact
    lam = ar.auto_array([scale])[0] if not isinstance(scale, (Fraction, float)) else scale
    if lam < 0:
        raise NegativeScale(f"スケール係数が負です: {scale}")
    shift = ar.zeros(n, exact) if translation is None else (
        translation if isinstance(translation, np.ndarray) else ar.auto_array(translation)
    )
    if shift.shape != (n,):
        raise DimensionMismatch(f"平行移動ベクトルの次元が {n} ではありません")

    keep_exact = exact and isinstance(lam, Fraction) and ar.is_exact(shift)
    if not keep_exact:
        vertices = ar.float_array(polytope.vertices)
        lam, shift = float(lam), ar.float_array(shift)
    else:
        vertices = polytope.vertices

    if lam == 0:
        return Polytope(shift.reshape(1, n).copy(), 0)
    image = vertices * lam + shift
    if not polytope.is_full_dimensional:
        return Polytope(image, polytope.affine_dim)

    power = lam ** (n - 1)
    new_facets = []
    for facet in polytope.facets:
        if keep_exact:
            area, normal, raw = facet.area_vector, facet.normal, facet.raw_normal
            offset, raw_offset = facet.offset, facet.raw_offset
        else:
            area, normal, raw = (ar.float_array(v) for v in (facet.area_vector, facet.normal, facet.raw_normal))
            offset, raw_offset = float(facet.offset), float(facet.raw_offset)
        offset_shift = normal @ shift if ar.is_exact(normal) == ar.is_exact(shift) else float(
            ar.float_array(normal) @ ar.float_array(shift)
        )
        new_facets.append(
            Facet(
                normal=normal,
                offset=offset * lam + offset_shift,
                measure=facet.measure * power if keep_exact else float(facet.measure) * power,
                area_vector=area * power,
                raw_normal=raw,
                raw_offset=raw_offset * lam + raw @ shift,
                vertex_indices=facet.vertex_indices,
            )
        )
    return Polytope(image, n, tuple(new_facets))


def translate(polytope: Polytope, translation: Any) -> Polytope:
    """平行移動 P + t"""
    one = Fraction(1) if polytope.is_exact else 1.0
    return scale_translate(polytope, one, translation)


def translate_to_centroid(polytope: Polytope) -> Polytope:
    """頂点重心が原点になるように平行移動"""
    return translate(polytope, -vertex_centroid(polytope))


def project_out(polytope: Polytope, coordinate: int) -> Polytope:
    """
    座標 j を削除する射影 π_j(P)（次元 n-1 の多面体）

    Raises:
        DimensionMismatch: n < 2 または j が範囲外の場合
    """
    n = polytope.dim
    if n < 2:
        raise DimensionMismatch("射影には 2 次元以上が必要です")
    if not 0 <= coordinate < n:
        raise DimensionMismatch(f"座標 {coordinate} は 0..{n - 1} の範囲外です")
    points = np.delete(polytope.vertices, coordinate, axis=1)
    return convex_hull(points, allow_lower=True)


def hausdorff_distance(first: Polytope, second: Polytope) -> float:
    """
    ハウスドルフ距離 max_u |h_P(u) - h_Q(u)|

    n = 2 で両方が全次元の場合は法線扇の共通細分の各弧で最大値を厳密に
    求めます。それ以外は両者の面法線、頂点方向、頂点重心の差の方向、
    10n² 個の準一様方向で評価した下界です。
    """
    if first.dim != second.dim:
        raise DimensionMismatch(f"次元が一致しません: {first.dim} と {second.dim}")
    n = first.dim
    if n == 2 and first.is_full_dimensional and second.is_full_dimensional:
        return _planar_hausdorff(first, second)
    return _sampled_hausdorff(first, second)


def _support_gap(first: Polytope, second: Polytope, directions: np.ndarray) -> float:
    if len(directions) == 0:
        return 0.0
    fd = ar.float_array(directions)
    hp = ar.float_array(support_values(first, fd))
    hq = ar.float_array(support_values(second, fd))
    return float(np.abs(hp - hq).max())


def _sampled_hausdorff(first: Polytope, second: Polytope) -> float:
    n = first.dim
    groups: List[np.ndarray] = []
    for body in (first, second):
        if body.is_full_dimensional:
            groups.append(np.array([unit_float(f.normal) for f in body.facets]))
        points = ar.float_array(body.vertices)
        lengths = np.linalg.norm(points, axis=1)
        groups.append(points[lengths > 1e-15] / lengths[lengths > 1e-15, None])
    shift = ar.float_array(vertex_centroid(first)) - ar.float_array(vertex_centroid(second))
    if np.linalg.norm(shift) > 0:
        unit = shift / np.linalg.norm(shift)
        groups.append(np.array([unit, -unit]))
    groups.append(sphere_directions(n, HAUSDORFF_SAMPLE_FACTOR * n * n))
    directions = np.vstack([g for g in groups if len(g)])
    return _support_gap(first, second, directions)


def _cross(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def _planar_hausdorff(first: Polytope, second: Polytope) -> float:
    rays = [unit_float(f.normal) for f in first.facets] + [unit_float(f.normal) for f in second.facets]
    rays.sort(key=lambda u: math.atan2(u[1], u[0]))
    # 角度がほぼ同じ光線は一本にまとめる
    distinct: List[np.ndarray] = []
    for ray in rays:
        if not distinct or np.linalg.norm(ray - distinct[-1]) > 1e-12:
            distinct.append(ray)
    if len(distinct) > 1 and np.linalg.norm(distinct[0] - distinct[-1]) <= 1e-12:
        distinct.pop()

    pv, qv = ar.float_array(first.vertices), ar.float_array(second.vertices)
    candidates = list(distinct)
    for k, start in enumerate(distinct):
        end = distinct[(k + 1) % len(distinct)]
        middle = start + end
        if np.linalg.norm(middle) < 1e-15:
            continue
        middle = middle / np.linalg.norm(middle)
        gap = pv[int(np.argmax(pv @ middle))] - qv[int(np.argmax(qv @ middle))]
        length = float(np.linalg.norm(gap))
        if length == 0.0:
            continue
        for sign in (1.0, -1.0):
            u = sign * gap / length
            if _cross(start, u) >= 0.0 and _cross(u, end) >= 0.0:
                candidates.append(u)
    return _support_gap(first, second, np.array(candidates))
