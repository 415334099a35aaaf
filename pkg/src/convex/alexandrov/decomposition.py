"""
アレクサンドロフ体と (𝒞_p, vol) の分解

有限個の方向でサンプリングされた正値関数 f に対し、
K = ⋂ {x : x·u_i <= f(u_i)} を f のアレクサンドロフ体と呼び、

    f = P(f) + N(f),   P(f) = h_K,   N(f) = f - h_K >= 0

と分解します。K の面は制約超平面なので、K の面法線方向では N(f) = 0 となり
直交性 ∫ N(f) dS(K^{n-1}) = 0 が成り立ちます。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from src.config import env_loader
from src.config.constants import DERIVATIVE_STEP, ORTHOGONALITY_TOLERANCE
from src.convex.core import arithmetic as ar
from src.convex.core.arithmetic import Scalar
from src.convex.core.directions import positive_multiple
from src.convex.core.hull import halfspace_intersection
from src.convex.core.polytope import HalfspaceSystem, Polytope, support_values, volume
from src.convex.exceptions import DegenerateInput, DimensionMismatch, MissingDirection, NonPositive
from src.convex.measures.support_sample import SupportSample
from src.convex.measures.surface_measure import SurfaceMeasure, area_measure
from src.types import DecompositionDict
from src.utils.logger import setup_logger

logger = setup_logger("alexandrov", log_dir=env_loader.LOG_DIR + "/geometry")


@dataclass
class Decomposition:
    """
    f = P(f) + N(f) の分解結果

    Attributes:
        body: アレクサンドロフ体 K
        positive_part: P(f) = h_K（f と同じ方向）
        negative_part: N(f) = f - P(f)（>= 0）
        orthogonality_defect: ∫ N(f) dS(K^{n-1})
        tolerance: 欠損の許容量 1e-10·(Σ 重み·max|f|)
    """

    body: Polytope
    positive_part: SupportSample
    negative_part: SupportSample
    orthogonality_defect: Scalar
    tolerance: float = 0.0

    @property
    def is_orthogonal(self) -> bool:
        return abs(float(self.orthogonality_defect)) <= self.tolerance

    def to_dict(self) -> DecompositionDict:
        return {
            "dimension": self.body.dim,
            "vertices": ar.format_matrix(self.body.vertices),
            "volume": ar.format_scalar(volume(self.body)),
            "directions": ar.format_matrix(self.positive_part.directions),
            "positive_part": ar.format_vector(self.positive_part.values),
            "negative_part": ar.format_vector(self.negative_part.values),
            "orthogonality_defect": ar.format_scalar(self.orthogonality_defect),
            "orthogonal": self.is_orthogonal,
        }


def _require_positive(f: SupportSample) -> None:
    if len(f) == 0:
        raise NonPositive("空のサンプルにはアレクサンドロフ体がありません")
    if not f.is_strictly_positive():
        raise NonPositive("アレクサンドロフ体には厳密に正の関数が必要です")


def alexandrov_body(f: SupportSample) -> Polytope:
    """
    f のアレクサンドロフ体 K = ⋂ {x : x·u_i <= f(u_i)}

    Raises:
        NonPositive: 0 以下の値がある場合
        Unbounded: 方向が閉半空間に収まる場合
    """
    _require_positive(f)
    return halfspace_intersection(HalfspaceSystem(f.directions, f.values))


def volume_of_function(f: SupportSample) -> Scalar:
    """vol(f) := vol(K)（K は f のアレクサンドロフ体）"""
    return volume(alexandrov_body(f))


def _atom_slots(measure: SurfaceMeasure, f: SupportSample) -> List[Tuple[int, Any]]:
    """
    測度の各原子を f の方向に割り当て (添字, 倍率 c) を返す（w = c·u_k）

    厳密モードでは同一視ルールで完全一致、浮動小数点では最も近い方向。
    """
    slots: List[Tuple[int, Any]] = []
    for w in measure.area_vectors:
        k = f.index_of(w)
        if k is None:
            if ar.is_exact(w) and f.is_exact:
                raise MissingDirection(f"方向 {ar.float_array(w)} がサンプルにありません")
            k = f.nearest_index(w)
        slots.append((k, positive_multiple(w, f.directions[k])))
    return slots


def _pair(measure: SurfaceMeasure, f: SupportSample, slots: Optional[List[Tuple[int, Any]]] = None) -> Scalar:
    """∫ g dμ を原子の割り当てに沿って計算"""
    slots = _atom_slots(measure, f) if slots is None else slots
    exact = measure.is_exact and f.is_exact
    total: Any = Fraction(0) if exact else 0.0
    for k, factor in slots:
        if exact and not isinstance(factor, float):
            total += factor * f.values[k]
        else:
            total += float(factor) * float(f.values[k])
    return total


def decompose(f: SupportSample) -> Decomposition:
    """
    f = P(f) + N(f) の分解

    Raises:
        NonPositive: 0 以下の値がある場合
        Unbounded: 方向が閉半空間に収まる場合
    """
    body = alexandrov_body(f)
    values, support = ar.unify(f.values, support_values(body, f.directions))
    negative = values - support
    measure = area_measure(body)
    slots = _atom_slots(measure, f)
    defect = _pair(measure, f.with_values(negative.copy()), slots)
    if not ar.is_exact(negative):
        # 面の方向の丸め誤差は返す部分でだけ 0 に揃える（欠損は丸め前の値で測る）
        scale = max(1.0, f.max_abs())
        for k, _ in slots:
            negative[k] = 0.0
            support[k] = values[k]
        negative[(negative < 0) & (negative > -1e-12 * scale)] = 0.0
    positive_part = f.with_values(support)
    negative_part = f.with_values(negative)
    bound = ORTHOGONALITY_TOLERANCE * max(1.0, measure.total_weight() * f.max_abs())
    if abs(float(defect)) > bound:
        logger.warning(f"直交性の欠損 {float(defect):.3e} が許容量 {bound:.3e} を超えています")
    return Decomposition(
        body=body,
        positive_part=positive_part,
        negative_part=negative_part,
        orthogonality_defect=defect,
        tolerance=bound,
    )


def polar_volume(
    f: SupportSample, candidates: Sequence[Polytope] = ()
) -> Tuple[Scalar, Polytope]:
    """
    斉次化された極体積 inf_K (V(K^{n-1}, f) / vol(K)^{(n-1)/n})^n の候補上の最小値

    商は V(K^{n-1}, f)^n / vol(K)^{n-1} と書けるので厳密モードでは有理数です。
    候補には常に f のアレクサンドロフ体が加えられ、そこで最小値 vol(P(f)) に達します。
    面法線が f の方向に含まれない候補は評価できないため除外します。

    Returns:
        (最小値, 最小を与える候補)

    Raises:
        NonPositive: 0 以下の値がある場合
    """
    _require_positive(f)
    n = f.dim
    own = alexandrov_body(f)
    best: Optional[Tuple[Scalar, Polytope]] = None
    for body in [*candidates, own]:
        if body.dim != n:
            raise DimensionMismatch("候補の次元が f と一致しません")
        if not body.is_full_dimensional:
            continue
        measure = area_measure(body)
        try:
            slots = _atom_slots(measure, f) if body is own else _strict_slots(measure, f)
            pairing = _pair(measure, f, slots)
        except MissingDirection:
            logger.debug("面法線が f の方向に含まれない候補を除外しました")
            continue
        mixed = pairing / n
        vol = volume(body)
        if isinstance(mixed, Fraction) and isinstance(vol, Fraction):
            quotient: Scalar = mixed**n / vol ** (n - 1)
        else:
            quotient = float(mixed) ** n / float(vol) ** (n - 1)
        if best is None or quotient < best[0]:
            best = (quotient, body)
    if best is None:
        raise DegenerateInput("極体積を評価できる候補がありません")
    return best


def _strict_slots(measure: SurfaceMeasure, f: SupportSample) -> List[Tuple[int, Any]]:
    """同一視ルールに一致する方向だけを許す割り当て"""
    slots: List[Tuple[int, Any]] = []
    for w in measure.area_vectors:
        k = f.index_of(w)
        if k is None:
            raise MissingDirection(f"方向 {ar.float_array(w)} がサンプルにありません")
        slots.append((k, positive_multiple(w, f.directions[k])))
    return slots


def derivative_of_volume(f: SupportSample, g: SupportSample) -> Tuple[Scalar, float]:
    """
    d/dt|₀ vol(f + t·g) の解析値と数値微分

    解析値は ∫ g dS(K^{n-1}) = n·V(K^{n-1}, g)（K は f のアレクサンドロフ体）、
    数値微分は刻み 1e-5·scale の中心差分です。

    Returns:
        (analytic, numeric)

    Raises:
        MissingDirection: g が f の方向を含まない場合
    """
    _require_positive(f)
    aligned = f.aligned(g)
    g_on_f = SupportSample(f.directions, aligned)
    body = alexandrov_body(f)
    analytic = _pair(area_measure(body), g_on_f)

    f_float = f.as_float()
    g_float = ar.float_array(g_on_f.as_float().values)
    step = DERIVATIVE_STEP * max(1.0, f_float.max_abs()) / max(1.0, float(np.abs(g_float).max()))
    plus = float(volume_of_function(f_float.with_values(f_float.values + step * g_float)))
    minus = float(volume_of_function(f_float.with_values(f_float.values - step * g_float)))
    numeric = (plus - minus) / (2.0 * step)
    logger.debug(f"体積の微分: 解析値 {float(analytic):.6e}, 数値微分 {numeric:.6e}")
    return analytic, numeric
