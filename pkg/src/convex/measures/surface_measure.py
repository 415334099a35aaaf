"""
表面積測度（単位球面上の有限原子測度）

原子は面積ベクトル w = weight·normal で保持します。重み・単位法線は
そこから導出され、多面体とのペアリング Σ h_L(w_i) や重心欠損 Σ w_i は
厳密モードで有理数のまま厳密に計算されます。
"""

import math
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.config.constants import NEGATIVE_RESIDUE_TOLERANCE, NORMAL_ANGLE_TOLERANCE
from src.convex.core import arithmetic as ar
from src.convex.core.arithmetic import Scalar
from src.convex.core.directions import DirectionIndex, positive_multiple
from src.convex.core.operations import minkowski_sum_many, project_out, scale_translate
from src.convex.core.polytope import Polytope, support_values, volume
from src.convex.exceptions import (
    DegenerateInput,
    DimensionMismatch,
    NonPositive,
    NumericalResidue,
    ZeroDirection,
)
from src.convex.measures.support_sample import SupportSample


class SurfaceMeasure:
    """
    有限個の原子 (normal, weight) からなる正値測度

    同じ方向の原子は一つにまとめられ、重みはすべて正です。
    """

    def __init__(self, area_vectors: np.ndarray, dim: Optional[int] = None) -> None:
        if area_vectors.ndim != 2:
            raise DimensionMismatch("面積ベクトルは (m, n) 配列である必要があります")
        self.area_vectors = area_vectors
        self.area_vectors.setflags(write=False)
        self._dim = int(area_vectors.shape[1]) if dim is None else dim
        self._index: Optional[DirectionIndex] = None

    # ===== 生成 =====
    @classmethod
    def from_atoms(
        cls, normals: Any, weights: Any, exact: Optional[bool] = None
    ) -> "SurfaceMeasure":
        """
        (法線, 重み) の組から測度を作成

        法線は単位長でなくてもよく、原子の面積ベクトルは weight·normal/|normal| です。
        厳密モードで |normal| が無理数になる原子があれば、測度全体を浮動小数点にします。

        Raises:
            NonPositive: 重みが 0 以下の場合
            ZeroDirection: 法線がゼロベクトルの場合
        """
        dirs = normals if isinstance(normals, np.ndarray) else ar.auto_array(normals)
        wts = weights if isinstance(weights, np.ndarray) else ar.auto_array(weights)
        if exact is not None:
            dirs, wts = ar.as_mode(dirs, exact), ar.as_mode(wts, exact)
        else:
            dirs, wts = ar.unify(dirs, wts)
        if dirs.ndim != 2 or wts.shape != (dirs.shape[0],):
            raise DimensionMismatch("法線と重みの個数が一致しません")
        if any(w <= 0 for w in wts):
            raise NonPositive("原子の重みはすべて正である必要があります")
        lengths = [ar.norm(d) for d in dirs]
        if any(length == 0 for length in lengths):
            raise ZeroDirection("原子の法線にゼロベクトルがあります")
        if ar.is_exact(dirs) and all(isinstance(length, Fraction) for length in lengths):
            vectors = np.array(
                [[x * w / length for x in d] for d, w, length in zip(dirs, wts, lengths)],
                dtype=object,
            ).reshape(dirs.shape)
        else:
            fd, fw = ar.float_array(dirs), ar.float_array(wts)
            vectors = fd * (fw / np.array([float(x) for x in lengths]))[:, None]
        return merge_area_vectors(vectors, [1] * len(vectors), dim=dirs.shape[1])

    @classmethod
    def zero(cls, dim: int, exact: bool = True) -> "SurfaceMeasure":
        return cls(ar.zeros((0, dim), exact), dim=dim)

    # ===== 属性 =====
    @property
    def dim(self) -> int:
        return self._dim

    @property
    def is_exact(self) -> bool:
        return ar.is_exact(self.area_vectors)

    def __len__(self) -> int:
        return int(self.area_vectors.shape[0])

    def __repr__(self) -> str:
        return f"SurfaceMeasure(dim={self.dim}, atoms={len(self)})"

    @property
    def weights(self) -> List[Scalar]:
        """各原子の重み |w_i|（厳密な平方根が無ければ float）"""
        return [ar.norm(w) for w in self.area_vectors]

    @property
    def normals(self) -> List[np.ndarray]:
        """各原子の単位法線（厳密な単位長が得られなければ float）"""
        return [ar.normalize(w) for w in self.area_vectors]

    def total_weight(self) -> float:
        return float(sum(float(w) for w in self.weights))

    def index(self) -> DirectionIndex:
        if self._index is None:
            self._index = DirectionIndex(self.area_vectors)
        return self._index

    def weight_at(self, direction: np.ndarray) -> Scalar:
        """方向 direction の原子の重み（無ければ 0）"""
        found = self.index().find(direction)
        if found is None:
            return Fraction(0) if self.is_exact else 0.0
        return ar.norm(self.area_vectors[found])

    def spans(self) -> bool:
        """原子の法線が ℝⁿ を張るか（大部分球面に集中していないか）"""
        if len(self) == 0:
            return False
        return ar.rank(ar.float_array(self.area_vectors)) == self.dim

    # ===== 演算 =====
    def __add__(self, other: "SurfaceMeasure") -> "SurfaceMeasure":
        if other.dim != self.dim:
            raise DimensionMismatch("次元が一致しません")
        mine, theirs = ar.unify(self.area_vectors, other.area_vectors)
        stacked = np.vstack([mine, theirs]) if len(mine) and len(theirs) else (mine if len(mine) else theirs)
        return merge_area_vectors(stacked, [1] * len(stacked), dim=self.dim)

    def scaled(self, factor: Any) -> "SurfaceMeasure":
        """factor 倍（factor > 0）"""
        if factor <= 0:
            raise NonPositive("測度のスケール係数は正である必要があります")
        if self.is_exact and isinstance(factor, (int, Fraction)):
            vectors = self.area_vectors * Fraction(factor)
        else:
            vectors = ar.float_array(self.area_vectors) * float(factor)
        return SurfaceMeasure(vectors, dim=self.dim)

    def as_float(self) -> "SurfaceMeasure":
        return SurfaceMeasure(ar.float_array(self.area_vectors), dim=self.dim)


def merge_area_vectors(
    vectors: np.ndarray, coefficients: Sequence[Any], dim: int
) -> SurfaceMeasure:
    """
    符号付き係数つきの面積ベクトルを方向ごとに合算して測度を作る

    合算後に負になる原子は、厳密モードでは即座に、浮動小数点では
    重み総和の 1e-10 倍を超える場合に NumericalResidue とします。
    0（または許容誤差内）になった原子は取り除きます。
    """
    exact = ar.is_exact(vectors)
    bases: List[np.ndarray] = []
    totals: List[Any] = []
    index: Dict[Tuple[Fraction, ...], int] = {}
    float_units: List[np.ndarray] = []
    scale = 0.0
    for vector, coefficient in zip(vectors, coefficients):
        if all(x == 0 for x in vector):
            continue
        scale += abs(float(coefficient)) * float(np.linalg.norm(ar.float_array(vector)))
        if exact:
            key = ar.canonical_key(vector)
            slot = index.get(key)
            if slot is None:
                index[key] = len(bases)
                bases.append(vector)
                totals.append(Fraction(coefficient))
            else:
                totals[slot] += Fraction(coefficient) * positive_multiple(vector, bases[slot])
        else:
            fv = ar.float_array(vector)
            unit = fv / np.linalg.norm(fv)
            slot = _find_float(float_units, unit)
            if slot is None:
                float_units.append(unit)
                bases.append(fv)
                totals.append(float(coefficient))
            else:
                totals[slot] += float(coefficient) * positive_multiple(fv, bases[slot])

    rows: List[np.ndarray] = []
    for base, total in zip(bases, totals):
        if exact:
            if total < 0:
                raise NumericalResidue(f"合算後の原子の重みが負になりました: {float(total * ar.norm(base))}")
            if total == 0:
                continue
            rows.append(base * total)
        else:
            weight = total * float(np.linalg.norm(base))
            if weight < -NEGATIVE_RESIDUE_TOLERANCE * max(1.0, scale):
                raise NumericalResidue(f"合算後の原子の重みが負になりました: {weight}")
            if weight <= NEGATIVE_RESIDUE_TOLERANCE * max(1.0, scale):
                continue
            rows.append(base * total)
    if not rows:
        return SurfaceMeasure.zero(dim, exact)
    return SurfaceMeasure(np.array(rows, dtype=object if exact else float).reshape(len(rows), dim), dim=dim)


def _find_float(units: List[np.ndarray], unit: np.ndarray) -> Optional[int]:
    for i, other in enumerate(units):
        chord = float(np.linalg.norm(other - unit))
        if 2.0 * math.asin(min(1.0, chord / 2.0)) < NORMAL_ANGLE_TOLERANCE:
            return i
    return None


def area_measure(polytope: Polytope, allow_lower: bool = False) -> SurfaceMeasure:
    """
    表面積測度 S(P^{n-1}; ·): 各面に (法線, 面積) の原子

    Args:
        polytope: 全次元の多面体
        allow_lower: True の場合、アフィン次元 n-1 の多面体は ±w の2原子
            （|w| は (n-1) 次元体積）、それ以下は零測度を返す

    Raises:
        DegenerateInput: 全次元でなく allow_lower=False の場合
    """
    n = polytope.dim
    if polytope.is_full_dimensional:
        vectors = np.array([f.area_vector for f in polytope.facets], dtype=object if polytope.is_exact else float)
        return SurfaceMeasure(vectors.reshape(len(polytope.facets), n), dim=n)
    if not allow_lower:
        raise DegenerateInput("表面積測度には全次元の多面体が必要です")
    if polytope.affine_dim < n - 1:
        return SurfaceMeasure.zero(n, polytope.is_exact)
    flat = flat_area_vector(polytope)
    return SurfaceMeasure(np.array([flat, -flat], dtype=flat.dtype), dim=n)


def flat_area_vector(polytope: Polytope) -> np.ndarray:
    """
    アフィン次元 n-1 の多面体の面積ベクトル w（|w| = (n-1) 次元体積）

    成分 j は座標 j を落とした射影の体積に、超平面法線の第 j 成分の符号を付けたもの。
    """
    n = polytope.dim
    exact = polytope.is_exact
    if n == 1:
        return ar.as_mode([1], exact)
    diffs = polytope.vertices[1:] - polytope.vertices[0]
    rows = _independent_rows(ar.float_array(diffs), n - 1)
    normal = ar.cofactor_normal(diffs[rows])
    out = ar.zeros(n, exact)
    for j in range(n):
        if normal[j] == 0:
            continue
        shadow = volume(project_out(polytope, j))
        out[j] = shadow if normal[j] > 0 else -shadow
    return out


def _independent_rows(fm: np.ndarray, count: int) -> List[int]:
    chosen: List[int] = []
    basis: List[np.ndarray] = []
    for i in np.argsort(-np.linalg.norm(fm, axis=1)):
        vec = fm[i].copy()
        for q in basis:
            vec = vec - (vec @ q) * q
        length = float(np.linalg.norm(vec))
        if length > 1e-12 * max(1.0, float(np.abs(fm).max())):
            chosen.append(int(i))
            basis.append(vec / length)
            if len(chosen) == count:
                break
    if len(chosen) < count:
        raise DegenerateInput("平坦な多面体の張る超平面を決定できません")
    return chosen


def _multiplicity_groups(bodies: Sequence[Polytope]) -> Tuple[List[Polytope], List[int]]:
    """同一オブジェクトの引数をまとめて (相異なる物体, 重複度)"""
    distinct: List[Polytope] = []
    counts: List[int] = []
    for body in bodies:
        for k, seen in enumerate(distinct):
            if seen is body:
                counts[k] += 1
                break
        else:
            distinct.append(body)
            counts.append(1)
    return distinct, counts


def polarization_terms(bodies: Sequence[Polytope]):
    """
    分極公式の項 (符号付き係数, Σ c_j K_j の係数列 c) を列挙

    Σ_{c ≠ 0} (-1)^{N-|c|} Π C(m_j, c_j) F(Σ c_j K_j) の各項。
    """
    distinct, counts = _multiplicity_groups(bodies)
    total = len(bodies)
    for profile in product(*(range(m + 1) for m in counts)):
        size = sum(profile)
        if size == 0:
            continue
        coefficient = (-1) ** (total - size)
        for m, c in zip(counts, profile):
            coefficient *= math.comb(m, c)
        yield coefficient, distinct, profile


def weighted_sum(distinct: Sequence[Polytope], profile: Sequence[int]) -> Tuple[Polytope, int]:
    """
    Σ c_j K_j を返す（単独の物体なら拡大前の物体と次数用の倍率を返す）

    Returns:
        (物体, 倍率): 単独項では (K_j, c_j)、それ以外は (和, 1)
    """
    used = [(body, c) for body, c in zip(distinct, profile) if c > 0]
    if len(used) == 1:
        return used[0][0], used[0][1]
    parts = [body if c == 1 else scale_translate(body, Fraction(c) if body.is_exact else float(c)) for body, c in used]
    return minkowski_sum_many(parts), 1


def mixed_area_measure(bodies: Sequence[Polytope]) -> SurfaceMeasure:
    """
    混合面積測度 S(K_1, ..., K_{n-1}; ·)

    面積測度の分極: (1/(n-1)!) Σ_c (-1)^{n-1-|c|} Π C(m_j,c_j) S(Σ c_j K_j)。
    同じ方向の原子を合算し、負の残差は NumericalResidue。

    Raises:
        DimensionMismatch: 物体が n-1 個でない、または次元が揃わない場合
    """
    if not bodies:
        raise DimensionMismatch("混合面積測度には n-1 個の物体が必要です")
    n = bodies[0].dim
    if len(bodies) != n - 1 or any(b.dim != n for b in bodies):
        raise DimensionMismatch(f"混合面積測度には次元 {n} の物体が {n - 1} 個必要です")
    exact = all(b.is_exact for b in bodies)
    norm_factor = Fraction(1, math.factorial(n - 1)) if exact else 1.0 / math.factorial(n - 1)

    vectors: List[np.ndarray] = []
    coefficients: List[Any] = []
    for sign, distinct, profile in polarization_terms(bodies):
        body, factor = weighted_sum(distinct, profile)
        measure = area_measure(body, allow_lower=True)
        if not exact:
            measure = measure.as_float()
        power = factor ** (n - 1)
        for w in measure.area_vectors:
            vectors.append(w)
            coefficients.append(sign * power * norm_factor)
    if not vectors:
        return SurfaceMeasure.zero(n, exact)
    stacked = np.array(vectors, dtype=object if exact else float).reshape(len(vectors), n)
    return merge_area_vectors(stacked, coefficients, dim=n)


def integrate(measure: SurfaceMeasure, function: Union[SupportSample, Polytope]) -> Scalar:
    """
    ペアリング ∫ f dμ = Σ f(normal_i)·weight_i = Σ f(w_i)（f は正斉次）

    Args:
        measure: 測度
        function: 多面体（支持関数）または SupportSample

    Raises:
        MissingDirection: SupportSample が原子の方向を含まない場合
    """
    if len(measure) == 0:
        return Fraction(0) if measure.is_exact else 0.0
    if isinstance(function, Polytope):
        if function.dim != measure.dim:
            raise DimensionMismatch("次元が一致しません")
        values = support_values(function, measure.area_vectors)
    else:
        if function.dim != measure.dim:
            raise DimensionMismatch("次元が一致しません")
        values = function.values_on(measure.area_vectors)
    if ar.is_exact(values):
        return sum(values, Fraction(0))
    return float(np.sum(ar.float_array(values)))


def centroid_defect(measure: SurfaceMeasure) -> np.ndarray:
    """重心欠損 Σ weight_i·normal_i"""
    if len(measure) == 0:
        return ar.zeros(measure.dim, measure.is_exact)
    return measure.area_vectors.sum(axis=0)
