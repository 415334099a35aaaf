"""
多面体と半空間系のデータ型、および基本量（体積・支持関数など）

Polytope は頂点表現を主とし、全次元の場合は凸包計算時に得た面（Facet）を
保持します。値は生成後に変更されません。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Tuple

import numpy as np

from src.convex.core import arithmetic as ar
from src.convex.core.arithmetic import Scalar
from src.convex.exceptions import DegenerateInput, DimensionMismatch, ZeroDirection
from src.config.constants import RANK_TOLERANCE


@dataclass(frozen=True, eq=False)
class Facet:
    """
    多面体の面（余次元1の面）

    Attributes:
        normal: 外向き単位法線（厳密な単位長が得られない場合は float）
        offset: 法線方向の支持値 h_P(normal)
        measure: 面の (n-1) 次元体積
        area_vector: measure * normal（厳密モードでは有理数で厳密）
        raw_normal: 最初の非ゼロ成分の絶対値が 1 の外向き法線（厳密モードでは有理数）
        raw_offset: raw_normal · x = raw_offset が面を含む超平面
        vertex_indices: 面上にある頂点の添字（Polytope.vertices に対する）
    """

    normal: np.ndarray
    offset: Scalar
    measure: Scalar
    area_vector: np.ndarray
    raw_normal: np.ndarray
    raw_offset: Scalar
    vertex_indices: Tuple[int, ...]


class Polytope:
    """
    ℝⁿ の凸多面体（頂点表現）

    全次元でない多面体（線分・面など）はミンコフスキー和や混合体積の
    オペランドとしてのみ使われ、affine_dim < dim で区別されます。
    直接生成せず convex_hull / halfspace_intersection を使ってください。
    """

    def __init__(
        self,
        vertices: np.ndarray,
        affine_dim: int,
        facets: Optional[Tuple[Facet, ...]] = None,
    ) -> None:
        if vertices.ndim != 2 or vertices.shape[0] == 0:
            raise DegenerateInput("頂点配列は空でない (m, n) 配列である必要があります")
        self._vertices = vertices
        self._vertices.setflags(write=False)
        self.affine_dim = affine_dim
        self._facets = facets

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def dim(self) -> int:
        """空間次元 n"""
        return int(self._vertices.shape[1])

    @property
    def is_exact(self) -> bool:
        return ar.is_exact(self._vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @property
    def facets(self) -> Tuple[Facet, ...]:
        if not self.is_full_dimensional or self._facets is None:
            raise DegenerateInput(
                f"全次元でない多面体（アフィン次元 {self.affine_dim} < {self.dim}）の面は定義されません"
            )
        return self._facets

    def __len__(self) -> int:
        return int(self._vertices.shape[0])

    def __repr__(self) -> str:
        mode = "exact" if self.is_exact else "float"
        return (
            f"Polytope(dim={self.dim}, affine_dim={self.affine_dim}, "
            f"vertices={len(self)}, mode={mode})"
        )


@dataclass(frozen=True, eq=False)
class HalfspaceSystem:
    """
    半空間系 {x : normals[i] · x <= bounds[i]}

    法線は単位長である必要はありません。
    """

    normals: np.ndarray
    bounds: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.normals.shape[1])

    @property
    def is_exact(self) -> bool:
        return ar.is_exact(self.normals) and ar.is_exact(self.bounds)

    @classmethod
    def from_pairs(
        cls, constraints: Iterable[Tuple[Sequence[Any], Any]], exact: Optional[bool] = None
    ) -> "HalfspaceSystem":
        """
        (法線, 上界) の組の列から半空間系を作成

        Args:
            constraints: [(normal, bound), ...]
            exact: None の場合は入力の型から推定

        Raises:
            DimensionMismatch: 法線の長さが揃っていない場合
        """
        pairs = list(constraints)
        if not pairs:
            raise DimensionMismatch("半空間系に制約がありません")
        lengths = {len(normal) for normal, _ in pairs}
        if len(lengths) != 1:
            raise DimensionMismatch(f"法線の次元が揃っていません: {sorted(lengths)}")
        raw_normals = [list(normal) for normal, _ in pairs]
        raw_bounds = [bound for _, bound in pairs]
        if exact is None:
            normals = ar.auto_array(raw_normals)
            bounds = ar.auto_array(raw_bounds)
            normals, bounds = ar.unify(normals, bounds)
        else:
            normals = ar.as_mode(raw_normals, exact)
            bounds = ar.as_mode(raw_bounds, exact)
        return cls(normals=normals, bounds=bounds)


def facets(polytope: Polytope) -> Tuple[Facet, ...]:
    """
    全次元多面体の面のリスト

    Raises:
        DegenerateInput: 全次元でない場合
    """
    return polytope.facets


def volume(polytope: Polytope) -> Scalar:
    """
    n 次元体積

    vol = (1/n) Σ area_vector_F · p_F（p_F は面 F 上の任意の頂点）。
    原点の取り方に依存せず、厳密モードでは有理数で厳密です。
    全次元でなければ 0。
    """
    exact = polytope.is_exact
    if not polytope.is_full_dimensional:
        return Fraction(0) if exact else 0.0
    n = polytope.dim
    total: Any = Fraction(0) if exact else 0.0
    for facet in polytope.facets:
        point = polytope.vertices[facet.vertex_indices[0]]
        total = total + facet.area_vector @ point
    if exact:
        return total / n
    return float(total) / n


def support_value(polytope: Polytope, direction: Any) -> Scalar:
    """
    支持関数 h_P(u) = max_v u · v

    u は単位ベクトルでなくてよい（正斉次）。

    Raises:
        ZeroDirection: u がゼロベクトルの場合
        DimensionMismatch: u の長さが次元と異なる場合
    """
    u = direction if isinstance(direction, np.ndarray) else ar.auto_array(direction)
    if u.shape != (polytope.dim,):
        raise DimensionMismatch(f"方向の次元 {u.shape} が多面体の次元 {polytope.dim} と一致しません")
    if all(x == 0 for x in u):
        raise ZeroDirection("支持関数の方向がゼロベクトルです")
    vertices, u = ar.unify(polytope.vertices, u)
    values = vertices @ u
    if ar.is_exact(values):
        return max(values)
    return float(np.max(values))


def support_values(polytope: Polytope, directions: np.ndarray) -> np.ndarray:
    """複数方向の支持関数値（directions は (k, n)）"""
    vertices, dirs = ar.unify(polytope.vertices, directions)
    products = dirs @ vertices.T
    if ar.is_exact(products):
        out = np.empty(len(dirs), dtype=object)
        for i, row in enumerate(products):
            out[i] = max(row)
        return out
    return products.max(axis=1)


def vertex_centroid(polytope: Polytope) -> np.ndarray:
    """頂点の算術平均（厳密モードでは有理数）"""
    count = len(polytope)
    total = polytope.vertices.sum(axis=0)
    if polytope.is_exact:
        return np.array([x / count for x in total], dtype=object)
    return total / count


def diameter(polytope: Polytope) -> float:
    """頂点間距離の最大値"""
    points = ar.float_array(polytope.vertices)
    diffs = points[:, None, :] - points[None, :, :]
    return float(np.sqrt((diffs**2).sum(axis=2)).max())


def contains(outer: Polytope, inner: Polytope, tol: float = 1e-9) -> bool:
    """
    inner ⊆ outer の判定（inner の全頂点が outer の全面制約を満たすか）

    両方が厳密モードなら許容誤差なしで判定します。
    """
    if outer.dim != inner.dim:
        raise DimensionMismatch("次元が一致しません")
    normals = np.array([f.raw_normal for f in outer.facets], dtype=object)
    bounds = np.array([f.raw_offset for f in outer.facets], dtype=object)
    if outer.is_exact and inner.is_exact:
        values = inner.vertices @ normals.T
        return all(values[i, j] <= bounds[j] for i in range(values.shape[0]) for j in range(values.shape[1]))
    fn, fb, fv = ar.float_array(normals), ar.float_array(bounds), ar.float_array(inner.vertices)
    scale = max(1.0, float(np.abs(fv).max()), float(np.abs(fb).max()))
    return bool(np.all(fv @ fn.T <= fb + tol * scale))


def facet_normal_matrix(polytope: Polytope) -> np.ndarray:
    """面の単位法線を並べた float 配列 (F, n)"""
    return np.array([ar.float_array(f.normal) for f in polytope.facets], dtype=float)


def affine_rank(points: np.ndarray, tol: float = RANK_TOLERANCE) -> int:
    """点集合のアフィン次元"""
    if len(points) <= 1:
        return 0
    diffs = points[1:] - points[0]
    return ar.rank(diffs, tol)
