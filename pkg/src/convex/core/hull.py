"""
凸包と半空間交差（V表現 ⇄ H表現）

組合せ構造の候補は qhull（scipy.spatial）から浮動小数点で得て、
厳密モードでは各面の超平面・各頂点を有理数で計算し直し、
全入力点・全制約に対して厳密に検証します。検証に失敗した場合は
NumericalResidue を送出し、誤った組合せ構造を黙って返すことはしません。
"""

import itertools
import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError

from src.config import env_loader
from src.config.constants import (
    ACTIVE_CONSTRAINT_TOLERANCE,
    HULL_NEAR_BOUNDARY_TOLERANCE,
    NORMAL_ANGLE_TOLERANCE,
    RANK_TOLERANCE,
)
from src.convex.core import arithmetic as ar
from src.convex.core.directions import positively_spans
from src.convex.core.polytope import Facet, HalfspaceSystem, Polytope
from src.convex.exceptions import (
    DegenerateInput,
    DimensionMismatch,
    EmptyPolytope,
    NumericalResidue,
    Unbounded,
)
from src.utils.logger import setup_logger

logger = setup_logger("hull", log_dir=env_loader.LOG_DIR + "/geometry")

# 退化した頂点で試す活性制約の組の上限
_MAX_BASIS_CANDIDATES = 200


def convex_hull(points: Any, allow_lower: bool = False) -> Polytope:
    """
    点集合の凸包

    Args:
        points: (m, n) の点列。Fraction / int / "p/q" のみなら厳密モード
        allow_lower: True の場合、全次元でない点集合からアフィン次元の低い
            多面体（affine_dim < n）を返す

    Returns:
        端点のみを頂点に持つ Polytope

    Raises:
        DegenerateInput: 全次元でなく allow_lower=False の場合
        NumericalResidue: qhull の組合せ構造が厳密検証に失敗した場合

    Example:
        >>> square = convex_hull([[0, 0], [1, 0], [0, 1], [1, 1]])
        >>> len(square)
        4
    """
    arr = points if isinstance(points, np.ndarray) else ar.auto_array(points)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise DegenerateInput("点集合は空でない (m, n) 配列である必要があります")
    if arr.shape[1] < 1:
        raise DimensionMismatch("空間次元は 1 以上である必要があります")
    arr = _unique_points(arr)
    n = arr.shape[1]

    basis = _affine_basis(ar.float_array(arr))
    if len(basis) - 1 < n:
        if not allow_lower:
            raise DegenerateInput(
                f"点集合のアフィン次元 {len(basis) - 1} が空間次元 {n} より小さいため全次元の凸包になりません"
            )
        return _lower_dimensional_hull(arr, basis)

    if ar.is_exact(arr):
        simplex = arr[basis[1:]] - arr[basis[0]]
        if ar.det(simplex) == 0:
            raise NumericalResidue("浮動小数点で選んだアフィン基底が厳密には退化しています")

    vertex_index, facet_list = _full_hull(arr)
    return Polytope(arr[vertex_index], n, tuple(facet_list))


def halfspace_intersection(system: HalfspaceSystem) -> Polytope:
    """
    半空間系 {x : a_i·x <= b_i} の頂点表現

    厳密モードでは qhull の頂点から活性制約を取り出して頂点を有理数で
    解き直し、全制約を厳密に満たすことを確認します。

    Raises:
        EmptyPolytope: 実行不能な場合
        Unbounded: 後退方向が存在する場合
        DegenerateInput: 交差が全次元でない場合
        NumericalResidue: 厳密な頂点を再構成できない場合
    """
    normals, bounds = system.normals, system.bounds
    exact = system.is_exact
    if not exact:
        normals, bounds = ar.float_array(normals), ar.float_array(bounds)

    keep: List[int] = []
    for i in range(normals.shape[0]):
        if all(x == 0 for x in normals[i]):
            if bounds[i] < 0:
                raise EmptyPolytope(f"制約 {i} は 0 <= {bounds[i]} で実行不能です")
            continue
        keep.append(i)
    if not keep:
        raise Unbounded("有効な制約がありません")
    normals, bounds = normals[keep], bounds[keep]
    fa, fb = ar.float_array(normals), ar.float_array(bounds)
    n = fa.shape[1]

    _check_bounded(fa)
    center = _chebyshev_center(fa, fb)

    if n == 1:
        return _interval_intersection(normals, bounds)

    halfspaces = np.hstack([fa, -fb[:, None]])
    try:
        intersection = HalfspaceIntersection(halfspaces, center)
    except QhullError as e:
        raise NumericalResidue(f"半空間交差の計算に失敗しました: {e}") from e
    candidates = intersection.intersections
    candidates = candidates[np.all(np.isfinite(candidates), axis=1)]

    if not exact:
        return convex_hull(np.unique(np.round(candidates, 12), axis=0))

    scale = max(1.0, float(np.abs(fb).max()), float(np.abs(candidates).max()) * float(np.abs(fa).max()))
    tol = ACTIVE_CONSTRAINT_TOLERANCE * scale
    exact_vertices: Dict[Tuple[Fraction, ...], np.ndarray] = {}
    for point in candidates:
        vertex = _exact_vertex(normals, bounds, fa, fb, point, tol)
        exact_vertices[tuple(vertex)] = vertex
    return convex_hull(np.array(list(exact_vertices.values()), dtype=object))


def intersect_with_interior(
    normals: np.ndarray, bounds: np.ndarray, interior: np.ndarray
) -> Polytope:
    """
    内点が既知の浮動小数点半空間系の交差（有界性の判定を省略する高速版）

    Args:
        normals: (m, n) float 配列（ℝⁿ を正に張ることは呼び出し側が保証）
        bounds: (m,) float 配列
        interior: すべての制約を厳密な不等号で満たす点

    Raises:
        NumericalResidue: qhull が失敗した場合
    """
    halfspaces = np.hstack([normals, -bounds[:, None]])
    try:
        intersection = HalfspaceIntersection(halfspaces, interior)
    except QhullError as e:
        raise NumericalResidue(f"半空間交差の計算に失敗しました: {e}") from e
    points = intersection.intersections
    points = points[np.all(np.isfinite(points), axis=1)]
    return convex_hull(np.unique(np.round(points, 12), axis=0))


def _exact_vertex(
    normals: np.ndarray,
    bounds: np.ndarray,
    fa: np.ndarray,
    fb: np.ndarray,
    point: np.ndarray,
    tol: float,
) -> np.ndarray:
    """浮動小数点頂点の活性制約から厳密な頂点を再構成"""
    n = fa.shape[1]
    residual = np.abs(fa @ point - fb)
    active = [int(i) for i in np.argsort(residual) if residual[i] <= tol]
    if len(active) < n:
        raise NumericalResidue(f"頂点 {point} の活性制約が {len(active)} 個しかありません")

    tried = 0
    for subset in _independent_subsets(fa, active, n):
        tried += 1
        if tried > _MAX_BASIS_CANDIDATES:
            break
        rows = list(subset)
        solution = ar.solve(normals[rows], bounds[rows])
        if solution is None:
            continue
        values = normals @ solution
        if all(values[i] <= bounds[i] for i in range(len(bounds))):
            return solution
    raise NumericalResidue(f"頂点 {point} を厳密に再構成できませんでした")


def _independent_subsets(fa: np.ndarray, active: List[int], n: int):
    """活性制約から一次独立な n 本の組を、残差の小さい順を優先して列挙"""
    greedy = _greedy_independent(fa, active, n)
    if greedy is not None:
        yield tuple(greedy)
    for subset in itertools.combinations(active, n):
        if greedy is not None and sorted(subset) == sorted(greedy):
            continue
        if np.linalg.matrix_rank(fa[list(subset)]) == n:
            yield subset


def _greedy_independent(fa: np.ndarray, rows: Sequence[int], n: int) -> Optional[List[int]]:
    chosen: List[int] = []
    basis: List[np.ndarray] = []
    for i in rows:
        vec = fa[i] / np.linalg.norm(fa[i])
        for q in basis:
            vec = vec - (vec @ q) * q
        length = np.linalg.norm(vec)
        if length > 1e-9:
            chosen.append(i)
            basis.append(vec / length)
            if len(chosen) == n:
                return chosen
    return None


def _check_bounded(fa: np.ndarray) -> None:
    """法線が ℝⁿ を正に張る（全係数 >= 1 の正結合で 0 になる）ことを確認"""
    if np.linalg.matrix_rank(fa) < fa.shape[1]:
        raise Unbounded("制約の法線が ℝⁿ を張らないため非有界です")
    if not positively_spans(fa):
        raise Unbounded("法線が閉半空間に含まれるため後退方向が存在します")


def _chebyshev_center(fa: np.ndarray, fb: np.ndarray) -> np.ndarray:
    """最大内接球の中心（空・退化の判定を兼ねる）"""
    m, n = fa.shape
    norms = np.linalg.norm(fa, axis=1)
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    result = linprog(
        c=cost,
        A_ub=np.hstack([fa, norms[:, None]]),
        b_ub=fb,
        bounds=[(None, None)] * (n + 1),
        method="highs",
    )
    if result.status != 0:
        raise NumericalResidue(f"チェビシェフ中心の線形計画が失敗しました: {result.message}")
    radius = float(result.x[-1])
    scale = max(1.0, float(np.abs(fb / norms).max()))
    if radius < -RANK_TOLERANCE * scale:
        raise EmptyPolytope("半空間系が実行不能です（空集合）")
    if radius <= RANK_TOLERANCE * scale:
        raise DegenerateInput("半空間交差が全次元ではありません")
    return result.x[:-1]


def _interval_intersection(normals: np.ndarray, bounds: np.ndarray) -> Polytope:
    uppers = [bounds[i] / normals[i, 0] for i in range(len(bounds)) if normals[i, 0] > 0]
    lowers = [bounds[i] / normals[i, 0] for i in range(len(bounds)) if normals[i, 0] < 0]
    exact = ar.is_exact(normals)
    points = ar.as_mode([[max(lowers)], [min(uppers)]], exact)
    return convex_hull(points)


def _unique_points(arr: np.ndarray) -> np.ndarray:
    """重複点を除去（最初の出現順を保つ）"""
    if ar.is_exact(arr):
        seen: Dict[Tuple[Fraction, ...], int] = {}
        for i, row in enumerate(arr):
            seen.setdefault(tuple(row), i)
        return arr[sorted(seen.values())]
    _, index = np.unique(arr, axis=0, return_index=True)
    return arr[np.sort(index)]


def _affine_basis(fpts: np.ndarray, tol: float = RANK_TOLERANCE) -> List[int]:
    """最大ピボットのグラム・シュミットでアフィン独立な点の添字を選ぶ"""
    n = fpts.shape[1]
    diffs = fpts - fpts[0]
    scale = max(1.0, float(np.abs(diffs).max()))
    residual = diffs.copy()
    chosen = [0]
    for _ in range(n):
        lengths = np.linalg.norm(residual, axis=1)
        j = int(np.argmax(lengths))
        if lengths[j] <= tol * scale:
            break
        q = residual[j] / lengths[j]
        chosen.append(j)
        residual = residual - np.outer(residual @ q, q)
    return chosen


def _lower_dimensional_hull(arr: np.ndarray, basis: List[int]) -> Polytope:
    """アフィン次元 k < n の凸包（k 個の座標への単射な射影で計算）"""
    k = len(basis) - 1
    if k == 0:
        return Polytope(arr[basis[:1]].copy(), 0)
    origin = arr[basis[0]]
    spanning = arr[basis[1:]] - origin
    _, _, pivots = scipy.linalg.qr(ar.float_array(spanning), pivoting=True)
    columns = sorted(int(c) for c in pivots[:k])
    if ar.is_exact(arr):
        inv = ar.inverse(spanning[:, columns])
        if inv is None:
            raise NumericalResidue("平坦な点集合の座標射影が単射になりません")
        diffs = arr - origin
        residual = (diffs[:, columns] @ inv) @ spanning - diffs
        if any(x != 0 for x in residual.ravel()):
            raise NumericalResidue("点集合は浮動小数点では平坦ですが厳密には平坦ではありません")
    projected = arr[:, columns]
    vertex_index, _ = _full_hull(projected)
    return Polytope(arr[vertex_index], k)


def _full_hull(arr: np.ndarray) -> Tuple[List[int], List[Facet]]:
    """全次元の点集合の (頂点の添字, 面のリスト)"""
    n = arr.shape[1]
    if n == 1:
        return _interval_hull(arr)
    if ar.is_exact(arr):
        return _exact_hull(arr)
    return _float_hull(arr)


def _interval_hull(arr: np.ndarray) -> Tuple[List[int], List[Facet]]:
    values = list(arr[:, 0])
    lo = min(range(len(values)), key=lambda i: values[i])
    hi = max(range(len(values)), key=lambda i: values[i])
    exact = ar.is_exact(arr)
    one = Fraction(1) if exact else 1.0
    upper = Facet(
        normal=ar.as_mode([one], exact),
        offset=values[hi],
        measure=one,
        area_vector=ar.as_mode([one], exact),
        raw_normal=ar.as_mode([one], exact),
        raw_offset=values[hi],
        vertex_indices=(1,),
    )
    lower = Facet(
        normal=ar.as_mode([-one], exact),
        offset=-values[lo],
        measure=one,
        area_vector=ar.as_mode([-one], exact),
        raw_normal=ar.as_mode([-one], exact),
        raw_offset=-values[lo],
        vertex_indices=(0,),
    )
    return [lo, hi], [lower, upper]


def _run_qhull(fpts: np.ndarray) -> ConvexHull:
    try:
        return ConvexHull(fpts)
    except QhullError as e:
        raise NumericalResidue(f"qhull が凸包の計算に失敗しました: {e}") from e


def _make_facet(
    area: np.ndarray,
    raw_normal: np.ndarray,
    raw_offset: Any,
    vertex_indices: Tuple[int, ...],
    anchor: np.ndarray,
) -> Facet:
    measure = ar.norm(area)
    if isinstance(measure, Fraction):
        normal = np.array([x / measure for x in area], dtype=object)
        offset: Any = normal @ anchor
    else:
        normal = ar.float_array(area) / measure
        offset = float(normal @ ar.float_array(anchor))
    return Facet(
        normal=normal,
        offset=offset,
        measure=measure,
        area_vector=area,
        raw_normal=raw_normal,
        raw_offset=raw_offset,
        vertex_indices=vertex_indices,
    )


def _exact_hull(arr: np.ndarray) -> Tuple[List[int], List[Facet]]:
    m, n = arr.shape
    fpts = ar.float_array(arr)
    hull = _run_qhull(fpts)
    center = np.array([x / m for x in arr.sum(axis=0)], dtype=object)

    groups: Dict[Tuple[Fraction, ...], np.ndarray] = {}
    for simplex in hull.simplices:
        corner = arr[simplex]
        normal = ar.cofactor_normal(corner[1:] - corner[0])
        if all(x == 0 for x in normal):
            continue
        offset = normal @ corner[0]
        side = normal @ center - offset
        if side == 0:
            raise NumericalResidue("qhull の面が重心を通過しています")
        if side > 0:
            normal, offset = -normal, -offset
        key = ar.canonical_key(normal, offset)
        if key in groups:
            groups[key] = groups[key] + normal
        else:
            groups[key] = normal

    keys = list(groups.keys())
    raw = np.array([key[:n] for key in keys], dtype=object)
    raw_offsets = np.array([key[n] for key in keys], dtype=object)
    scale_factor = Fraction(math.factorial(n - 1))
    areas = [np.array([x / scale_factor for x in groups[key]], dtype=object) for key in keys]

    total = sum(areas, ar.zeros(n, True))
    if any(x != 0 for x in total):
        raise NumericalResidue("面の面積ベクトルの総和が 0 になりません（閉包性の不整合）")

    # 全点 × 全面の厳密検証（境界近傍の組のみ有理数で判定）
    fraw, foff = ar.float_array(raw), ar.float_array(raw_offsets)
    residual = fpts @ fraw.T - foff
    tol = HULL_NEAR_BOUNDARY_TOLERANCE * max(1.0, float(np.abs(fpts).max())) * max(1.0, float(np.abs(fraw).max()))
    if (residual > tol).any():
        raise NumericalResidue("qhull の面の外側に入力点があります")
    incidence: List[List[int]] = [[] for _ in range(m)]
    for i, f in np.argwhere(np.abs(residual) <= tol):
        value = raw[f] @ arr[i] - raw_offsets[f]
        if value > 0:
            raise NumericalResidue(f"点 {i} が面 {f} の厳密な超平面の外側にあります")
        if value == 0:
            incidence[i].append(int(f))

    vertex_index = [i for i in range(m) if _is_vertex(incidence[i], fraw, raw, n)]
    position = {point: k for k, point in enumerate(vertex_index)}
    facet_list: List[Facet] = []
    for f in range(len(keys)):
        on_facet = tuple(position[i] for i in vertex_index if f in incidence[i])
        if len(on_facet) < n:
            raise NumericalResidue(f"面 {f} 上の頂点が {len(on_facet)} 個しかありません")
        facet_list.append(
            _make_facet(areas[f], raw[f], raw_offsets[f], on_facet, arr[vertex_index[on_facet[0]]])
        )
    return vertex_index, facet_list


def _is_vertex(incident: List[int], fraw: np.ndarray, raw: np.ndarray, n: int) -> bool:
    if len(incident) < n:
        return False
    if np.linalg.matrix_rank(fraw[incident], tol=1e-12) == n:
        return True
    return ar.rank(raw[incident]) == n


def _float_hull(arr: np.ndarray) -> Tuple[List[int], List[Facet]]:
    n = arr.shape[1]
    hull = _run_qhull(arr)
    simplices = hull.simplices
    equations = hull.equations
    corners = arr[simplices]
    areas = ar.cofactor_normals(corners[:, 1:, :] - corners[:, :1, :]) / math.factorial(n - 1)
    signs = np.sign(np.einsum("ij,ij->i", areas, equations[:, :n]))
    areas = areas * signs[:, None]

    scale = max(1.0, float(np.abs(arr).max()))
    group_normals: List[np.ndarray] = []
    group_offsets: List[float] = []
    group_areas: List[np.ndarray] = []
    for s in range(len(simplices)):
        normal, offset = equations[s, :n], -equations[s, n]
        for g, (gn, go) in enumerate(zip(group_normals, group_offsets)):
            if np.linalg.norm(gn - normal) < NORMAL_ANGLE_TOLERANCE and abs(go - offset) <= NORMAL_ANGLE_TOLERANCE * scale:
                group_areas[g] = group_areas[g] + areas[s]
                break
        else:
            group_normals.append(normal)
            group_offsets.append(offset)
            group_areas.append(areas[s].copy())

    vertex_index = [int(i) for i in sorted(hull.vertices)]
    vertices = arr[vertex_index]
    tol = HULL_NEAR_BOUNDARY_TOLERANCE * scale
    facet_list: List[Facet] = []
    for normal, offset, area in zip(group_normals, group_offsets, group_areas):
        if np.linalg.norm(area) == 0.0:
            continue
        distances = np.abs(vertices @ normal - offset)
        on_facet = tuple(int(k) for k in np.nonzero(distances <= tol)[0])
        if not on_facet:
            on_facet = (int(np.argmin(distances)),)
        facet_list.append(_make_facet(area, normal.copy(), float(offset), on_facet, vertices[on_facet[0]]))
    return vertex_index, facet_list
