"""
ランダムな入力の生成

乱数はすべて呼び出し側が渡す numpy Generator（または seed）から取り出します。
同じ seed なら同じ多面体・同じサンプルが得られます。
"""

from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from src.config.constants import RANDOM_DENOMINATOR
from src.convex.core import arithmetic as ar
from src.convex.core.hull import convex_hull
from src.convex.core.polytope import Polytope, affine_rank
from src.convex.exceptions import DegenerateInput, DimensionMismatch, NumericalResidue
from src.convex.inequalities.discriminant import SymmetricMatrix
from src.convex.measures.support_sample import SupportSample


def _generator(seed: Optional[int], rng: Optional[np.random.Generator]) -> np.random.Generator:
    return rng if rng is not None else np.random.default_rng(seed)


def _rationalize(values: np.ndarray) -> np.ndarray:
    """分母 2¹⁶ の有理数に丸める"""
    rounded = np.rint(values * RANDOM_DENOMINATOR).astype(np.int64)
    out = np.empty(values.shape, dtype=object)
    for idx in np.ndindex(values.shape):
        out[idx] = Fraction(int(rounded[idx]), RANDOM_DENOMINATOR)
    return out


def ball_points(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    """単位球内の一様な点（ガウス方向 × 半径 U^{1/n}）"""
    directions = rng.standard_normal((count, n))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    radii = rng.random(count) ** (1.0 / n)
    return directions * radii[:, None]


def random_polytope(
    seed: Optional[int],
    n: int,
    vertex_count: int,
    exact: bool = True,
    rng: Optional[np.random.Generator] = None,
) -> Polytope:
    """
    単位球内の一様な点の凸包（全次元になるまで引き直す）

    Args:
        seed: 乱数シード（rng が与えられた場合は無視）
        n: 次元
        vertex_count: 点の数（凸包の頂点数はこれ以下）
        exact: 座標を分母 2¹⁶ の有理数にするか
        rng: 共有する Generator

    Raises:
        DimensionMismatch: vertex_count < n + 1 の場合

    Example:
        >>> triangle = random_polytope(7, 2, 3)
        >>> len(triangle)
        3
    """
    if n < 1 or vertex_count < n + 1:
        raise DimensionMismatch(f"点の数は n + 1 = {n + 1} 以上である必要があります: {vertex_count}")
    generator = _generator(seed, rng)
    while True:
        points = ball_points(generator, n, vertex_count)
        arr = _rationalize(points) if exact else points
        if affine_rank(arr) != n:
            continue
        try:
            return convex_hull(arr)
        except (DegenerateInput, NumericalResidue):
            # 退化に近い点配置は引き直す
            continue


def random_lattice_points(rng: np.random.Generator, n: int, count: int, radius: int = 1) -> np.ndarray:
    """{-radius, ..., radius}ⁿ の格子点（アフィン次元 n になるまで引き直す）"""
    while True:
        points = rng.integers(-radius, radius + 1, size=(count, n))
        arr = ar.exact_array(points)
        if affine_rank(arr) == n:
            return arr


def random_positive_sample(
    rng: np.random.Generator, n: int, count: int, exact: bool = True, low: float = 1.0, high: float = 2.0
) -> SupportSample:
    """
    厳密に正のサポートサンプル

    方向は ±e_i（アレクサンドロフ体が有界になる）に count - 2n 個のランダム方向を加えたもの、
    値は [low, high) の一様乱数です。
    """
    extra = max(0, count - 2 * n)
    identity = np.eye(n)
    random_dirs = rng.standard_normal((extra, n))
    directions = np.vstack([identity, -identity, random_dirs])
    values = rng.uniform(low, high, size=len(directions))
    if exact:
        return SupportSample(_rationalize(directions), _rationalize(values), exact=True)
    return SupportSample(directions, values, exact=False)


def random_perturbation(rng: np.random.Generator, sample: SupportSample) -> SupportSample:
    """同じ方向上の [-1, 1) の一様な値"""
    values = rng.uniform(-1.0, 1.0, size=len(sample))
    if sample.is_exact:
        return sample.with_values(_rationalize(values))
    return sample.with_values(values)


def random_spd_matrix(rng: np.random.Generator, n: int, exact: bool = True) -> SymmetricMatrix:
    """正定値対称行列 G Gᵀ + I（G は {-3, ..., 3} の整数行列）"""
    g = rng.integers(-3, 4, size=(n, n))
    matrix = g @ g.T + np.eye(n, dtype=np.int64)
    if exact:
        return SymmetricMatrix(ar.exact_array(matrix))
    return SymmetricMatrix(matrix.astype(float))


def vertex_count_for(rng: np.random.Generator, n: int, vertex_range: Tuple[int, int]) -> int:
    """頂点数の範囲から一様に選ぶ（n + 1 未満にはしない）"""
    low, high = vertex_range
    low = max(low, n + 1)
    high = max(high, low)
    return int(rng.integers(low, high + 1))
