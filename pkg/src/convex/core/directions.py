"""
単位球面上の方向の扱い

- 準一様な方向サンプル（scipy.stats.qmc の Sobol 列を正規分布経由で球面へ写す）
- 方向の同一視ルール（厳密モードは正の倍数として完全一致、浮動小数点は角度 < 1e-9）
"""

import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.special import ndtri
from scipy.stats import qmc

from src.config.constants import NORMAL_ANGLE_TOLERANCE
from src.convex.core import arithmetic as ar


def sphere_directions(n: int, count: int) -> np.ndarray:
    """
    決定的な準一様単位ベクトル

    スクランブルなしの Sobol 点（先頭の退化した点は捨てる）を逆正規分布関数で
    ガウス化してから正規化します。

    Args:
        n: 次元
        count: 方向の数

    Returns:
        (count, n) の float 配列
    """
    if count <= 0:
        return np.zeros((0, n))
    sampler = qmc.Sobol(d=n, scramble=False)
    power = max(1, math.ceil(math.log2(count + 2)))
    points = sampler.random_base2(power)
    while True:
        gaussian = ndtri(np.clip(points[2:], 1e-12, 1 - 1e-12))
        lengths = np.linalg.norm(gaussian, axis=1)
        usable = gaussian[lengths > 1e-12] / lengths[lengths > 1e-12, None]
        if len(usable) >= count:
            return usable[:count]
        power += 1
        sampler = qmc.Sobol(d=n, scramble=False)
        points = sampler.random_base2(power)


def unit_float(vector: np.ndarray) -> np.ndarray:
    """float の単位ベクトル"""
    fv = ar.float_array(vector)
    return fv / np.linalg.norm(fv)


def angle_between(u: np.ndarray, v: np.ndarray) -> float:
    """2 方向の角度（ラジアン）。小角でも精度を保つ弦長公式を使う"""
    a, b = unit_float(u), unit_float(v)
    return 2.0 * math.asin(min(1.0, float(np.linalg.norm(a - b)) / 2.0))


def same_direction(u: np.ndarray, v: np.ndarray) -> bool:
    """
    方向の同一視ルール

    両方が厳密なら正の倍数関係を厳密に判定し、それ以外は角度 < 1e-9 ラジアン。
    """
    if ar.is_exact(u) and ar.is_exact(v):
        return ar.canonical_key(u) == ar.canonical_key(v)
    return angle_between(u, v) < NORMAL_ANGLE_TOLERANCE


class DirectionIndex:
    """
    方向の集合から同一方向を高速に引くための索引

    厳密な方向は正規化キーの辞書で、浮動小数点の方向は単位ベクトルとの
    角度比較で照合します。
    """

    def __init__(self, directions: np.ndarray) -> None:
        self.directions = directions
        self._exact = ar.is_exact(directions)
        self._keys: Dict[Tuple[Fraction, ...], int] = {}
        if self._exact:
            for i, d in enumerate(directions):
                self._keys.setdefault(ar.canonical_key(d), i)
        self._units = np.array([unit_float(d) for d in directions]) if len(directions) else np.zeros((0, 0))

    def find(self, vector: np.ndarray) -> Optional[int]:
        """vector と同じ方向の添字（無ければ None）"""
        if len(self.directions) == 0:
            return None
        if self._exact and ar.is_exact(vector):
            return self._keys.get(ar.canonical_key(vector))
        target = unit_float(vector)
        chords = np.linalg.norm(self._units - target, axis=1)
        best = int(np.argmin(chords))
        angle = 2.0 * math.asin(min(1.0, float(chords[best]) / 2.0))
        return best if angle < NORMAL_ANGLE_TOLERANCE else None

    def nearest(self, vector: np.ndarray) -> int:
        """最も近い方向の添字（同一視ルールを問わない）"""
        target = unit_float(vector)
        return int(np.argmax(self._units @ target))


def positive_multiple(vector: np.ndarray, direction: np.ndarray):
    """
    vector = c * direction となる c（同じ向きであることは呼び出し側が保証）

    厳密モードでは有理数で厳密に返します。
    """
    if ar.is_exact(vector) and ar.is_exact(direction):
        return (vector @ direction) / (direction @ direction)
    fv, fd = ar.float_array(vector), ar.float_array(direction)
    return float(fv @ fd) / float(fd @ fd)


def merge_directions(groups: List[np.ndarray]) -> np.ndarray:
    """複数の方向集合を同一視ルールで重複除去して結合"""
    merged: List[np.ndarray] = []
    for group in groups:
        for d in group:
            if not any(same_direction(d, e) for e in merged):
                merged.append(d)
    exact = all(ar.is_exact(d) for d in merged)
    if not merged:
        return np.zeros((0, 0))
    if exact:
        return np.array(merged, dtype=object)
    return np.array([ar.float_array(d) for d in merged], dtype=float)


def positively_spans(directions: np.ndarray) -> bool:
    """
    方向が ℝⁿ を正に張るか（どの閉半空間 {x·a >= 0} にも含まれない）

    係数がすべて 1 以上の正結合で 0 を作れるかを線形計画で判定します。
    これは {x : x·u_i <= h_i} が有界であることと同値です。
    """
    fa = ar.float_array(directions)
    if fa.ndim != 2 or len(fa) == 0:
        return False
    m, n = fa.shape
    if np.linalg.matrix_rank(fa) < n:
        return False
    result = linprog(
        c=np.ones(m),
        A_eq=fa.T,
        b_eq=np.zeros(n),
        bounds=[(1, None)] * m,
        method="highs",
    )
    return bool(result.status == 0)
