"""
サポートサンプル: 有限個の方向での関数値（𝒞_p の元の離散化）

値は正斉次（f(c·u) = c·f(u), c > 0）として扱います。
浮動小数点モードでは方向を単位ベクトルに正規化し、厳密モードでは
ノルムが有理数なら厳密に正規化、そうでなければ方向の代表ベクトルのまま
保持します（値はその代表ベクトルでの値）。
"""

from typing import Any, Optional

import numpy as np

from src.convex.core import arithmetic as ar
from src.convex.core.arithmetic import Scalar
from src.convex.core.directions import DirectionIndex, positive_multiple, positively_spans
from src.convex.core.polytope import Polytope, support_values
from src.convex.exceptions import (
    DegenerateInput,
    DimensionMismatch,
    MissingDirection,
    Unbounded,
    ZeroDirection,
)


class SupportSample:
    """
    方向の集合とその上の値

    Attributes:
        directions: (k, n) 配列
        values: (k,) 配列（directions と同じモード）
    """

    def __init__(
        self, directions: Any, values: Any, exact: Optional[bool] = None, *, _span_checked: bool = False
    ) -> None:
        """
        Raises:
            DimensionMismatch: 方向と値の個数が合わない場合
            ZeroDirection: ゼロ方向がある場合
            DegenerateInput: 方向の重複・有限でない値
            Unbounded: 方向が原点を通る閉半空間に含まれる場合
        """
        dirs = directions if isinstance(directions, np.ndarray) else ar.auto_array(directions)
        vals = values if isinstance(values, np.ndarray) else ar.auto_array(values)
        if dirs.dtype != object and not np.all(np.isfinite(dirs)):
            raise DegenerateInput("サポートサンプルの方向に有限でない成分があります")
        if vals.dtype != object and not np.all(np.isfinite(vals)):
            raise DegenerateInput(f"サポートサンプルの値に有限でない値があります: {vals}")
        if exact is not None:
            dirs, vals = ar.as_mode(dirs, exact), ar.as_mode(vals, exact)
        else:
            dirs, vals = ar.unify(dirs, vals)
        if dirs.ndim != 2 or vals.shape != (dirs.shape[0],):
            raise DimensionMismatch(
                f"方向 {dirs.shape} と値 {vals.shape} の個数が一致しません"
            )
        dirs, vals = _normalize(dirs, vals)
        self.directions = dirs
        self.values = vals
        self.directions.setflags(write=False)
        self.values.setflags(write=False)
        self._index = DirectionIndex(self.directions)
        if _has_duplicates(self._index, self.directions):
            raise DegenerateInput("サポートサンプルの方向が重複しています")
        if not _span_checked and not positively_spans(self.directions):
            raise Unbounded("サポートサンプルの方向が原点を通る閉半空間に含まれています")

    def _derived(self, directions: np.ndarray, values: Any) -> "SupportSample":
        """検査済みの方向を使う派生サンプル（正の張りの検査を省略）"""
        return SupportSample(directions, values, _span_checked=True)

    @property
    def dim(self) -> int:
        return int(self.directions.shape[1])

    @property
    def is_exact(self) -> bool:
        return ar.is_exact(self.directions)

    def __len__(self) -> int:
        return int(self.directions.shape[0])

    def __repr__(self) -> str:
        return f"SupportSample(dim={self.dim}, directions={len(self)})"

    def index_of(self, direction: np.ndarray) -> Optional[int]:
        """同一視ルールで一致する方向の添字"""
        return self._index.find(direction)

    def nearest_index(self, direction: np.ndarray) -> int:
        """角度が最小の方向の添字（同一視ルールを問わない）"""
        return self._index.nearest(direction)

    def as_float(self) -> "SupportSample":
        return self._derived(ar.float_array(self.directions), ar.float_array(self.values))

    def value_at(self, direction: Any) -> Scalar:
        """
        任意の正の倍数の方向での値 f(c·d) = c·f(d)

        Raises:
            MissingDirection: サンプルにその方向が無い場合
        """
        vector = direction if isinstance(direction, np.ndarray) else ar.auto_array(direction)
        if all(x == 0 for x in vector):
            raise ZeroDirection("ゼロベクトルでは評価できません")
        index = self._index.find(vector)
        if index is None:
            raise MissingDirection(f"方向 {ar.float_array(vector)} がサンプルにありません")
        factor = positive_multiple(vector, self.directions[index])
        value = self.values[index]
        if ar.is_exact(self.values) and not isinstance(factor, float):
            return factor * value
        return float(factor) * float(value)

    def values_on(self, directions: np.ndarray) -> np.ndarray:
        """複数方向での値（すべての方向がサンプルに含まれる必要がある）"""
        out = [self.value_at(d) for d in directions]
        if all(not isinstance(v, float) for v in out):
            return np.array(out, dtype=object)
        return np.array([float(v) for v in out])

    def aligned(self, other: "SupportSample") -> np.ndarray:
        """other の値を self の方向順に並べ替えたもの"""
        if other.dim != self.dim:
            raise DimensionMismatch("次元が一致しません")
        return other.values_on(self.directions)

    def with_values(self, values: Any) -> "SupportSample":
        """同じ方向で値だけを差し替えたサンプル"""
        return self._derived(self.directions, values)

    def __add__(self, other: "SupportSample") -> "SupportSample":
        mine, theirs = ar.unify(self.values, self.aligned(other))
        directions = self.directions if ar.is_exact(mine) else ar.float_array(self.directions)
        return self._derived(directions, mine + theirs)

    def __sub__(self, other: "SupportSample") -> "SupportSample":
        mine, theirs = ar.unify(self.values, self.aligned(other))
        directions = self.directions if ar.is_exact(mine) else ar.float_array(self.directions)
        return self._derived(directions, mine - theirs)

    def scaled(self, factor: Any) -> "SupportSample":
        return self._derived(self.directions, self.values * factor)

    def is_strictly_positive(self) -> bool:
        return all(v > 0 for v in self.values)

    def max_abs(self) -> float:
        return float(np.abs(ar.float_array(self.values)).max()) if len(self) else 0.0

    @classmethod
    def from_polytope(cls, polytope: Polytope, directions: Any) -> "SupportSample":
        """多面体の支持関数を方向上でサンプリング"""
        dirs = directions if isinstance(directions, np.ndarray) else ar.auto_array(directions)
        vertices, dirs = ar.unify(polytope.vertices, dirs)
        values = support_values(polytope, dirs)
        return cls(dirs, values)

    @classmethod
    def at_facet_normals(cls, polytope: Polytope) -> "SupportSample":
        """多面体自身の面法線での支持関数 h_K"""
        directions = np.array([f.raw_normal for f in polytope.facets], dtype=object if polytope.is_exact else float)
        values = np.array([f.raw_offset for f in polytope.facets], dtype=object if polytope.is_exact else float)
        return cls(directions, values)

    @classmethod
    def linear(cls, vector: Any, directions: Any) -> "SupportSample":
        """線形関数 l_a(u) = a·u のサンプル"""
        dirs = directions if isinstance(directions, np.ndarray) else ar.auto_array(directions)
        a = vector if isinstance(vector, np.ndarray) else ar.auto_array(vector)
        dirs, a = ar.unify(dirs, a)
        return cls(dirs, dirs @ a)


def _normalize(directions: np.ndarray, values: np.ndarray):
    if len(directions) == 0:
        return directions, values
    if ar.is_exact(directions):
        new_dirs, new_vals = [], []
        for d, v in zip(directions, values):
            if all(x == 0 for x in d):
                raise ZeroDirection("サポートサンプルにゼロ方向があります")
            length = ar.norm(d)
            if isinstance(length, float):
                new_dirs.append(d)
                new_vals.append(v)
            else:
                new_dirs.append(np.array([x / length for x in d], dtype=object))
                new_vals.append(v / length)
        dirs_out = np.array(new_dirs, dtype=object).reshape(directions.shape)
        vals_out = np.empty(len(new_vals), dtype=object)
        vals_out[:] = new_vals
        return dirs_out, vals_out
    lengths = np.linalg.norm(directions, axis=1)
    if (lengths == 0).any():
        raise ZeroDirection("サポートサンプルにゼロ方向があります")
    return directions / lengths[:, None], values / lengths


def _has_duplicates(index: DirectionIndex, directions: np.ndarray) -> bool:
    for i, d in enumerate(directions):
        found = index.find(d)
        if found is not None and found != i:
            return True
    return False
