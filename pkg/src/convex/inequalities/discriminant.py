"""
混合判別式

det(Σ t_k M_k) の多項式展開の係数を分極で求めます。D(M, ..., M) = det(M)。
"""

import math
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from src.convex.core import arithmetic as ar
from src.convex.core.arithmetic import Scalar
from src.convex.exceptions import DimensionMismatch, NotPositiveDefinite
from src.convex.measures.surface_measure import polarization_terms


class SymmetricMatrix:
    """
    n×n の実対称行列（厳密モードでは Fraction 要素）

    Raises:
        DimensionMismatch: 正方でない場合
        ValueError: 対称でない場合
    """

    def __init__(self, entries: Any) -> None:
        matrix = entries if isinstance(entries, np.ndarray) else ar.auto_array(entries)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatch(f"正方行列が必要です: {matrix.shape}")
        if any(matrix[i, j] != matrix[j, i] for i in range(len(matrix)) for j in range(i)):
            raise ValueError("行列が対称ではありません")
        self.entries = matrix
        self.entries.setflags(write=False)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def is_exact(self) -> bool:
        return ar.is_exact(self.entries)

    def __repr__(self) -> str:
        return f"SymmetricMatrix(dim={self.dim})"

    def is_positive_definite(self) -> bool:
        """厳密モードは主小行列式（シルベスターの判定法）、浮動小数点はコレスキー分解"""
        if self.is_exact:
            return all(ar.det(self.entries[:k, :k]) > 0 for k in range(1, self.dim + 1))
        try:
            np.linalg.cholesky(self.entries)
        except np.linalg.LinAlgError:
            return False
        return True

    def require_positive_definite(self) -> None:
        if not self.is_positive_definite():
            raise NotPositiveDefinite("正定値の対称行列が必要です")

    def determinant(self) -> Scalar:
        return ar.det(self.entries)


def mixed_discriminant(matrices: Sequence[SymmetricMatrix]) -> Scalar:
    """
    混合判別式 D(M_1, ..., M_n)

    同一オブジェクトの引数は重複度でまとめ、
    (1/n!) Σ_c (-1)^{n-|c|} Π C(m_j, c_j) det(Σ c_j M_j) で計算します。

    Raises:
        DimensionMismatch: 行列が n 個の n×n でない場合

    Example:
        >>> mixed_discriminant([SymmetricMatrix([[1, 0], [0, 2]]), SymmetricMatrix([[3, 0], [0, 4]])])
        Fraction(5, 1)
    """
    if not matrices:
        raise DimensionMismatch("行列のリストが空です")
    n = matrices[0].dim
    if any(m.dim != n for m in matrices) or len(matrices) != n:
        raise DimensionMismatch(f"{n}×{n} 行列がちょうど {n} 個必要です（{len(matrices)} 個）")
    exact = all(m.is_exact for m in matrices)
    total: Any = Fraction(0) if exact else 0.0
    for sign, distinct, profile in polarization_terms(matrices):
        combined = sum(
            (c * (m.entries if exact else ar.float_array(m.entries)) for m, c in zip(distinct, profile) if c),
            ar.zeros((n, n), exact),
        )
        value = ar.det(combined)
        total = total + sign * (value if exact else float(value))
    if exact:
        return total / math.factorial(n)
    return float(total) / math.factorial(n)
