"""
混合体積

分極公式 V(K_1,...,K_n) = (1/n!) Σ_{∅≠S⊆[n]} (-1)^{n-|S|} vol(Σ_{i∈S} K_i) を、
同一オブジェクトの引数を重複度でまとめた形で計算します。
V(K,...,K) = vol(K) の正規化です。
"""

import math
from fractions import Fraction
from typing import Sequence, Union

from src.convex.core.arithmetic import Scalar
from src.convex.core.polytope import Polytope, volume
from src.convex.exceptions import DimensionMismatch
from src.convex.measures.support_sample import SupportSample
from src.convex.measures.surface_measure import (
    integrate,
    mixed_area_measure,
    polarization_terms,
    weighted_sum,
)


def mixed_volume(bodies: Sequence[Polytope]) -> Scalar:
    """
    混合体積 V(K_1, ..., K_n)

    Args:
        bodies: ℝⁿ の n 個の多面体（全次元でなくてもよい）

    Returns:
        混合体積（すべて厳密モードなら Fraction）

    Raises:
        DimensionMismatch: 個数または次元が一致しない場合

    Example:
        >>> mixed_volume([square, square])
        Fraction(1, 1)
    """
    _check_count(bodies, expected_offset=0)
    n = bodies[0].dim
    exact = all(b.is_exact for b in bodies)
    total = Fraction(0) if exact else 0.0
    for sign, distinct, profile in polarization_terms(bodies):
        body, factor = weighted_sum(distinct, profile)
        value = volume(body)
        if not exact:
            value = float(value)
        total = total + sign * (factor**n) * value
    if exact:
        return total / math.factorial(n)
    return float(total) / math.factorial(n)


def mixed_volume_via_measure(
    bodies: Sequence[Polytope], function: Union[Polytope, SupportSample]
) -> Scalar:
    """
    V(K_1, ..., K_{n-1}, L) = (1/n) ∫ h_L dS(K_1, ..., K_{n-1}; ·)

    L には多面体か SupportSample を渡せます（後者は原子方向をすべて含む必要がある）。
    """
    _check_count(bodies, expected_offset=1)
    n = bodies[0].dim
    if function.dim != n:
        raise DimensionMismatch("L の次元が一致しません")
    value = integrate(mixed_area_measure(bodies), function)
    if isinstance(value, Fraction):
        return value / n
    return float(value) / n


def _check_count(bodies: Sequence[Polytope], expected_offset: int) -> None:
    if not bodies:
        raise DimensionMismatch("物体のリストが空です")
    n = bodies[0].dim
    if any(b.dim != n for b in bodies):
        raise DimensionMismatch("物体の次元が揃っていません")
    if len(bodies) != n - expected_offset:
        raise DimensionMismatch(
            f"次元 {n} では {n - expected_offset} 個の物体が必要です（{len(bodies)} 個が渡されました）"
        )
