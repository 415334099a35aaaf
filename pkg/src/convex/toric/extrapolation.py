"""
リチャードソン外挿
"""

from fractions import Fraction
from typing import List, Sequence

from src.convex.core.arithmetic import Scalar


def richardson(values: Sequence[Scalar], ratio: int = 2) -> Scalar:
    """
    x_m = c_0 + c_1/m + ... + c_k/m^k を m, ratio·m, ratio²·m, ... で評価した値から c_0 を求める

    len(values) - 1 段の消去を行うので、次数 k <= len(values) - 1 の場合は
    有理数入力に対して厳密な値を返します。

    Args:
        values: 粗い順（m の小さい順）の値
        ratio: 隣り合う m の比
    """
    exact = all(isinstance(v, (int, Fraction)) for v in values)
    table: List[Scalar] = [Fraction(v) if exact else float(v) for v in values]
    for level in range(1, len(values)):
        factor = ratio**level
        table = [(factor * fine - coarse) / (factor - 1) for coarse, fine in zip(table, table[1:])]
    return table[0]
