"""
アレクサンドロフ体と (𝒞_p, vol) の分解
"""

from src.convex.alexandrov.decomposition import (
    Decomposition,
    alexandrov_body,
    decompose,
    derivative_of_volume,
    polar_volume,
    volume_of_function,
)

__all__ = [
    "Decomposition",
    "alexandrov_body",
    "decompose",
    "derivative_of_volume",
    "polar_volume",
    "volume_of_function",
]
