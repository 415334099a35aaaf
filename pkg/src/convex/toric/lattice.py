"""
格子多面体の格子点の数と体積の対応

格子多面体 P に対し #(mP ∩ ℤⁿ)/mⁿ → vol(P)（トーリック因子では vol(D) = n!·vol(P)）。
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List

import numpy as np

from src.config import env_loader
from src.config.constants import VOLUME_CORRESPONDENCE_TOLERANCE
from src.convex.core import arithmetic as ar
from src.convex.core.hull import convex_hull
from src.convex.core.operations import scale_translate
from src.convex.core.polytope import Polytope, volume
from src.convex.exceptions import DegenerateInput, TooLarge
from src.convex.inequalities.report import LABEL_ANALOGUE, CheckReport
from src.convex.toric.extrapolation import richardson
from src.utils.logger import setup_logger

logger = setup_logger("lattice", log_dir=env_loader.LOG_DIR + "/geometry")


@dataclass(frozen=True)
class LatticePolytope:
    """
    整数頂点の多面体

    Raises:
        ValueError: 頂点に整数でない座標がある場合
    """

    polytope: Polytope

    def __post_init__(self) -> None:
        for x in np.asarray(self.polytope.vertices).ravel():
            if Fraction(x).denominator != 1:
                raise ValueError(f"格子多面体の頂点座標は整数である必要があります: {x}")
        if not self.polytope.is_exact:
            exact = ar.exact_array([[Fraction(x) for x in row] for row in self.polytope.vertices])
            object.__setattr__(self, "polytope", convex_hull(exact))

    @classmethod
    def from_vertices(cls, points: Any) -> "LatticePolytope":
        """整数座標の点列の凸包（float で与えられても整数なら厳密モードに変換）"""
        arr = np.asarray(points, dtype=object)
        exact = ar.exact_array([[Fraction(x) for x in row] for row in arr])
        return cls(convex_hull(exact))

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def dilate(self, m: int) -> "LatticePolytope":
        return LatticePolytope(scale_translate(self.polytope, Fraction(m)))


def _integer_constraints(polytope: Polytope):
    """面制約 a·x <= b を整数係数に揃えたもの"""
    rows: List[List[int]] = []
    bounds: List[int] = []
    for facet in polytope.facets:
        coefficients = [Fraction(x) for x in facet.raw_normal] + [Fraction(facet.raw_offset)]
        scale = math.lcm(*(c.denominator for c in coefficients))
        integral = [int(c * scale) for c in coefficients]
        rows.append(integral[:-1])
        bounds.append(integral[-1])
    return np.array(rows, dtype=np.int64), np.array(bounds, dtype=np.int64)


def lattice_point_count(lattice: LatticePolytope) -> int:
    """
    格子点 P ∩ ℤⁿ の数（包含する直方体の全候補を整数演算で判定）

    Raises:
        DegenerateInput: P が全次元でない場合
        TooLarge: 候補数が LATTICE_MAX_CANDIDATES を超える場合
    """
    polytope = lattice.polytope
    if not polytope.is_full_dimensional:
        raise DegenerateInput("格子点の数え上げには全次元の多面体が必要です")
    vertices = np.array([[int(Fraction(x)) for x in row] for row in polytope.vertices], dtype=np.int64)
    low, high = vertices.min(axis=0), vertices.max(axis=0)
    extents = high - low + 1
    candidates = int(np.prod(extents))
    if candidates > env_loader.LATTICE_MAX_CANDIDATES:
        raise TooLarge(f"候補数 {candidates} が上限 {env_loader.LATTICE_MAX_CANDIDATES} を超えています")
    grid = np.indices(tuple(int(e) for e in extents)).reshape(polytope.dim, -1).T + low
    normals, bounds = _integer_constraints(polytope)
    inside = np.all(grid @ normals.T <= bounds, axis=1)
    return int(inside.sum())


def check_volume_correspondence(lattice: LatticePolytope) -> CheckReport:
    """
    #(mP ∩ ℤⁿ)/mⁿ（m = 1, 2, 4, ..., 2ⁿ）のリチャードソン外挿と vol(P) の一致（相対 1%）

    エルハート多項式は m の n 次多項式なので、n 段の消去で外挿値は厳密です。
    """
    n = lattice.dim
    ladder = [2**i for i in range(n + 1)]
    counts = [lattice_point_count(lattice.dilate(m)) for m in ladder]
    leading = richardson([Fraction(c, m**n) for c, m in zip(counts, ladder)])
    vol = volume(lattice.polytope)
    logger.debug(f"格子点の数 {counts} から外挿した先頭係数 {leading}（体積 {vol}）")
    return CheckReport.build(
        "volume_correspondence",
        VOLUME_CORRESPONDENCE_TOLERANCE * vol,
        abs(leading - vol),
        0.0,
        witnesses={
            "ladder": ladder,
            "counts": counts,
            "leading_coefficient": leading,
            "volume": vol,
            "toric_volume": math.factorial(n) * vol,
        },
        label=LABEL_ANALOGUE,
    )
