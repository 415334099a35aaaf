"""
ミンコフスキーソルバーの設定と診断情報
"""

from dataclasses import dataclass, field
from typing import List

from pydantic import BaseModel, ConfigDict, Field

from src.config import env_loader
from src.config.constants import SOLVER_DEFAULT_CENTROID_TOLERANCE
from src.types import SolveDiagnosticsDict


class SolverOptions(BaseModel):
    """
    ソルバー設定

    デフォルト値は .env（SOLVER_TOLERANCE など）から読み込まれます。

    Attributes:
        tolerance: 面積の相対誤差目標（> 0）
        max_iterations: 最大ニュートン反復回数（>= 1）
        damping: 直線探索の初期ステップ（0 < x <= 1）
        centroid_tolerance: 目標測度の重心欠損の許容量（重みの総和に対する相対値）
    """

    model_config = ConfigDict(frozen=True)

    tolerance: float = Field(default=env_loader.SOLVER_TOLERANCE, gt=0)
    max_iterations: int = Field(default=env_loader.SOLVER_MAX_ITERATIONS, ge=1)
    damping: float = Field(default=env_loader.SOLVER_DAMPING, gt=0, le=1)
    centroid_tolerance: float = Field(default=SOLVER_DEFAULT_CENTROID_TOLERANCE, gt=0)


@dataclass
class SolveDiagnostics:
    """ソルバーの実行結果の診断情報"""

    iterations: int = 0
    max_relative_error: float = float("inf")
    centroid_defect: float = 0.0
    converged: bool = False
    final_volume: float = 0.0
    halvings: int = 0
    error_history: List[float] = field(default_factory=list)

    def to_dict(self) -> SolveDiagnosticsDict:
        return {
            "iterations": self.iterations,
            "max_relative_error": self.max_relative_error,
            "centroid_defect": self.centroid_defect,
            "converged": self.converged,
            "final_volume": self.final_volume,
            "halvings": self.halvings,
        }
