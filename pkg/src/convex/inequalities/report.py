"""
不等式チェックの結果
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from src.config.constants import PASS_TOLERANCE
from src.convex.core import arithmetic as ar
from src.convex.core.arithmetic import Scalar
from src.types import CheckReportDict

LABEL_CONVEX = "convex"
LABEL_ANALOGUE = "convex analogue"


@dataclass
class CheckReport:
    """
    1 つの不等式インスタンスの評価結果

    slack = lhs - rhs は slack >= 0 が不等式の成立を意味する向きに揃えます。

    Attributes:
        name: 不等式の識別子（例: "brunn_minkowski"）
        lhs: 左辺
        rhs: 右辺
        slack: lhs - rhs
        equality: |slack| が等号判定の許容量以内か（検出器との照合済み）
        witnesses: 入力の記述と中間量（混合体積・内接半径・平行移動など）
        label: "convex" または "convex analogue"
    """

    name: str
    lhs: Scalar
    rhs: Scalar
    slack: Scalar
    equality: bool = False
    witnesses: Dict[str, Any] = field(default_factory=dict)
    label: str = LABEL_CONVEX

    @property
    def passed(self) -> bool:
        """slack >= -1e-9·max(1, |lhs|, |rhs|)"""
        scale = max(1.0, abs(float(self.lhs)), abs(float(self.rhs)))
        return float(self.slack) >= -PASS_TOLERANCE * scale

    @classmethod
    def build(
        cls,
        name: str,
        lhs: Scalar,
        rhs: Scalar,
        equality_tolerance: float,
        witnesses: Optional[Dict[str, Any]] = None,
        label: str = LABEL_CONVEX,
        detected: Optional[bool] = None,
    ) -> "CheckReport":
        """
        lhs >= rhs 形式の不等式からレポートを作る

        equality は |slack| <= equality_tolerance·max(1, |lhs|, |rhs|) で判定し、
        detected が与えられた場合はそれとの論理積を取ります。
        """
        slack = lhs - rhs
        scale = max(1.0, abs(float(lhs)), abs(float(rhs)))
        equality = abs(float(slack)) <= equality_tolerance * scale
        if detected is not None:
            equality = equality and detected
        return cls(
            name=name,
            lhs=lhs,
            rhs=rhs,
            slack=slack,
            equality=equality,
            witnesses=dict(witnesses or {}),
            label=label,
        )

    def to_dict(self) -> CheckReportDict:
        return {
            "name": self.name,
            "label": self.label,
            "lhs": ar.format_scalar(self.lhs),
            "rhs": ar.format_scalar(self.rhs),
            "slack": ar.format_scalar(self.slack),
            "passed": self.passed,
            "equality": self.equality,
            "witnesses": {key: _jsonable(value) for key, value in self.witnesses.items()},
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    if isinstance(value, (bool, str, int)) or value is None:
        return value
    return ar.format_scalar(value)
