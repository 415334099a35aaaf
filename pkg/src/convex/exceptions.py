"""
凸幾何ライブラリの例外階層

すべての例外は ConvexGeometryError を基底とします。
入力起因のエラーは ValueError も継承するため、呼び出し側は
標準的な except ValueError でも捕捉できます。
"""

from typing import Any, Optional


class ConvexGeometryError(Exception):
    """凸幾何ライブラリの基底例外"""


# ===== 入力エラー =====
class DegenerateInput(ConvexGeometryError, ValueError):
    """全次元でない入力（点集合・多面体）"""


class DimensionMismatch(ConvexGeometryError, ValueError):
    """引数の次元・個数が一致しない"""


class NegativeScale(ConvexGeometryError, ValueError):
    """スケール係数が負"""


class ZeroDirection(ConvexGeometryError, ValueError):
    """支持関数の方向がゼロベクトル"""


class MissingDirection(ConvexGeometryError, ValueError):
    """サポートサンプルが測度の原子方向を含まない"""


class NonPositive(ConvexGeometryError, ValueError):
    """厳密に正であるべき値が 0 以下"""


class NotPositiveDefinite(ConvexGeometryError, ValueError):
    """正定値であるべき対称行列が正定値でない"""


class TooLarge(ConvexGeometryError, ValueError):
    """格子点の候補数が上限を超える"""


# ===== 半空間系のエラー =====
class EmptyPolytope(ConvexGeometryError, ValueError):
    """半空間系が実行不能（空集合）"""


class Unbounded(ConvexGeometryError, ValueError):
    """半空間系が非有界"""


# ===== 数値エラー =====
class NumericalResidue(ConvexGeometryError, ArithmeticError):
    """許容誤差を超える桁落ち、または組合せ構造の不整合"""


# ===== ミンコフスキー問題の前提条件 =====
class GreatSubsphere(ConvexGeometryError, ValueError):
    """測度が大部分球面に集中している（法線が ℝⁿ を張らない）"""


class CentroidNonzero(ConvexGeometryError, ValueError):
    """測度の重心がゼロでない"""


class NoConvergence(ConvexGeometryError, RuntimeError):
    """
    ソルバーが収束しなかった

    Attributes:
        diagnostics: 失敗時点の SolveDiagnostics（反復回数・誤差など）
    """

    def __init__(self, message: str, diagnostics: Optional[Any] = None) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics


# ===== 入力ファイルのエラー =====
class SchemaError(ConvexGeometryError, ValueError):
    """JSON 入力がスキーマに適合しない"""


class InvariantViolation(ConvexGeometryError, ValueError):
    """スキーマには適合するが値の不変条件を満たさない"""
