"""
型定義モジュール

プロジェクト全体で使用する型エイリアスとTypedDictを定義します。
結果オブジェクトの to_dict() はここで定義した形の辞書を返します。
"""

from typing import Any, Dict, List, Literal, Optional, TypedDict, Union

# ===== 基本型エイリアス =====

ArithmeticMode = Literal["exact", "float"]
"""演算モード（有理数の厳密演算、または float64）"""

JsonScalar = Union[str, float]
"""JSON 出力のスカラー（厳密値は "p/q" 文字列、浮動小数点は数値）"""

CheckLabel = Literal["convex", "convex analogue"]
"""チェックの分類（凸幾何の定理そのもの、または凸幾何側の類似）"""


# ===== TypedDict定義 =====


class CheckReportDict(TypedDict):
    """
    不等式チェック 1 件の結果

    Attributes:
        name: 不等式の識別子
        label: "convex" または "convex analogue"
        lhs: 左辺
        rhs: 右辺
        slack: lhs - rhs（>= 0 が成立）
        passed: PASS 判定
        equality: 等号ケースの判定
        witnesses: 中間量
    """

    name: str
    label: str
    lhs: JsonScalar
    rhs: JsonScalar
    slack: JsonScalar
    passed: bool
    equality: bool
    witnesses: Dict[str, Any]


class SolveDiagnosticsDict(TypedDict):
    """
    ミンコフスキーソルバーの診断情報

    Attributes:
        iterations: 使用したニュートン反復の回数
        max_relative_error: 面積の最大相対誤差
        centroid_defect: 得られた測度の重心欠損のノルム
        converged: 収束したか
        final_volume: 最終的な多面体の体積
        halvings: 直線探索での半減の総数
    """

    iterations: int
    max_relative_error: float
    centroid_defect: float
    converged: bool
    final_volume: float
    halvings: int


class DecompositionDict(TypedDict):
    """
    f = P(f) + N(f) の分解結果

    Attributes:
        dimension: 次元
        vertices: アレクサンドロフ体の頂点
        volume: アレクサンドロフ体の体積
        directions: サンプル方向
        positive_part: P(f) の値
        negative_part: N(f) の値
        orthogonality_defect: ∫ N(f) dS(K^{n-1})
        orthogonal: 欠損が許容量以内か
    """

    dimension: int
    vertices: List[List[JsonScalar]]
    volume: JsonScalar
    directions: List[List[JsonScalar]]
    positive_part: List[JsonScalar]
    negative_part: List[JsonScalar]
    orthogonality_defect: JsonScalar
    orthogonal: bool


class CheckSummaryDict(TypedDict):
    """
    チェックごとの集計

    Attributes:
        total: インスタンス数
        passed: PASS の数
        failed: FAIL の数
        equalities: 等号と判定された数
        errors: 例外で評価できなかった数
        no_convergence: ソルバーが収束しなかった数
        worst_slack: 相対 slack の最小値（レポートが無ければ None）
    """

    total: int
    passed: int
    failed: int
    equalities: int
    errors: int
    no_convergence: int
    worst_slack: Optional[float]


class EnvironmentInfo(TypedDict):
    """
    実行環境の情報

    Attributes:
        platform: OS・アーキテクチャ
        python: Python のバージョン
        cpu_count: 論理 CPU 数
        memory_total: 総メモリ
        memory_available: 利用可能メモリ
        packages: 主要パッケージのバージョン
    """

    platform: str
    python: str
    cpu_count: int
    memory_total: str
    memory_available: str
    packages: Dict[str, str]


class SuiteSummaryDict(TypedDict):
    """
    スイート全体の集計

    Attributes:
        suite: スイート名
        seed: 乱数シード
        mode: 演算モード
        dimensions: 対象次元
        checks: チェックごとの集計
        solver: ソルバー診断の集計（反復回数の最大・平均など）
        reverse_kt_min_ratio: 逆 KT 不等式の比の最小値と定数
        runtime_seconds: 実行時間
        exit_code: 終了コード
        environment: 実行環境
    """

    suite: str
    seed: int
    mode: str
    dimensions: List[int]
    checks: Dict[str, CheckSummaryDict]
    solver: Dict[str, Any]
    reverse_kt_min_ratio: Dict[str, Any]
    runtime_seconds: float
    exit_code: int
    environment: EnvironmentInfo
