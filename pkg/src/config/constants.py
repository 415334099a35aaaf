"""
プロジェクト全体で使用する定数定義

ハードコードされたパスや数値許容誤差を一元管理します。
数値許容誤差は判定結果（PASS/FAIL、等号成立）に直接影響するため、
各モジュールで個別に定義せず必ずここから参照してください。
"""

from pathlib import Path

# プロジェクトルート
PROJECT_ROOT = Path(__file__).parent.parent.parent

# ディレクトリパス
SETTINGS_DIR = PROJECT_ROOT / "settings"
LOGS_DIR = PROJECT_ROOT / "logs"
RESULTS_DIR = PROJECT_ROOT / "results"

# サブディレクトリパス
SETTINGS_SUITES_DIR = SETTINGS_DIR / "suites"

# ファイル名
SETTINGS_FILENAME = "settings.py"
SUMMARY_FILENAME = "summary.json"
REPORTS_FILENAME = "reports.jsonl"


def get_suite_dir(suite_name: str) -> Path:
    """スイート設定ディレクトリのパスを取得

    Args:
        suite_name: スイート名（例: "default_suite"）

    Returns:
        スイート設定ディレクトリの絶対パス（Pathオブジェクト）

    Example:
        >>> get_suite_dir("default_suite")
        PosixPath('/project/settings/suites/default_suite')
    """
    return SETTINGS_SUITES_DIR / suite_name


def get_settings_path(suite_name: str) -> Path:
    """スイート設定ファイルのパスを取得

    各スイート固有のsettings.pyファイルのパスを返します。
    このファイルには次元、インスタンス数、演算モード、ソルバー設定などが定義されます。

    Args:
        suite_name: スイート名（例: "default_suite"）

    Returns:
        settings.pyファイルの絶対パス（Pathオブジェクト）

    Example:
        >>> get_settings_path("default_suite")
        PosixPath('/project/settings/suites/default_suite/settings.py')
    """
    return get_suite_dir(suite_name) / SETTINGS_FILENAME


def get_results_dir(suite_name: str) -> Path:
    """スイート実行結果の出力ディレクトリを取得"""
    return RESULTS_DIR / suite_name


# ===== 幾何の許容誤差 =====
# 単位法線の同一視（ラジアン）。厳密モードでは完全一致で判定する
NORMAL_ANGLE_TOLERANCE = 1e-9
# 分極で残る負の重みの許容量（重みの総和に対する相対値）
NEGATIVE_RESIDUE_TOLERANCE = 1e-10
# qhull の候補を厳密検証する際の境界近傍判定（スケール相対）
HULL_NEAR_BOUNDARY_TOLERANCE = 1e-7
# 半空間交差で活性制約とみなす距離（スケール相対）
ACTIVE_CONSTRAINT_TOLERANCE = 1e-7
# 浮動小数点の行列ランク判定
RANK_TOLERANCE = 1e-9

# ===== 不等式判定の許容誤差 =====
# PASS iff slack >= -PASS_TOLERANCE * max(1, |lhs|, |rhs|)
PASS_TOLERANCE = 1e-9
# 等号判定（厳密演算のチェック / ソルバーを経由するチェック）
EXACT_EQUALITY_TOLERANCE = 1e-9
SOLVER_EQUALITY_TOLERANCE = 1e-6
# 相似（ホモセティ）検出の最小二乗残差
HOMOTHETY_TOLERANCE = 1e-9
# アレクサンドロフ分解の直交性欠損（スケール相対）
ORTHOGONALITY_TOLERANCE = 1e-10
# 微分補題の解析値と差分値の一致
DERIVATIVE_AGREEMENT_TOLERANCE = 1e-3
DERIVATIVE_STEP = 1e-5

# ===== サンプリング =====
# ハウスドルフ距離の準一様サンプル数は HAUSDORFF_SAMPLE_FACTOR * n^2
HAUSDORFF_SAMPLE_FACTOR = 10
# モース不等式で追加する準一様方向の数
MORSE_SAMPLE_SIZE = 64
# 厳密モードのランダム座標の分母
RANDOM_DENOMINATOR = 2**16

# ===== ミンコフスキーソルバー =====
SOLVER_DEFAULT_CENTROID_TOLERANCE = 1e-8
# 有限差分ヤコビアンの刻み幅（max|h| 相対）
SOLVER_JACOBIAN_STEP = 1e-6
# 直線探索
SOLVER_MAX_HALVINGS = 40
SOLVER_MIN_FACET_RATIO = 1e-12
SOLVER_VOLUME_RATIO_BOUNDS = (0.5, 2.0)
SOLVER_LEVENBERG_FACTOR = 1e-10
# ソルバーを経由する不等式チェックで使う面積の相対誤差（PASS 判定の 1e-9 より細かく）
SOLVER_CHECK_TOLERANCE = 1e-10

# ===== トーリック =====
FLOP_LADDER = (8, 16, 32, 64)
FLOP_ASYMPTOTIC_TOLERANCE = 0.01
VOLUME_CORRESPONDENCE_TOLERANCE = 0.01

# ===== CLI 終了コード =====
EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_NO_CONVERGENCE = 3
