"""
環境変数ローダーモジュール

.envファイルから環境変数を読み込み、型変換とデフォルト値を提供します。
プロジェクトルートの.envファイルを自動的に読み込みます。
"""

import os
from pathlib import Path
from typing import Any, Dict, Type, TypeVar

from dotenv import load_dotenv

# プロジェクトルートの.envファイルを読み込み
_project_root = Path(__file__).parent.parent.parent
_env_path = _project_root / ".env"


def env_exists() -> bool:
    """
    .envファイルが存在するか確認

    Returns:
        .envファイルが存在する場合はTrue、存在しない場合はFalse
    """
    return _env_path.exists()


def make_env_file() -> None:
    """
    デフォルトの.envファイルを作成

    既に.envファイルが存在する場合は上書きしません。
    .env.example が無い場合は何もしません（デフォルト値で動作します）。
    """
    if env_exists():
        return

    env_example_path = _env_path.parent / ".env.example"
    if not env_example_path.exists():
        return

    try:
        with (
            open(env_example_path, "r", encoding="utf-8") as src,
            open(_env_path, "w", encoding="utf-8") as dst,
        ):
            dst.write(src.read())
    except OSError:
        # 読み取り専用の配置ではデフォルト値で続行する
        pass


# .envファイルがなければ作成し、読み込む
if not env_exists():
    make_env_file()
load_dotenv(_env_path)

T = TypeVar("T")


class EnvLoader:
    """
    環境変数を型変換して読み込むクラス

    os.environ（load_dotenv 済み）から値を取得し、指定された型への変換を行います。
    変換に失敗した場合はデフォルト値を返します。
    """

    _TRUE_VALUES = ("true", "1", "yes", "on")

    def get(self, key: str, default: Any = None, cast_type: Type[Any] = str) -> Any:
        """
        環境変数を取得して型変換する

        Args:
            key: 環境変数のキー名
            default: 変数が存在しない、または変換に失敗した場合のデフォルト値
            cast_type: 変換先の型（bool, int, float, str など）

        Returns:
            型変換された環境変数の値、または変換失敗時はデフォルト値

        Example:
            >>> loader = EnvLoader()
            >>> seed = loader.get("SUITE_SEED", 20240611, int)
            >>> to_file = loader.get("LOG_TO_FILE", True, bool)
        """
        value = os.getenv(key)
        if value is None:
            return default

        try:
            if cast_type is bool:
                return value.strip().lower() in self._TRUE_VALUES
            if cast_type is int:
                return int(value)
            if cast_type is float:
                return float(value)
            return cast_type(value)
        except (ValueError, TypeError):
            return default


env_loader = EnvLoader()

# ===== アプリケーション設定 =====
APP_NAME: str = env_loader.get("APP_NAME", "ConvexDictionary")
APP_VERSION: str = env_loader.get("APP_VERSION", "1.0.0")
DEBUG: bool = env_loader.get("DEBUG", False, bool)

# ===== ログ設定 =====
LOG_LEVEL: str = env_loader.get("LOG_LEVEL", "INFO")
LOG_DIR: str = env_loader.get("LOG_DIR", "logs")
LOG_TO_FILE: bool = env_loader.get("LOG_TO_FILE", False, bool)

# ===== 演算モード =====
# "exact"（有理数厳密演算）または "float"（浮動小数点）
DEFAULT_ARITHMETIC_MODE: str = env_loader.get("DEFAULT_ARITHMETIC_MODE", "exact")

# ===== スイート設定 =====
DEFAULT_SUITE_NAME: str = env_loader.get("DEFAULT_SUITE_NAME", "default_suite")
SETTINGS_DIR: str = env_loader.get("SETTINGS_DIR", "settings")
SUITE_SEED: int = env_loader.get("SUITE_SEED", 20240611, int)
SUITE_WORKERS: int = env_loader.get("SUITE_WORKERS", 1, int)

# ===== ミンコフスキーソルバー設定 =====
SOLVER_TOLERANCE: float = env_loader.get("SOLVER_TOLERANCE", 1e-8, float)
SOLVER_MAX_ITERATIONS: int = env_loader.get("SOLVER_MAX_ITERATIONS", 200, int)
SOLVER_DAMPING: float = env_loader.get("SOLVER_DAMPING", 1.0, float)

# ===== 格子点数え上げ設定 =====
LATTICE_MAX_CANDIDATES: int = env_loader.get("LATTICE_MAX_CANDIDATES", 1_000_000, int)


def get_solver_defaults() -> Dict[str, Any]:
    """
    ソルバーのデフォルト設定を辞書形式で取得

    Returns:
        SolverOptions に渡せるキーワード引数の辞書
        - tolerance: 面積の相対誤差目標
        - max_iterations: 最大反復回数
        - damping: 初期ニュートン減衰係数

    Example:
        >>> get_solver_defaults()["max_iterations"]
        200
    """
    return {
        "tolerance": SOLVER_TOLERANCE,
        "max_iterations": SOLVER_MAX_ITERATIONS,
        "damping": SOLVER_DAMPING,
    }


def print_config() -> None:
    """
    デバッグ用：読み込まれた設定を表示
    """
    print("=== 環境変数設定 ===")
    print(f"APP_NAME: {APP_NAME}")
    print(f"DEBUG: {DEBUG}")
    print(f"LOG_LEVEL: {LOG_LEVEL}")
    print(f"LOG_DIR: {LOG_DIR}")
    print(f"LOG_TO_FILE: {LOG_TO_FILE}")
    print(f"DEFAULT_ARITHMETIC_MODE: {DEFAULT_ARITHMETIC_MODE}")
    print(f"DEFAULT_SUITE_NAME: {DEFAULT_SUITE_NAME}")
    print(f"SUITE_SEED: {SUITE_SEED}")
    print(f"SUITE_WORKERS: {SUITE_WORKERS}")
    print(f"SOLVER_TOLERANCE: {SOLVER_TOLERANCE}")
    print(f"SOLVER_MAX_ITERATIONS: {SOLVER_MAX_ITERATIONS}")
    print(f"LATTICE_MAX_CANDIDATES: {LATTICE_MAX_CANDIDATES}")
    print("=" * 30)


if __name__ == "__main__":
    print_config()
