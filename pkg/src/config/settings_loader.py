"""
設定ファイルローダーモジュール

スイート固有のsettings.pyファイルを動的に読み込み、環境変数でオーバーライド可能にします。
"""

import os
import types
from typing import Any, Tuple, List, Dict

from src.config import env_loader

# 検証スイートで実行できるチェック名
KNOWN_CHECKS = (
    "brunn_minkowski",
    "kneser_suss",
    "diskant_bound",
    "morse",
    "reverse_kt",
    "mixed_discriminant_kt",
    "loomis_whitney",
    "box_bound",
    "mixed_body_volume",
    "improved_bm",
    "log_concavity",
    "mixed_volume_linearity",
    "minkowski_first",
    "alexandrov_fenchel",
    "blaschke_compatibility",
    "indecomposability",
    "oracle_equivalence",
    "solver_round_trip",
    "alexandrov_decomposition",
    "polar_volume",
    "derivative_lemma",
    "flop_volume",
    "volume_correspondence",
)

# settings.py の変数名 -> (環境変数名, 型)
ENV_OVERRIDE_MAP: Dict[str, Tuple[str, type]] = {
    "SEED": ("SUITE_SEED", int),
    "WORKERS": ("SUITE_WORKERS", int),
    "SOLVER_TOLERANCE": ("SOLVER_TOLERANCE", float),
    "SOLVER_MAX_ITERATIONS": ("SOLVER_MAX_ITERATIONS", int),
    "SOLVER_DAMPING": ("SOLVER_DAMPING", float),
    "ARITHMETIC_MODE": ("DEFAULT_ARITHMETIC_MODE", str),
}


class SettingsLoader:
    """
    スイート固有のsettings.pyを動的に読み込むクラス

    環境変数による設定のオーバーライドをサポートします。
    """

    def __init__(self, settings_path: str) -> None:
        """
        SettingsLoaderを初期化し、settings.pyを読み込む

        Args:
            settings_path: settings.pyファイルへのフルパス

        Raises:
            FileNotFoundError: settings.pyが存在しない場合
            RuntimeError: settings.pyの読み込みに失敗した場合
        """
        self.settings_path = settings_path
        if not os.path.isfile(settings_path):
            raise FileNotFoundError(
                f"{settings_path} が存在しません。settings.py を配置してください。"
            )

        try:
            self.reload()
        except Exception as e:
            raise RuntimeError(f"settings.py の読み込みに失敗しました: {e}")

    def get_variable(self, name: str) -> Any:
        """
        settings.pyから変数を取得（環境変数でオーバーライド可能）

        対応する環境変数が実際に設定されている場合は、settings.pyの値を上書きします。

        Args:
            name: 取得する変数名

        Returns:
            変数の値（環境変数でオーバーライドされる場合はその値）

        Raises:
            AttributeError: 変数がsettings.pyに定義されていない場合

        Example:
            >>> loader = SettingsLoader("settings/suites/default_suite/settings.py")
            >>> loader.get_variable("DIMENSIONS")
            [2, 3]
        """
        if name in ENV_OVERRIDE_MAP:
            env_key, cast_type = ENV_OVERRIDE_MAP[name]
            if os.getenv(env_key) is not None:
                value = env_loader.env_loader.get(env_key, None, cast_type)
                if value is not None:
                    return value

        if not hasattr(self.module, name):
            raise AttributeError(
                f"{name} が {self.module.__name__} に定義されていません。"
            )
        return getattr(self.module, name)

    def get_or_default(self, name: str, default: Any) -> Any:
        """未定義の変数に対してデフォルト値を返す get_variable"""
        try:
            return self.get_variable(name)
        except AttributeError:
            return default

    def reload(self) -> None:
        """
        設定ファイルを再読み込み

        settings.pyの内容が変更された場合に、変更を反映させるために使用します。
        __pycache__ のバイトコードは使わずソースから直接コンパイルします
        （同じ秒・同じサイズの書き換えでも古い値を返さない）。
        """
        with open(self.settings_path, "r", encoding="utf-8") as f:
            source = f.read()
        module = types.ModuleType("settings")
        module.__file__ = self.settings_path
        exec(compile(source, self.settings_path, "exec"), module.__dict__)
        self.module = module

    def validate_suite_settings(self) -> Tuple[bool, List[str]]:
        """
        スイート設定の妥当性を検証

        settings.pyの必須項目と値の範囲をチェックします。

        Returns:
            検証結果のタプル
            - bool: 検証が成功した場合True、失敗した場合False
            - List[str]: エラーメッセージのリスト（検証成功時は空）

        Example:
            >>> loader = SettingsLoader("settings/suites/default_suite/settings.py")
            >>> is_valid, errors = loader.validate_suite_settings()
            >>> if not is_valid:
            ...     for error in errors:
            ...         print(f"検証エラー: {error}")
        """
        errors: List[str] = []

        required_vars = [
            "SEED",
            "DIMENSIONS",
            "ARITHMETIC_MODE",
            "VERTEX_COUNT_RANGE",
            "INSTANCE_COUNTS",
        ]

        for var in required_vars:
            try:
                self.get_variable(var)
            except AttributeError:
                errors.append(f"必須設定 '{var}' が定義されていません")

        if errors:
            return False, errors

        seed = self.get_variable("SEED")
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            errors.append("SEED は0以上の整数である必要があります")

        dimensions = self.get_variable("DIMENSIONS")
        if not isinstance(dimensions, (list, tuple)) or len(dimensions) == 0:
            errors.append("DIMENSIONS は空でないリストである必要があります")
        elif not all(isinstance(n, int) and 2 <= n <= 4 for n in dimensions):
            errors.append("DIMENSIONS の各値は 2〜4 の整数である必要があります")

        mode = self.get_variable("ARITHMETIC_MODE")
        if mode not in ("exact", "float"):
            errors.append("ARITHMETIC_MODE は 'exact' または 'float' である必要があります")

        vertex_range = self.get_variable("VERTEX_COUNT_RANGE")
        if (
            not isinstance(vertex_range, (list, tuple))
            or len(vertex_range) != 2
            or not all(isinstance(v, int) for v in vertex_range)
        ):
            errors.append("VERTEX_COUNT_RANGE は (min, max) の整数タプルである必要があります")
        elif vertex_range[0] > vertex_range[1] or vertex_range[0] < 3:
            errors.append("VERTEX_COUNT_RANGE は 3 <= min <= max である必要があります")

        counts = self.get_variable("INSTANCE_COUNTS")
        if not isinstance(counts, dict):
            errors.append("INSTANCE_COUNTS はチェック名 -> 件数の辞書である必要があります")
        else:
            for check_name, count in counts.items():
                if check_name not in KNOWN_CHECKS:
                    errors.append(f"INSTANCE_COUNTS に未知のチェック '{check_name}' があります")
                if not isinstance(count, int) or count < 0:
                    errors.append(f"INSTANCE_COUNTS['{check_name}'] は0以上の整数である必要があります")

        # 任意設定
        tolerance = self.get_or_default("SOLVER_TOLERANCE", 1e-8)
        if not isinstance(tolerance, (int, float)) or tolerance <= 0:
            errors.append("SOLVER_TOLERANCE は正の数値である必要があります")

        max_iterations = self.get_or_default("SOLVER_MAX_ITERATIONS", 200)
        if not isinstance(max_iterations, int) or max_iterations < 1:
            errors.append("SOLVER_MAX_ITERATIONS は1以上の整数である必要があります")

        damping = self.get_or_default("SOLVER_DAMPING", 1.0)
        if not isinstance(damping, (int, float)) or not (0 < damping <= 1):
            errors.append("SOLVER_DAMPING は 0 < x <= 1 の範囲である必要があります")

        workers = self.get_or_default("WORKERS", 1)
        if not isinstance(workers, int) or workers < 1:
            errors.append("WORKERS は1以上の整数である必要があります")

        return len(errors) == 0, errors
