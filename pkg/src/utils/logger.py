"""
ロギング設定モジュール

ロガーは領域（solver / suite / cli / geometry）ごとに logs/<領域>/ へ書き出します。
標準出力は計算結果の JSON 専用なので、コンソールのログはすべて標準エラーに出します。
"""

import logging
import os
import sys
from datetime import datetime
from typing import Dict, Optional, Union

from src.config import env_loader

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# setup_logger で作成したロガー（set_log_level の対象）
_LOGGERS: Dict[str, logging.Logger] = {}


def parse_level(level: Union[str, int, None]) -> int:
    """"DEBUG" などの名前・数値・None（.env の LOG_LEVEL）をログレベルに変換"""
    if level is None:
        level = env_loader.LOG_LEVEL
    if isinstance(level, int):
        return level
    return getattr(logging, str(level).upper(), logging.INFO)


def setup_logger(
    name: str,
    log_dir: Optional[str] = None,
    level: Union[str, int, None] = None,
    console: bool = True,
    file: Optional[bool] = None,
) -> logging.Logger:
    """
    領域ごとのロガーを作成

    Args:
        name: ロガー名（ファイル名 {name}_YYYYMMDD.log にも使う）
        log_dir: ログディレクトリ（通常は env_loader.LOG_DIR + "/<領域>"）。None なら LOG_DIR
        level: ログレベル。None の場合は .env の LOG_LEVEL
        console: True の場合、標準エラーに出力
        file: True の場合、ファイルにも出力。None の場合は .env の LOG_TO_FILE

    Returns:
        設定済みのロガー（同じ名前で呼び直すとハンドラを張り替える）

    Example:
        >>> logger = setup_logger("minkowski_solver", log_dir=env_loader.LOG_DIR + "/solver")
        >>> logger.debug("iter=3 residual=1.2e-05 step=0.5")
    """
    if log_dir is None:
        log_dir = env_loader.LOG_DIR
    if file is None:
        file = env_loader.LOG_TO_FILE
    resolved = parse_level(level)

    logger = logging.getLogger(name)
    logger.setLevel(resolved)
    logger.propagate = False
    logger.handlers.clear()

    formatter = logging.Formatter(LOG_FORMAT, datefmt=LOG_DATE_FORMAT)

    if console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(resolved)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    if file:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f"{name}_{datetime.now().strftime('%Y%m%d')}.log")
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(resolved)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    _LOGGERS[name] = logger
    return logger


def set_log_level(level: Union[str, int]) -> int:
    """
    作成済みのすべてのロガーとハンドラのレベルを変更

    CLI の --log-level から呼ばれます。ロガーはモジュールの読み込み時に
    作られるため、.env の LOG_LEVEL をあとから上書きする手段になります。

    Returns:
        変換後のログレベル
    """
    resolved = parse_level(level)
    for logger in _LOGGERS.values():
        logger.setLevel(resolved)
        for handler in logger.handlers:
            handler.setLevel(resolved)
    return resolved
