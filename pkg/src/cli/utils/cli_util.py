"""
CLI ユーティリティモジュール

JSON の出力、実行環境の情報、レポートの集計に使う小さな関数を提供します。
"""

import json
import platform
import sys
from importlib import metadata
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import psutil

from src.config.constants import EXIT_FAIL, EXIT_OK
from src.convex.inequalities.report import CheckReport
from src.types import EnvironmentInfo

REPORTED_PACKAGES = ("numpy", "scipy", "sympy", "pydantic", "python-dotenv", "psutil")


def format_bytes(size: float) -> str:
    """
    バイト数を読みやすい単位に変換

    Example:
        >>> format_bytes(3 * 1024**3)
        '3.00 GB'
    """
    for unit in ("B", "KB", "MB", "GB"):
        if size < 1024:
            return f"{size:.2f} {unit}"
        size /= 1024
    return f"{size:.2f} TB"


def _package_version(name: str) -> str:
    try:
        return metadata.version(name)
    except metadata.PackageNotFoundError:
        return "not installed"


def environment_info() -> EnvironmentInfo:
    """
    実行環境の情報（OS, Python, CPU 数, メモリ, 主要パッケージのバージョン）

    Returns:
        EnvironmentInfo
    """
    memory = psutil.virtual_memory()
    return {
        "platform": f"{platform.system()} {platform.release()} ({platform.machine()})",
        "python": sys.version.split()[0],
        "cpu_count": psutil.cpu_count() or 0,
        "memory_total": format_bytes(memory.total),
        "memory_available": format_bytes(memory.available),
        "packages": {name: _package_version(name) for name in REPORTED_PACKAGES},
    }


def relative_slack(report: CheckReport) -> float:
    """slack / max(1, |lhs|, |rhs|)"""
    scale = max(1.0, abs(float(report.lhs)), abs(float(report.rhs)))
    return float(report.slack) / scale


def exit_code_for(reports: Iterable[CheckReport]) -> int:
    """すべて PASS なら 0、ひとつでも FAIL があれば 1"""
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAIL


def dumps(payload: Any) -> str:
    return json.dumps(payload, ensure_ascii=False)


def emit(payload: Any, json_out: Optional[str] = None) -> None:
    """
    結果を標準出力に JSON で書き出し、json_out があればファイルにも保存

    Args:
        payload: JSON に変換できる値
        json_out: 保存先のパス
    """
    print(dumps(payload))
    if json_out:
        write_json(payload, json_out)


def emit_lines(payloads: Iterable[Dict[str, Any]], json_out: Optional[str] = None) -> None:
    """1 行 1 JSON で書き出す（json_out には JSON Lines として保存）"""
    lines = [dumps(payload) for payload in payloads]
    for line in lines:
        print(line)
    if json_out:
        path = Path(json_out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write("".join(line + "\n" for line in lines))


def write_json(payload: Any, path: str) -> Path:
    """JSON ファイルとして保存（親ディレクトリは作成）"""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False, indent=2)
    return out
