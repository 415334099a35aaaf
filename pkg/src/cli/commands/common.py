"""
サブコマンド共通の引数と入力の読み込み
"""

import argparse
from typing import List, Sequence, Type, TypeVar

from src.cli.services.io_schemas import ParsedValue, parse_inputs
from src.config import env_loader
from src.convex.exceptions import InvariantViolation
from src.convex.solver.options import SolverOptions

T = TypeVar("T")


def common_parser() -> argparse.ArgumentParser:
    """すべてのサブコマンドが受け付けるフラグ（--mode, --tolerance, --json-out, --log-level）"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--mode",
        choices=("exact", "float"),
        default=None,
        help=f"演算モード（デフォルト: .env の DEFAULT_ARITHMETIC_MODE = {env_loader.DEFAULT_ARITHMETIC_MODE}）",
    )
    parser.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help=f"ソルバーの面積の相対誤差目標（デフォルト: {env_loader.SOLVER_TOLERANCE:g}）",
    )
    parser.add_argument("--max-iterations", type=int, default=None, dest="max_iterations", help="ソルバーの最大反復回数")
    parser.add_argument("--json-out", default=None, dest="json_out", metavar="PATH", help="結果の JSON の保存先")
    parser.add_argument(
        "--log-level",
        choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
        default=None,
        dest="log_level",
        help="標準エラーに出すログのレベル（デフォルト: .env の LOG_LEVEL）",
    )
    return parser


def is_exact(args: argparse.Namespace) -> bool:
    return (args.mode or env_loader.DEFAULT_ARITHMETIC_MODE) == "exact"


def solver_options(args: argparse.Namespace) -> SolverOptions:
    """--tolerance / --max-iterations を反映したソルバー設定"""
    updates = {}
    if getattr(args, "tolerance", None) is not None:
        updates["tolerance"] = args.tolerance
    if getattr(args, "max_iterations", None) is not None:
        updates["max_iterations"] = args.max_iterations
    return SolverOptions(**updates)


def load(args: argparse.Namespace, paths: Sequence[str], for_solving: bool = False) -> List[ParsedValue]:
    return parse_inputs(paths, exact=is_exact(args), for_solving=for_solving)


def expect(values: Sequence[ParsedValue], kind: Type[T], paths: Sequence[str]) -> List[T]:
    """
    読み込んだ値がすべて kind であることを確認

    Raises:
        InvariantViolation: 種類の違うファイルがある場合
    """
    for value, path in zip(values, paths):
        if not isinstance(value, kind):
            raise InvariantViolation(f"{path}: {kind.__name__} のファイルが必要です（{type(value).__name__}）")
    return list(values)  # type: ignore[arg-type]


def expect_count(values: Sequence[object], count: int, what: str) -> None:
    if len(values) != count:
        raise InvariantViolation(f"{what}: ファイルが {count} 個必要です（{len(values)} 個）")
