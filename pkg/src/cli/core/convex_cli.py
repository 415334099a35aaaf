"""
凸幾何ツールキットの CLI

argparse のパーサーを組み立て、サブコマンドを登録し、例外を終了コードに変換します。
結果は標準出力に JSON で書き出され、ログは標準エラーと logs/cli に出力されます。

終了コード:
    0: すべて PASS / 正常終了
    1: FAIL のレポートがある
    2: 入力エラー（スキーマ・不変条件・ファイルなし）
    3: ソルバーの非収束
"""

import argparse
import sys
from typing import List, Optional

from src.cli.commands import alexandrov, geometry, solver, suite, toric, verify
from src.cli.commands.common import common_parser
from src.cli.utils.cli_util import dumps
from src.config import env_loader
from src.config.constants import EXIT_INPUT_ERROR, EXIT_NO_CONVERGENCE
from src.convex.exceptions import ConvexGeometryError, InvariantViolation, NoConvergence, SchemaError
from src.utils.logger import set_log_level, setup_logger

logger = setup_logger("convex_cli", log_dir=env_loader.LOG_DIR + "/cli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convex-dict",
        description="多面体の混合体積・面積測度・ミンコフスキー問題と不等式の検証",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    common = common_parser()
    for module in (geometry, solver, alexandrov, verify, toric, suite):
        module.register(subparsers, common)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI のエントリーポイント

    Args:
        argv: 引数（None なら sys.argv[1:]）

    Returns:
        終了コード
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "log_level", None):
        set_log_level(args.log_level)
    try:
        return args.handler(args)
    except (SchemaError, InvariantViolation, FileNotFoundError) as e:
        logger.error(f"入力エラー: {e}")
        return EXIT_INPUT_ERROR
    except NoConvergence as e:
        logger.error(f"ソルバーが収束しませんでした: {e}")
        if e.diagnostics is not None:
            print(dumps({"error": "no_convergence", "diagnostics": e.diagnostics.to_dict()}))
        return EXIT_NO_CONVERGENCE
    except (ConvexGeometryError, ValueError) as e:
        logger.error(f"入力エラー: {type(e).__name__}: {e}")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
