"""
suite / info サブコマンド
"""

import argparse
from typing import Any, Dict

from src.cli.services.suite_runner import SuiteConfig, default_counts, run_suite
from src.cli.utils.cli_util import emit, environment_info
from src.config import env_loader
from src.config.constants import EXIT_OK, get_results_dir, get_settings_path
from src.config.settings_loader import SettingsLoader
from src.utils.logger import setup_logger

logger = setup_logger("suite_command", log_dir=env_loader.LOG_DIR + "/cli")


def add_suite_arguments(parser: argparse.ArgumentParser) -> None:
    """suite と verify all が共有するフラグ"""
    parser.add_argument(
        "--suite",
        default=env_loader.DEFAULT_SUITE_NAME,
        help=f"settings/suites/ 以下のスイート名（デフォルト: {env_loader.DEFAULT_SUITE_NAME}）",
    )
    parser.add_argument("--seed", type=int, default=None, help="乱数シード（settings.py の SEED を上書き）")
    parser.add_argument("--dim", type=int, nargs="+", default=None, help="対象次元（2〜4）")
    parser.add_argument("--count", type=int, default=None, help="各チェックのインスタンス数")
    parser.add_argument("--workers", type=int, default=None, help="スレッドプールのワーカー数")
    parser.add_argument(
        "--output-dir",
        default=None,
        dest="output_dir",
        help="summary.json と reports.jsonl の出力先（デフォルト: results/<スイート名>）",
    )


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    suite_parser = subparsers.add_parser("suite", parents=[common], help="ランダム化された検証スイートを実行")
    add_suite_arguments(suite_parser)
    suite_parser.set_defaults(handler=run_suite_command)

    info_parser = subparsers.add_parser("info", parents=[common], help="実行環境と設定の表示")
    info_parser.set_defaults(handler=run_info)


def build_config(args: argparse.Namespace) -> SuiteConfig:
    """
    settings.py を読み込み、CLI フラグで上書きしたスイート設定

    Raises:
        FileNotFoundError: スイートの settings.py が存在しない場合
        ValueError: 設定の検証に失敗した場合
    """
    loader = SettingsLoader(str(get_settings_path(args.suite)))
    overrides: Dict[str, Any] = {
        "name": args.suite,
        "seed": args.seed,
        "mode": args.mode,
        "dimensions": tuple(args.dim) if args.dim else None,
        "workers": args.workers,
        "instance_counts": default_counts(args.count) if args.count is not None else None,
    }
    config = SuiteConfig.from_settings(loader, **overrides)

    updates: Dict[str, Any] = {}
    if args.tolerance is not None:
        updates["tolerance"] = args.tolerance
    if args.max_iterations is not None:
        updates["max_iterations"] = args.max_iterations
    if updates:
        solver = config.solver.model_validate({**config.solver.model_dump(), **updates})
        config = config.model_copy(update={"solver": solver})
    output_dir = args.output_dir or config.output_dir or str(get_results_dir(args.suite))
    return config.model_copy(update={"output_dir": output_dir})


def run_suite_command(args: argparse.Namespace) -> int:
    config = build_config(args)
    summary = run_suite(config)
    emit(summary.to_dict(), args.json_out)
    return summary.exit_code


def run_info(args: argparse.Namespace) -> int:
    emit(
        {
            "app": env_loader.APP_NAME,
            "arithmetic_mode": env_loader.DEFAULT_ARITHMETIC_MODE,
            "default_suite": env_loader.DEFAULT_SUITE_NAME,
            "suite_seed": env_loader.SUITE_SEED,
            "suite_workers": env_loader.SUITE_WORKERS,
            "environment": environment_info(),
        },
        args.json_out,
    )
    return EXIT_OK
