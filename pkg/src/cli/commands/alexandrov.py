"""
alexandrov サブコマンド（decompose / derivative / polar）
"""

import argparse

from src.cli.commands.common import expect, load
from src.cli.services.io_schemas import polytope_to_dict
from src.cli.utils.cli_util import emit
from src.config.constants import EXIT_OK
from src.convex.alexandrov import decompose, derivative_of_volume, polar_volume, volume_of_function
from src.convex.core import arithmetic as ar
from src.convex.core.polytope import Polytope
from src.convex.measures.support_sample import SupportSample


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("alexandrov", help="アレクサンドロフ体と分解 f = P(f) + N(f)")
    actions = parser.add_subparsers(dest="alexandrov_command", metavar="{decompose,derivative,polar}")
    actions.required = True

    decompose_parser = actions.add_parser("decompose", parents=[common], help="f を P(f) + N(f) に分解")
    decompose_parser.add_argument("--function", required=True, help="サンプル関数 f の JSON")
    decompose_parser.set_defaults(handler=run_decompose)

    derivative_parser = actions.add_parser(
        "derivative", parents=[common], help="d/dt vol(f + t·g) の解析値と数値微分"
    )
    derivative_parser.add_argument("--function", required=True, help="サンプル関数 f の JSON")
    derivative_parser.add_argument("--direction", required=True, help="変化の向き g の JSON")
    derivative_parser.set_defaults(handler=run_derivative)

    polar_parser = actions.add_parser("polar", parents=[common], help="候補の多面体上での極体積の最小値")
    polar_parser.add_argument("--function", required=True, help="サンプル関数 f の JSON")
    polar_parser.add_argument("--candidates", nargs="*", default=[], help="候補の多面体 JSON")
    polar_parser.set_defaults(handler=run_polar)


def _function(args: argparse.Namespace) -> SupportSample:
    [f] = expect(load(args, [args.function]), SupportSample, [args.function])
    return f


def run_decompose(args: argparse.Namespace) -> int:
    emit(decompose(_function(args)).to_dict(), args.json_out)
    return EXIT_OK


def run_derivative(args: argparse.Namespace) -> int:
    f = _function(args)
    [g] = expect(load(args, [args.direction]), SupportSample, [args.direction])
    analytic, numeric = derivative_of_volume(f, g)
    scale = max(1.0, abs(float(analytic)))
    emit(
        {
            "analytic": ar.format_scalar(analytic),
            "numeric": numeric,
            "relative_difference": abs(float(analytic) - numeric) / scale,
        },
        args.json_out,
    )
    return EXIT_OK


def run_polar(args: argparse.Namespace) -> int:
    f = _function(args)
    candidates = expect(load(args, args.candidates), Polytope, args.candidates)
    minimum, body = polar_volume(f, candidates)
    emit(
        {
            "polar_volume": ar.format_scalar(minimum),
            "volume_of_function": ar.format_scalar(volume_of_function(f)),
            "minimizer": polytope_to_dict(body),
        },
        args.json_out,
    )
    return EXIT_OK
