"""
toric サブコマンド（flop / count）
"""

import argparse
from fractions import Fraction
from typing import Any, Dict

from src.cli.commands.common import expect, load
from src.cli.utils.cli_util import emit, exit_code_for
from src.config.constants import EXIT_OK
from src.convex.core import arithmetic as ar
from src.convex.core.polytope import Polytope, volume
from src.convex.toric import (
    FlopDivisor,
    LatticePolytope,
    check_flop_volume,
    check_volume_correspondence,
    flop_wall_jump,
    lattice_point_count,
    section_count_closed_form,
    section_count_flop,
    volume_flop,
)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("toric", help="トーリック側の計算（フロップの例・格子点）")
    actions = parser.add_subparsers(dest="toric_command", metavar="{flop,count}")
    actions.required = True

    flop_parser = actions.add_parser("flop", parents=[common], help="因子 aξ + bf の切断の数と体積")
    flop_parser.add_argument("--a", type=int, required=True, help="ξ の係数（>= 0）")
    flop_parser.add_argument("--b", type=int, required=True, help="f の係数（>= 0）")
    flop_parser.add_argument("--check-volume", action="store_true", dest="check_volume", help="閉じた式と漸近値を照合する")
    flop_parser.add_argument(
        "--wall-jump", action="store_true", dest="wall_jump", help="壁 a = b を横切る 2 階差分の跳びも出力する"
    )
    flop_parser.add_argument("--wall-t", default="1", dest="wall_t", help="壁上の点 (t, t)（有理数文字列可）")
    flop_parser.add_argument("--wall-h", default="1/10", dest="wall_h", help="差分の刻み（有理数文字列可）")
    flop_parser.set_defaults(handler=run_flop)

    count_parser = actions.add_parser("count", parents=[common], help="格子多面体の格子点の数")
    count_parser.add_argument("--polytope", required=True, help="整数頂点の多面体 JSON")
    count_parser.add_argument(
        "--check-volume", action="store_true", dest="check_volume", help="膨らませた格子点の数から体積を外挿して照合する"
    )
    count_parser.set_defaults(handler=run_count)


def run_flop(args: argparse.Namespace) -> int:
    divisor = FlopDivisor(args.a, args.b)
    closed, asymptotic = volume_flop(divisor)
    payload: Dict[str, Any] = {
        "a": divisor.a,
        "b": divisor.b,
        "sections": section_count_flop(divisor),
        "sections_closed_form": ar.format_scalar(section_count_closed_form(divisor)),
        "volume": ar.format_scalar(closed),
        "volume_asymptotic": ar.format_scalar(asymptotic),
    }
    reports = []
    if args.check_volume:
        report = check_flop_volume(divisor)
        payload["check"] = report.to_dict()
        reports.append(report)
    if args.wall_jump:
        payload["wall_jump"] = flop_wall_jump(Fraction(args.wall_t), Fraction(args.wall_h)).to_dict()
    emit(payload, args.json_out)
    return exit_code_for(reports) if reports else EXIT_OK


def run_count(args: argparse.Namespace) -> int:
    [body] = expect(load(args, [args.polytope]), Polytope, [args.polytope])
    lattice = LatticePolytope(body)
    payload: Dict[str, Any] = {
        "dim": lattice.dim,
        "lattice_points": lattice_point_count(lattice),
        "volume": ar.format_scalar(volume(lattice.polytope)),
    }
    reports = []
    if args.check_volume:
        report = check_volume_correspondence(lattice)
        payload["check"] = report.to_dict()
        reports.append(report)
    emit(payload, args.json_out)
    return exit_code_for(reports) if reports else EXIT_OK
