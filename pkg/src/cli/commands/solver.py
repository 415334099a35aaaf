"""
solve / blaschke / mixed-body サブコマンド
"""

import argparse
from typing import Any, Dict

from src.cli.commands.common import expect, expect_count, load, solver_options
from src.cli.services.io_schemas import polytope_to_dict
from src.cli.utils.cli_util import emit
from src.config.constants import EXIT_OK
from src.convex.core import arithmetic as ar
from src.convex.core.polytope import Polytope, volume
from src.convex.measures.surface_measure import SurfaceMeasure
from src.convex.solver import SolveDiagnostics, blaschke_add, mixed_body, solve_minkowski


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    solve_parser = subparsers.add_parser("solve", parents=[common], help="面積測度を与えたミンコフスキー問題を解く")
    solve_parser.add_argument("measure", help="測度の JSON")
    solve_parser.add_argument("--diagnostics", action="store_true", help="ソルバーの診断情報も出力する")
    solve_parser.set_defaults(handler=run_solve)

    blaschke_parser = subparsers.add_parser("blaschke", parents=[common], help="ブラシュケ和 K # L")
    blaschke_parser.add_argument("first", help="K の多面体 JSON")
    blaschke_parser.add_argument("second", help="L の多面体 JSON")
    blaschke_parser.add_argument("--diagnostics", action="store_true", help="ソルバーの診断情報も出力する")
    blaschke_parser.set_defaults(handler=run_blaschke)

    mixed_body_parser = subparsers.add_parser("mixed-body", parents=[common], help="混合体 [K_1, ..., K_{n-1}]")
    mixed_body_parser.add_argument("polytopes", nargs="+", help="n-1 個の多面体 JSON")
    mixed_body_parser.add_argument("--diagnostics", action="store_true", help="ソルバーの診断情報も出力する")
    mixed_body_parser.set_defaults(handler=run_mixed_body)


def _result(body: Polytope, diagnostics: SolveDiagnostics, with_diagnostics: bool) -> Dict[str, Any]:
    payload: Dict[str, Any] = polytope_to_dict(body)
    payload["volume"] = ar.format_scalar(volume(body))
    if with_diagnostics:
        payload["diagnostics"] = diagnostics.to_dict()
    return payload


def run_solve(args: argparse.Namespace) -> int:
    [measure] = expect(load(args, [args.measure], for_solving=True), SurfaceMeasure, [args.measure])
    body, diagnostics = solve_minkowski(measure, solver_options(args))
    emit(_result(body, diagnostics, args.diagnostics), args.json_out)
    return EXIT_OK


def run_blaschke(args: argparse.Namespace) -> int:
    paths = [args.first, args.second]
    first, second = expect(load(args, paths), Polytope, paths)
    body, diagnostics = blaschke_add(first, second, solver_options(args), return_diagnostics=True)
    emit(_result(body, diagnostics, args.diagnostics), args.json_out)
    return EXIT_OK


def run_mixed_body(args: argparse.Namespace) -> int:
    bodies = expect(load(args, args.polytopes), Polytope, args.polytopes)
    expect_count(bodies, bodies[0].dim - 1, "mixed-body")
    body, diagnostics = mixed_body(bodies, solver_options(args), return_diagnostics=True)
    emit(_result(body, diagnostics, args.diagnostics), args.json_out)
    return EXIT_OK
