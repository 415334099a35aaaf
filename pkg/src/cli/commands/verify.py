"""
verify サブコマンド

- verify <check> --inputs a.json b.json ...: 入力ファイルで 1 回評価
- verify <check> --random N [--seed S] [--dim 2 3]: スイートと同じ乱数列で N インスタンス評価
- verify all [--seed S]: 検証スイート全体（suite サブコマンドと同じ）
"""

import argparse
from typing import Callable, Dict, List, Sequence

from src.cli.commands.common import expect, expect_count, is_exact, load, solver_options
from src.cli.commands.suite import add_suite_arguments, run_suite_command
from src.cli.services.check_registry import CHECK_INDEX, get_check, run_instance
from src.cli.utils.cli_util import emit_lines, exit_code_for
from src.config import env_loader
from src.convex.core.polytope import Polytope
from src.convex.exceptions import InvariantViolation
from src.convex.inequalities import (
    CheckReport,
    SymmetricMatrix,
    check_alexandrov_decomposition,
    check_alexandrov_fenchel,
    check_blaschke_compatibility,
    check_box_bound,
    check_brunn_minkowski,
    check_derivative_lemma,
    check_diskant_bound,
    check_improved_bm,
    check_indecomposability,
    check_kneser_suss,
    check_log_concavity,
    check_loomis_whitney,
    check_minkowski_first,
    check_mixed_body_volume,
    check_mixed_discriminant_kt,
    check_mixed_volume_linearity,
    check_morse,
    check_oracle_equivalence,
    check_polar_volume,
    check_reverse_kt,
    check_solver_round_trip,
)
from src.convex.measures.support_sample import SupportSample
from src.convex.toric import FlopDivisor, LatticePolytope, check_flop_volume, check_volume_correspondence
from src.utils.logger import setup_logger

logger = setup_logger("verify", log_dir=env_loader.LOG_DIR + "/cli")

InputCheck = Callable[[argparse.Namespace], CheckReport]


# ===== 入力ファイルによる評価 =====
def _bodies(args: argparse.Namespace, count: int = 0) -> List[Polytope]:
    bodies = expect(load(args, args.inputs), Polytope, args.inputs)
    if count:
        expect_count(bodies, count, args.check)
    if not bodies:
        raise InvariantViolation(f"{args.check}: --inputs に多面体 JSON を指定してください")
    return bodies


def _samples(args: argparse.Namespace, count: int) -> List[SupportSample]:
    samples = expect(load(args, args.inputs), SupportSample, args.inputs)
    expect_count(samples, count, args.check)
    return samples


def _k(args: argparse.Namespace, n: int) -> int:
    if args.k is None:
        raise InvariantViolation(f"{args.check}: --k を指定してください（1 <= k <= {n - 1}）")
    if not 1 <= args.k <= n - 1:
        raise InvariantViolation(f"{args.check}: k は 1 <= k <= {n - 1} である必要があります（{args.k}）")
    return args.k


def _reverse_kt(args: argparse.Namespace) -> CheckReport:
    first, middle, last = _bodies(args, 3)
    return check_reverse_kt(first, middle, last, _k(args, first.dim))


def _mixed_discriminant_kt(args: argparse.Namespace) -> CheckReport:
    matrices = expect(load(args, args.inputs), SymmetricMatrix, args.inputs)
    expect_count(matrices, 3, args.check)
    return check_mixed_discriminant_kt(*matrices, k=_k(args, matrices[0].dim))


def _mixed_body_volume(args: argparse.Namespace) -> CheckReport:
    bodies = _bodies(args)
    expect_count(bodies, bodies[0].dim - 1, args.check)
    return check_mixed_body_volume(bodies, opts=solver_options(args))


def _oracle_equivalence(args: argparse.Namespace) -> CheckReport:
    bodies = _bodies(args)
    expect_count(bodies, bodies[0].dim, args.check)
    return check_oracle_equivalence(bodies[:-1], bodies[-1])


def _alexandrov_fenchel(args: argparse.Namespace) -> CheckReport:
    bodies = _bodies(args)
    expect_count(bodies, bodies[0].dim, args.check)
    return check_alexandrov_fenchel(bodies[0], bodies[1], bodies[2:])


def _blaschke_compatibility(args: argparse.Namespace) -> CheckReport:
    bodies = _bodies(args)
    expect_count(bodies, bodies[0].dim, args.check)
    return check_blaschke_compatibility(bodies[0], bodies[1], bodies[2:])


def _polar_volume(args: argparse.Namespace) -> CheckReport:
    [f] = expect(load(args, args.inputs[:1]), SupportSample, args.inputs[:1])
    candidates = expect(load(args, args.inputs[1:]), Polytope, args.inputs[1:])
    return check_polar_volume(f, candidates)


def _flop_volume(args: argparse.Namespace) -> CheckReport:
    if args.a is None or args.b is None:
        raise InvariantViolation("flop_volume: --a と --b を指定してください")
    return check_flop_volume(FlopDivisor(args.a, args.b))


def _volume_correspondence(args: argparse.Namespace) -> CheckReport:
    [body] = _bodies(args, 1)
    return check_volume_correspondence(LatticePolytope(body))


INPUT_CHECKS: Dict[str, InputCheck] = {
    "brunn_minkowski": lambda args: check_brunn_minkowski(*_bodies(args, 2)),
    "kneser_suss": lambda args: check_kneser_suss(*_bodies(args, 2), opts=solver_options(args)),
    "diskant_bound": lambda args: check_diskant_bound(*_bodies(args, 2)),
    "morse": lambda args: check_morse(*_bodies(args, 2)),
    "reverse_kt": _reverse_kt,
    "mixed_discriminant_kt": _mixed_discriminant_kt,
    "loomis_whitney": lambda args: check_loomis_whitney(*_bodies(args, 1)),
    "box_bound": lambda args: check_box_bound(*_bodies(args, 1)),
    "mixed_body_volume": _mixed_body_volume,
    "improved_bm": lambda args: check_improved_bm(*_bodies(args, 2), opts=solver_options(args)),
    "log_concavity": lambda args: check_log_concavity(*_bodies(args, 2), opts=solver_options(args)),
    "mixed_volume_linearity": lambda args: check_mixed_volume_linearity(*_bodies(args, 3)),
    "minkowski_first": lambda args: check_minkowski_first(*_bodies(args, 2)),
    "alexandrov_fenchel": _alexandrov_fenchel,
    "blaschke_compatibility": _blaschke_compatibility,
    "indecomposability": lambda args: check_indecomposability(*_bodies(args, 1), opts=solver_options(args)),
    "oracle_equivalence": _oracle_equivalence,
    "solver_round_trip": lambda args: check_solver_round_trip(*_bodies(args, 1), opts=solver_options(args)),
    "alexandrov_decomposition": lambda args: check_alexandrov_decomposition(*_samples(args, 1)),
    "polar_volume": _polar_volume,
    "derivative_lemma": lambda args: check_derivative_lemma(*_samples(args, 2)),
    "flop_volume": _flop_volume,
    "volume_correspondence": _volume_correspondence,
}


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "verify", parents=[common], help="不等式チェックを入力ファイルまたはランダムなインスタンスで評価"
    )
    parser.add_argument("check", choices=["all", *CHECK_INDEX], metavar="CHECK", help="チェック名または all")
    parser.add_argument("--inputs", nargs="*", default=[], help="入力 JSON（チェックごとの順序）")
    parser.add_argument("--k", type=int, default=None, help="reverse_kt / mixed_discriminant_kt の k")
    parser.add_argument("--a", type=int, default=None, help="flop_volume の a")
    parser.add_argument("--b", type=int, default=None, help="flop_volume の b")
    parser.add_argument("--random", type=int, default=None, metavar="N", help="ランダムなインスタンスを N 個評価")
    add_suite_arguments(parser)
    parser.set_defaults(handler=run_verify)


def _random_reports(args: argparse.Namespace) -> List[CheckReport]:
    entry = get_check(args.check)
    dimensions = entry.dimensions(sorted(set(args.dim or [2, 3])))
    if not dimensions:
        raise InvariantViolation(f"{args.check}: 対象次元 {entry.allowed} が --dim に含まれていません")
    seed = env_loader.SUITE_SEED if args.seed is None else args.seed
    reports = []
    for instance in range(args.random):
        n = dimensions[instance % len(dimensions)]
        reports.append(
            run_instance(args.check, seed, instance, n, is_exact(args), (4, 12), solver_options(args))
        )
    return reports


def run_verify(args: argparse.Namespace) -> int:
    if args.check == "all":
        return run_suite_command(args)
    if args.random is not None:
        if args.random < 1:
            raise InvariantViolation("--random は 1 以上である必要があります")
        reports: Sequence[CheckReport] = _random_reports(args)
    else:
        reports = [INPUT_CHECKS[args.check](args)]
    emit_lines([report.to_dict() for report in reports], args.json_out)
    for report in reports:
        if not report.passed:
            logger.error(f"{report.name}: FAIL (lhs={report.lhs}, rhs={report.rhs}, slack={report.slack})")
    return exit_code_for(reports)
