"""
検証スイートのチェック一覧

各チェックはランダムなインスタンスを 1 つ生成して評価する関数を持ちます。
登録順がチェック番号になり、ジョブの乱数列 (seed, チェック番号, インスタンス番号) に使われるため、
既存のチェックの順序は変えずに末尾へ追加してください。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from src.cli.services.random_polytope import (
    random_lattice_points,
    random_perturbation,
    random_polytope,
    random_positive_sample,
    random_spd_matrix,
    vertex_count_for,
)
from src.convex.core import arithmetic as ar
from src.convex.core.hull import convex_hull
from src.convex.core.operations import scale_translate
from src.convex.core.polytope import Polytope
from src.convex.inequalities import (
    CheckReport,
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
from src.convex.solver.options import SolverOptions
from src.convex.toric import FlopDivisor, LatticePolytope, check_flop_volume, check_volume_correspondence

# 4 件に 1 件は相似な組（等号ケース）を作る
HOMOTHETIC_PERIOD = 4


@dataclass(frozen=True)
class InstanceContext:
    """
    1 インスタンスの生成条件

    Attributes:
        n: 次元
        exact: 厳密モードか
        vertex_range: ランダム多面体の点の数の範囲
        solver: ソルバー設定
        instance: インスタンス番号
    """

    n: int
    exact: bool
    vertex_range: Tuple[int, int]
    solver: SolverOptions
    instance: int


CheckRunner = Callable[[np.random.Generator, InstanceContext], CheckReport]


@dataclass(frozen=True)
class CheckEntry:
    """
    Attributes:
        name: チェック名
        run: インスタンスを生成して評価する関数
        allowed: 対象とする次元（None ならスイートの全次元）
        fixed: スイートの次元によらず使う次元（行列やフロップの例）
    """

    name: str
    run: CheckRunner
    allowed: Optional[Tuple[int, ...]] = None
    fixed: Optional[Tuple[int, ...]] = None

    def dimensions(self, suite_dimensions: List[int]) -> List[int]:
        if self.fixed is not None:
            return list(self.fixed)
        if self.allowed is None:
            return list(suite_dimensions)
        return [n for n in suite_dimensions if n in self.allowed]


# ===== インスタンス生成 =====
def _body(rng: np.random.Generator, ctx: InstanceContext, n: Optional[int] = None) -> Polytope:
    dim = ctx.n if n is None else n
    return random_polytope(None, dim, vertex_count_for(rng, dim, ctx.vertex_range), ctx.exact, rng=rng)


def _bodies(rng: np.random.Generator, ctx: InstanceContext, count: int) -> List[Polytope]:
    return [_body(rng, ctx) for _ in range(count)]


def _homothet(rng: np.random.Generator, body: Polytope, exact: bool) -> Polytope:
    """λK + t（λ ∈ [1/2, 2)、t は単位立方体内）"""
    ratio = rng.uniform(0.5, 2.0)
    shift = rng.uniform(-1.0, 1.0, size=body.dim)
    if exact:
        scale = Fraction(int(round(ratio * 64)), 64)
        translation = ar.exact_array([Fraction(int(round(x * 64)), 64) for x in shift])
        return scale_translate(body, scale, translation)
    return scale_translate(body, float(ratio), shift)


def _pair(rng: np.random.Generator, ctx: InstanceContext) -> Tuple[Polytope, Polytope]:
    first = _body(rng, ctx)
    if ctx.instance % HOMOTHETIC_PERIOD == HOMOTHETIC_PERIOD - 1:
        return first, _homothet(rng, first, ctx.exact)
    return first, _body(rng, ctx)


def _axis_box(rng: np.random.Generator, n: int, exact: bool) -> Polytope:
    widths = rng.integers(1, 5, size=n)
    corners = np.array(np.meshgrid(*[[0, int(w)] for w in widths], indexing="ij")).reshape(n, -1).T
    return convex_hull(ar.exact_array(corners) if exact else corners.astype(float))


def _body_or_box(rng: np.random.Generator, ctx: InstanceContext) -> Polytope:
    if ctx.instance % HOMOTHETIC_PERIOD == HOMOTHETIC_PERIOD - 1:
        return _axis_box(rng, ctx.n, ctx.exact)
    return _body(rng, ctx)


def _sample_size(rng: np.random.Generator, n: int) -> int:
    return int(rng.integers(max(6, 2 * n), 21))


def _k(rng: np.random.Generator, n: int) -> int:
    return int(rng.integers(1, n))


# ===== 各チェック =====
def _run_brunn_minkowski(rng, ctx):
    return check_brunn_minkowski(*_pair(rng, ctx))


def _run_kneser_suss(rng, ctx):
    return check_kneser_suss(*_pair(rng, ctx), opts=ctx.solver)


def _run_diskant_bound(rng, ctx):
    return check_diskant_bound(_body(rng, ctx), _body(rng, ctx))


def _run_morse(rng, ctx):
    outer = _body(rng, ctx)
    inner = scale_translate(_body(rng, ctx), Fraction(1, 4) if ctx.exact else 0.25)
    return check_morse(outer, inner)


def _run_reverse_kt(rng, ctx):
    first, middle, last = _bodies(rng, ctx, 3)
    return check_reverse_kt(first, middle, last, _k(rng, ctx.n))


def _run_mixed_discriminant_kt(rng, ctx):
    matrices = [random_spd_matrix(rng, ctx.n, ctx.exact) for _ in range(3)]
    return check_mixed_discriminant_kt(*matrices, k=_k(rng, ctx.n))


def _run_loomis_whitney(rng, ctx):
    return check_loomis_whitney(_body_or_box(rng, ctx))


def _run_box_bound(rng, ctx):
    return check_box_bound(_body_or_box(rng, ctx))


def _run_mixed_body_volume(rng, ctx):
    return check_mixed_body_volume(_bodies(rng, ctx, ctx.n - 1), opts=ctx.solver)


def _run_improved_bm(rng, ctx):
    return check_improved_bm(*_pair(rng, ctx), opts=ctx.solver)


def _run_log_concavity(rng, ctx):
    return check_log_concavity(*_pair(rng, ctx), opts=ctx.solver)


def _run_mixed_volume_linearity(rng, ctx):
    return check_mixed_volume_linearity(*_bodies(rng, ctx, 3))


def _run_minkowski_first(rng, ctx):
    return check_minkowski_first(*_pair(rng, ctx))


def _run_alexandrov_fenchel(rng, ctx):
    first, second = _bodies(rng, ctx, 2)
    return check_alexandrov_fenchel(first, second, _bodies(rng, ctx, ctx.n - 2))


def _run_blaschke_compatibility(rng, ctx):
    first, second = _bodies(rng, ctx, 2)
    return check_blaschke_compatibility(first, second, _bodies(rng, ctx, ctx.n - 2))


def _run_indecomposability(rng, ctx):
    count = 3 if ctx.instance % 2 == 0 else vertex_count_for(rng, 2, (max(4, ctx.vertex_range[0]), ctx.vertex_range[1]))
    polygon = random_polytope(None, 2, count, ctx.exact, rng=rng)
    return check_indecomposability(polygon, opts=ctx.solver)


def _run_oracle_equivalence(rng, ctx):
    bodies = _bodies(rng, ctx, ctx.n - 1)
    return check_oracle_equivalence(bodies, _body(rng, ctx))


def _run_solver_round_trip(rng, ctx):
    return check_solver_round_trip(_body(rng, ctx), opts=ctx.solver)


def _run_alexandrov_decomposition(rng, ctx):
    return check_alexandrov_decomposition(random_positive_sample(rng, ctx.n, _sample_size(rng, ctx.n), ctx.exact))


def _run_polar_volume(rng, ctx):
    return check_polar_volume(random_positive_sample(rng, ctx.n, _sample_size(rng, ctx.n), ctx.exact))


def _run_derivative_lemma(rng, ctx):
    f = random_positive_sample(rng, ctx.n, _sample_size(rng, ctx.n), ctx.exact)
    return check_derivative_lemma(f, random_perturbation(rng, f))


def _run_flop_volume(rng, ctx):
    while True:
        a, b = (int(x) for x in rng.integers(0, 6, size=2))
        if a or b:
            return check_flop_volume(FlopDivisor(a, b))


def _run_volume_correspondence(rng, ctx):
    points = random_lattice_points(rng, ctx.n, ctx.n + 2)
    return check_volume_correspondence(LatticePolytope(convex_hull(points)))


CHECKS: Tuple[CheckEntry, ...] = (
    CheckEntry("brunn_minkowski", _run_brunn_minkowski),
    CheckEntry("kneser_suss", _run_kneser_suss),
    CheckEntry("diskant_bound", _run_diskant_bound),
    CheckEntry("morse", _run_morse),
    CheckEntry("reverse_kt", _run_reverse_kt),
    CheckEntry("mixed_discriminant_kt", _run_mixed_discriminant_kt, fixed=(2, 3, 4, 5)),
    CheckEntry("loomis_whitney", _run_loomis_whitney),
    CheckEntry("box_bound", _run_box_bound),
    CheckEntry("mixed_body_volume", _run_mixed_body_volume),
    CheckEntry("improved_bm", _run_improved_bm),
    CheckEntry("log_concavity", _run_log_concavity, allowed=(3, 4)),
    CheckEntry("mixed_volume_linearity", _run_mixed_volume_linearity),
    CheckEntry("minkowski_first", _run_minkowski_first),
    CheckEntry("alexandrov_fenchel", _run_alexandrov_fenchel),
    CheckEntry("blaschke_compatibility", _run_blaschke_compatibility),
    CheckEntry("indecomposability", _run_indecomposability, fixed=(2,)),
    CheckEntry("oracle_equivalence", _run_oracle_equivalence),
    CheckEntry("solver_round_trip", _run_solver_round_trip),
    CheckEntry("alexandrov_decomposition", _run_alexandrov_decomposition, allowed=(2, 3)),
    CheckEntry("polar_volume", _run_polar_volume, allowed=(2, 3)),
    CheckEntry("derivative_lemma", _run_derivative_lemma, allowed=(2, 3)),
    CheckEntry("flop_volume", _run_flop_volume, fixed=(3,)),
    CheckEntry("volume_correspondence", _run_volume_correspondence, allowed=(2, 3)),
)

CHECK_INDEX: Dict[str, int] = {entry.name: i for i, entry in enumerate(CHECKS)}


def get_check(name: str) -> CheckEntry:
    """
    Raises:
        KeyError: 未知のチェック名の場合
    """
    if name not in CHECK_INDEX:
        raise KeyError(f"未知のチェックです: {name}（利用可能: {', '.join(CHECK_INDEX)}）")
    return CHECKS[CHECK_INDEX[name]]


def instance_rng(seed: int, check_name: str, instance: int) -> np.random.Generator:
    """ジョブごとの乱数列（スケジューリングに依存しない）"""
    return np.random.default_rng([seed, CHECK_INDEX[check_name], instance])


def run_instance(
    name: str,
    seed: int,
    instance: int,
    n: int,
    exact: bool,
    vertex_range: Tuple[int, int],
    solver: SolverOptions,
) -> CheckReport:
    """チェック name のインスタンス instance を生成して評価"""
    entry = get_check(name)
    ctx = InstanceContext(n=n, exact=exact, vertex_range=vertex_range, solver=solver, instance=instance)
    return entry.run(instance_rng(seed, name, instance), ctx)
