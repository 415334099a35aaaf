"""
ミンコフスキーの存在定理の数値解法（多面体版）

目標測度 f = Σ f_i δ_{u_i} に対し、支持数 h ∈ ℝ^N の多面体
P(h) = {x : x·u_i <= h_i} について凸関数

    G(h) = Σ f_i h_i - S·log vol(P(h)),   S = Σ f_i

を減衰ニュートン法で最小化します。停留点では S·F_i(h)/vol = f_i
（F_i は面 i の面積）となり、最後に τ = (S/vol)^{1/(n-1)} 倍すると
面積が目標に一致します。平行移動の自由度は U Uᵀ 方向の正則化で除きます。
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.config import env_loader
from src.config.constants import (
    SOLVER_JACOBIAN_STEP,
    SOLVER_LEVENBERG_FACTOR,
    SOLVER_MAX_HALVINGS,
    SOLVER_MIN_FACET_RATIO,
    SOLVER_VOLUME_RATIO_BOUNDS,
)
from src.convex.core import arithmetic as ar
from src.convex.core.hull import halfspace_intersection, intersect_with_interior
from src.convex.core.operations import scale_translate, translate_to_centroid
from src.convex.core.polytope import (
    HalfspaceSystem,
    Polytope,
    support_value,
    vertex_centroid,
    volume,
)
from src.convex.exceptions import (
    CentroidNonzero,
    DegenerateInput,
    EmptyPolytope,
    GreatSubsphere,
    NoConvergence,
    NumericalResidue,
    Unbounded,
)
from src.convex.measures.surface_measure import SurfaceMeasure, area_measure, centroid_defect
from src.convex.solver.options import SolveDiagnostics, SolverOptions
from src.utils.logger import setup_logger

logger = setup_logger("minkowski_solver", log_dir=env_loader.LOG_DIR + "/solver")

# 初期多面体で欠けている面を作るための切り込み量（幅に対する比）
_INITIAL_CUT_RATIO = 0.05
_INITIAL_CUT_ROUNDS = 20
# アルミホ条件の係数
_ARMIJO = 1e-4
_ARMIJO_SLACK = 1e-12


@dataclass
class _State:
    support: np.ndarray
    body: Polytope
    areas: np.ndarray
    volume: float
    objective: float


class MinkowskiSolver:
    """
    目標測度ごとのソルバー

    Example:
        >>> solver = MinkowskiSolver(area_measure(triangle), SolverOptions())
        >>> body, diagnostics = solver.solve()
    """

    def __init__(self, target: SurfaceMeasure, opts: Optional[SolverOptions] = None) -> None:
        self.opts = opts or SolverOptions()
        self.dim = target.dim
        if len(target) == 0 or not target.spans():
            raise GreatSubsphere("目標測度の法線が ℝⁿ を張りません（大部分球面に集中しています）")
        vectors = ar.float_array(target.area_vectors)
        self.weights = np.linalg.norm(vectors, axis=1)
        self.normals = vectors / self.weights[:, None]
        self.total = float(self.weights.sum())
        defect = float(np.linalg.norm(ar.float_array(centroid_defect(target))))
        if defect > self.opts.centroid_tolerance * self.total:
            raise CentroidNonzero(
                f"目標測度の重心欠損 {defect:.3e} が許容量 {self.opts.centroid_tolerance * self.total:.3e} を超えています"
            )
        gram = self.normals.T @ self.normals
        self._translations = self.normals @ np.linalg.solve(gram, self.normals.T)

    # ===== 評価 =====
    def _evaluate(self, support: np.ndarray, hint: Optional[np.ndarray] = None) -> Optional[_State]:
        body = self._intersect(support, hint)
        if body is None:
            return None
        areas = np.zeros(len(self.weights))
        for facet in body.facets:
            k = int(np.argmax(self.normals @ ar.float_array(facet.normal)))
            areas[k] += float(facet.measure)
        vol = float(volume(body))
        if not np.isfinite(vol) or vol <= 0.0:
            return None
        objective = float(self.weights @ support) - self.total * float(np.log(vol))
        return _State(support=support, body=body, areas=areas, volume=vol, objective=objective)

    def _intersect(self, support: np.ndarray, hint: Optional[np.ndarray]) -> Optional[Polytope]:
        try:
            if hint is not None:
                slack = support - self.normals @ hint
                if slack.min() > 1e-9 * max(1.0, float(np.abs(support).max())):
                    return intersect_with_interior(self.normals, support, hint)
            return halfspace_intersection(HalfspaceSystem(self.normals, support))
        except (EmptyPolytope, DegenerateInput, Unbounded, NumericalResidue):
            return None

    def relative_error(self, state: _State) -> float:
        """スケール補正後の面積の最大相対誤差"""
        achieved = self.total * state.areas / state.volume
        return float(np.max(np.abs(achieved - self.weights) / self.weights))

    # ===== 初期化 =====
    def _initial_state(self) -> _State:
        support = np.ones(len(self.weights))
        state = self._evaluate(support)
        if state is None:
            raise NoConvergence("初期多面体 {x·u_i <= 1} を構成できません", SolveDiagnostics())
        for _ in range(_INITIAL_CUT_ROUNDS):
            missing = np.nonzero(state.areas <= SOLVER_MIN_FACET_RATIO * state.areas.max())[0]
            if len(missing) == 0:
                break
            support = state.support.copy()
            for k in missing:
                top = support_value(state.body, self.normals[k])
                bottom = -support_value(state.body, -self.normals[k])
                support[k] = float(top) - _INITIAL_CUT_RATIO * float(top - bottom)
            candidate = self._evaluate(support)
            if candidate is None:
                break
            state = candidate
        # t = ΣF/vol で S·ΣF/vol = S になる（h を t 倍すると ΣF/vol は 1/t 倍）
        scale = float(state.areas.sum()) / state.volume
        scaled = self._evaluate(state.support * scale, ar.float_array(vertex_centroid(state.body)) * scale)
        return scaled if scaled is not None else state

    # ===== ニュートン法 =====
    def _newton_direction(self, state: _State) -> Tuple[np.ndarray, np.ndarray]:
        count = len(self.weights)
        delta = SOLVER_JACOBIAN_STEP * max(float(np.abs(state.support).max()), 1e-12)
        hint = ar.float_array(vertex_centroid(state.body))
        jacobian = np.zeros((count, count))
        for j in range(count):
            shifted = state.support.copy()
            shifted[j] += delta
            moved = self._evaluate(shifted, hint)
            if moved is None:
                shifted[j] -= 2 * delta
                moved = self._evaluate(shifted, hint)
                if moved is None:
                    raise NoConvergence("ヤコビアンの差分評価で多面体が構成できません", SolveDiagnostics())
                jacobian[:, j] = (state.areas - moved.areas) / delta
            else:
                jacobian[:, j] = (moved.areas - state.areas) / delta
        jacobian = 0.5 * (jacobian + jacobian.T)

        areas, vol = state.areas, state.volume
        gradient = self.weights - self.total * areas / vol
        hessian = -self.total * (jacobian / vol - np.outer(areas, areas) / vol**2)
        trace = max(float(np.trace(hessian)), 1e-300)
        hessian = hessian + (trace / count) * self._translations
        hessian = hessian + SOLVER_LEVENBERG_FACTOR * trace * np.eye(count)
        direction = -np.linalg.solve(hessian, gradient)
        return direction, gradient

    def _line_search(self, state: _State, direction: np.ndarray, gradient: np.ndarray) -> Tuple[_State, int]:
        step = self.opts.damping
        slope = float(gradient @ direction)
        present = state.areas > SOLVER_MIN_FACET_RATIO * state.areas.max()
        hint = ar.float_array(vertex_centroid(state.body))
        low, high = SOLVER_VOLUME_RATIO_BOUNDS
        for halving in range(SOLVER_MAX_HALVINGS):
            candidate = self._evaluate(state.support + step * direction, hint)
            if candidate is not None:
                threshold = SOLVER_MIN_FACET_RATIO * candidate.areas.max()
                ratio = candidate.volume / state.volume
                decrease = state.objective + _ARMIJO * step * slope + _ARMIJO_SLACK * max(1.0, abs(state.objective))
                if (
                    np.all(candidate.areas[present] > threshold)
                    and low <= ratio <= high
                    and candidate.objective <= decrease
                ):
                    return candidate, halving
            step *= 0.5
        raise NoConvergence(f"直線探索が {SOLVER_MAX_HALVINGS} 回の半減で失敗しました", SolveDiagnostics())

    def solve(self) -> Tuple[Polytope, SolveDiagnostics]:
        """
        ソルバーを実行

        Returns:
            (頂点重心が原点の多面体, 診断情報)

        Raises:
            NoConvergence: 反復上限・直線探索の失敗・面の消失
        """
        diagnostics = SolveDiagnostics()
        try:
            state = self._initial_state()
            error = self.relative_error(state)
            for iteration in range(self.opts.max_iterations + 1):
                error = self.relative_error(state)
                diagnostics.error_history.append(error)
                logger.debug(f"反復 {iteration}: 相対誤差 {error:.3e}, 体積 {state.volume:.6e}")
                if error <= self.opts.tolerance:
                    diagnostics.iterations = iteration
                    return self._finalize(state, error, diagnostics)
                if iteration == self.opts.max_iterations:
                    break
                direction, gradient = self._newton_direction(state)
                state, halvings = self._line_search(state, direction, gradient)
                diagnostics.halvings += halvings
        except NoConvergence as e:
            diagnostics.max_relative_error = diagnostics.error_history[-1] if diagnostics.error_history else float("inf")
            diagnostics.iterations = max(0, len(diagnostics.error_history) - 1)
            logger.warning(f"ソルバーが収束しませんでした: {e}")
            raise NoConvergence(str(e), diagnostics) from e

        diagnostics.iterations = self.opts.max_iterations
        diagnostics.max_relative_error = error
        logger.warning(
            f"ソルバーが {self.opts.max_iterations} 回で収束しませんでした（相対誤差 {error:.3e}）"
        )
        raise NoConvergence(
            f"{self.opts.max_iterations} 回の反復で相対誤差 {error:.3e} が許容値 {self.opts.tolerance:.1e} に達しませんでした",
            diagnostics,
        )

    def _finalize(self, state: _State, error: float, diagnostics: SolveDiagnostics) -> Tuple[Polytope, SolveDiagnostics]:
        tau = (self.total / state.volume) ** (1.0 / (self.dim - 1))
        body = translate_to_centroid(scale_translate(state.body, tau))
        achieved = area_measure(body)
        if len(achieved) < len(self.weights):
            diagnostics.max_relative_error = error
            raise NoConvergence("収束時に目標法線の面が消失しています", diagnostics)
        diagnostics.converged = True
        diagnostics.max_relative_error = error
        diagnostics.centroid_defect = float(np.linalg.norm(ar.float_array(centroid_defect(achieved))))
        diagnostics.final_volume = float(volume(body))
        logger.info(
            f"ソルバー収束: 反復 {diagnostics.iterations}, 相対誤差 {error:.2e}, 面数 {len(self.weights)}"
        )
        return body, diagnostics


def solve_minkowski(
    target: SurfaceMeasure, opts: Optional[SolverOptions] = None
) -> Tuple[Polytope, SolveDiagnostics]:
    """
    面積測度が target に一致する多面体（平行移動を除いて一意）

    Args:
        target: 重心が 0 で法線が ℝⁿ を張る正値測度
        opts: ソルバー設定

    Returns:
        (頂点重心が原点の多面体, 診断情報)

    Raises:
        GreatSubsphere: 法線が ℝⁿ を張らない場合
        CentroidNonzero: 重心欠損が許容量を超える場合
        NoConvergence: 収束しない場合（diagnostics 付き）
    """
    return MinkowskiSolver(target, opts).solve()
