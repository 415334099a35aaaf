"""
ミンコフスキーソルバーの上に立つ構成: ブラシュケ和と混合体
"""

from typing import Optional, Sequence, Tuple, Union

from src.convex.core.polytope import Polytope
from src.convex.exceptions import DegenerateInput, DimensionMismatch
from src.convex.measures.surface_measure import area_measure, mixed_area_measure
from src.convex.solver.minkowski_solver import solve_minkowski
from src.convex.solver.options import SolveDiagnostics, SolverOptions

SolveResult = Union[Polytope, Tuple[Polytope, SolveDiagnostics]]


def blaschke_add(
    first: Polytope,
    second: Polytope,
    opts: Optional[SolverOptions] = None,
    return_diagnostics: bool = False,
) -> SolveResult:
    """
    ブラシュケ和 K # L: S(M^{n-1}) = S(K^{n-1}) + S(L^{n-1}) となる M

    同じ法線の原子は重みを合算してからソルバーに渡します。

    Raises:
        DimensionMismatch: 次元が異なる場合
        DegenerateInput: どちらかが全次元でない場合
        NoConvergence: ソルバーが収束しない場合
    """
    if first.dim != second.dim:
        raise DimensionMismatch("ブラシュケ和の2つの物体の次元が異なります")
    if not (first.is_full_dimensional and second.is_full_dimensional):
        raise DegenerateInput("ブラシュケ和には全次元の物体が必要です")
    body, diagnostics = solve_minkowski(area_measure(first) + area_measure(second), opts)
    return (body, diagnostics) if return_diagnostics else body


def mixed_body(
    bodies: Sequence[Polytope],
    opts: Optional[SolverOptions] = None,
    return_diagnostics: bool = False,
) -> SolveResult:
    """
    混合体 [K_1, ..., K_{n-1}]: 面積測度が混合面積測度 S(K_1, ..., K_{n-1}; ·) に一致する物体

    Raises:
        DimensionMismatch: 物体が n-1 個でない場合
        GreatSubsphere: 混合面積測度の法線が ℝⁿ を張らない場合
        NoConvergence: ソルバーが収束しない場合
    """
    body, diagnostics = solve_minkowski(mixed_area_measure(bodies), opts)
    return (body, diagnostics) if return_diagnostics else body
