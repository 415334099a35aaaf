"""
ミンコフスキー問題のソルバーとその構成（ブラシュケ和・混合体）
"""

from src.convex.solver.constructions import blaschke_add, mixed_body
from src.convex.solver.minkowski_solver import MinkowskiSolver, solve_minkowski
from src.convex.solver.options import SolveDiagnostics, SolverOptions

__all__ = [
    "MinkowskiSolver",
    "SolveDiagnostics",
    "SolverOptions",
    "blaschke_add",
    "mixed_body",
    "solve_minkowski",
]
