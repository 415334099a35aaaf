"""
相対内接半径 r(K, L) = max{λ : λL + t ⊆ K となる t が存在}

K の面制約 a_i·x <= b_i に対する線形計画
    maximize λ  subject to  λ·h_L(a_i) + a_i·t <= b_i
として解きます（多面体への包含は有限個の面制約で正確に表される）。
厳密モードでは HiGHS の最適解から基底を取り出し、有理数で主・双対の
実行可能性を確認して最適性を証明します。
"""

import itertools
from fractions import Fraction
from typing import Any, List, Optional, Tuple

import numpy as np
from scipy.optimize import linprog

from src.config import env_loader
from src.config.constants import ACTIVE_CONSTRAINT_TOLERANCE
from src.convex.core import arithmetic as ar
from src.convex.core.polytope import Polytope, support_values
from src.convex.exceptions import DegenerateInput, DimensionMismatch, NumericalResidue
from src.utils.logger import setup_logger

logger = setup_logger("inradius", log_dir=env_loader.LOG_DIR + "/geometry")

_MAX_BASIS_CANDIDATES = 500


def relative_inradius(outer: Polytope, inner: Polytope) -> Tuple[Any, np.ndarray]:
    """
    K に対する L の相対内接半径と平行移動の証拠

    Args:
        outer: K（全次元）
        inner: L（全次元）

    Returns:
        (r, t): scale_translate(L, r, t) ⊆ K を満たす最大の r とその t。
        両方が厳密モードで最適基底を証明できた場合は Fraction と有理数ベクトル。

    Raises:
        DegenerateInput: K または L が全次元でない場合

    Example:
        >>> r, t = relative_inradius(square, diamond)
        >>> r
        Fraction(1, 1)
    """
    if outer.dim != inner.dim:
        raise DimensionMismatch(f"次元が一致しません: {outer.dim} と {inner.dim}")
    if not (outer.is_full_dimensional and inner.is_full_dimensional):
        raise DegenerateInput("相対内接半径には全次元の多面体が必要です")

    n = outer.dim
    exact = outer.is_exact and inner.is_exact
    normals = np.array([f.raw_normal for f in outer.facets], dtype=object if exact else float)
    bounds = np.array([f.raw_offset for f in outer.facets], dtype=object if exact else float)
    if not exact:
        normals, bounds = ar.float_array(normals), ar.float_array(bounds)
    inner_support = support_values(inner, normals)

    # 変数 x = (λ, t_1..t_n)
    matrix = np.empty((len(bounds), n + 1), dtype=object if exact else float)
    matrix[:, 0] = inner_support
    matrix[:, 1:] = normals
    fm, fb = ar.float_array(matrix), ar.float_array(bounds)

    cost = np.zeros(n + 1)
    cost[0] = -1.0
    result = linprog(
        c=cost,
        A_ub=fm,
        b_ub=fb,
        bounds=[(0, None)] + [(None, None)] * n,
        method="highs",
    )
    if result.status != 0:
        raise NumericalResidue(f"内接半径の線形計画が失敗しました: {result.message}")
    float_solution = result.x
    if not exact:
        return float(float_solution[0]), float_solution[1:].copy()

    certified = _certify(matrix, bounds, fm, fb, float_solution)
    if certified is None:
        logger.warning("内接半径の厳密な最適基底を構成できなかったため浮動小数点解を返します")
        return float(float_solution[0]), float_solution[1:].copy()
    return certified[0], certified[1:].copy()


def _certify(
    matrix: np.ndarray,
    bounds: np.ndarray,
    fm: np.ndarray,
    fb: np.ndarray,
    point: np.ndarray,
) -> Optional[np.ndarray]:
    """活性制約の基底を厳密に解き、主・双対実行可能なら解を返す"""
    size = matrix.shape[1]
    scale = max(1.0, float(np.abs(fb).max()), float(np.abs(fm).max()) * float(np.abs(point).max()))
    slack = fb - fm @ point
    order = [int(i) for i in np.argsort(slack)]
    active = [i for i in order if slack[i] <= ACTIVE_CONSTRAINT_TOLERANCE * scale]
    objective = ar.zeros(size, True)
    objective[0] = Fraction(1)

    for attempt, rows in enumerate(_bases(fm, active, size)):
        if attempt >= _MAX_BASIS_CANDIDATES:
            break
        basis = matrix[list(rows)]
        solution = ar.solve(basis, bounds[list(rows)])
        if solution is None:
            continue
        values = matrix @ solution
        if any(values[i] > bounds[i] for i in range(len(bounds))):
            continue
        duals = ar.solve(basis.T.copy(), objective)
        if duals is None or any(y < 0 for y in duals):
            continue
        return solution
    return None


def _bases(fm: np.ndarray, active: List[int], size: int):
    if len(active) < size:
        return
    for rows in itertools.combinations(active, size):
        if np.linalg.matrix_rank(fm[list(rows)]) == size:
            yield rows
