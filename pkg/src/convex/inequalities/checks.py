"""
凸幾何の不等式チェック

各関数は 1 インスタンスを評価して CheckReport を返します。
slack >= 0 が不等式の成立を表す向きに揃えてあり、PASS 判定は
CheckReport.passed（slack >= -1e-9·max(1, |lhs|, |rhs|)）です。
恒等式のチェック（線形性・オラクル一致・両立性）は slack = -|差| とします。

ソルバーを経由するチェックは、面積の相対誤差が PASS 判定の許容量より
十分小さくなるようにソルバーの許容値を SOLVER_CHECK_TOLERANCE 以下に絞ります。
"""

import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import scipy.linalg

from src.config import env_loader
from src.config.constants import (
    DERIVATIVE_AGREEMENT_TOLERANCE,
    EXACT_EQUALITY_TOLERANCE,
    MORSE_SAMPLE_SIZE,
    SOLVER_CHECK_TOLERANCE,
    SOLVER_EQUALITY_TOLERANCE,
)
from src.convex.alexandrov.decomposition import (
    alexandrov_body,
    decompose,
    derivative_of_volume,
    polar_volume,
    volume_of_function,
)
from src.convex.core import arithmetic as ar
from src.convex.core.arithmetic import Scalar
from src.convex.core.directions import merge_directions, sphere_directions
from src.convex.core.inradius import relative_inradius
from src.convex.core.operations import (
    hausdorff_distance,
    minkowski_sum,
    project_out,
    translate_to_centroid,
)
from src.convex.core.polytope import Polytope, diameter, support_value, support_values, volume
from src.convex.exceptions import DegenerateInput, DimensionMismatch
from src.convex.inequalities.detectors import all_homothetic, detect_homothety, is_axis_box
from src.convex.inequalities.discriminant import SymmetricMatrix, mixed_discriminant
from src.convex.inequalities.report import LABEL_ANALOGUE, CheckReport
from src.convex.measures.mixed_volume import mixed_volume, mixed_volume_via_measure
from src.convex.measures.support_sample import SupportSample
from src.convex.measures.surface_measure import (
    SurfaceMeasure,
    area_measure,
    integrate,
    mixed_area_measure,
)
from src.convex.solver.constructions import blaschke_add, mixed_body
from src.convex.solver.minkowski_solver import solve_minkowski
from src.convex.solver.options import SolverOptions
from src.utils.logger import setup_logger

logger = setup_logger("checks", log_dir=env_loader.LOG_DIR + "/geometry")


# ===== 共通ヘルパー =====
def _require_full(*bodies: Polytope) -> int:
    n = bodies[0].dim
    for body in bodies:
        if body.dim != n:
            raise DimensionMismatch("物体の次元が揃っていません")
        if not body.is_full_dimensional:
            raise DegenerateInput("全次元の多面体が必要です")
    return n


def _power(value: Scalar, exponent: float) -> float:
    return max(0.0, float(value)) ** exponent


def _mixed_with(body: Polytope, other: Polytope) -> Scalar:
    """V(K^{n-1}, L) = (1/n) ∫ h_L dS(K^{n-1})"""
    value = integrate(area_measure(body), other)
    return value / body.dim


def _check_options(opts: Optional[SolverOptions]) -> SolverOptions:
    base = opts or SolverOptions()
    return base.model_copy(update={"tolerance": min(base.tolerance, SOLVER_CHECK_TOLERANCE)})


def _describe(body: Polytope) -> Dict[str, Any]:
    return {"dim": body.dim, "vertices": len(body), "volume": volume(body)}


def _identity_report(name: str, lhs: Scalar, rhs: Scalar, witnesses: Dict[str, Any]) -> CheckReport:
    difference = abs(lhs - rhs)
    scale = max(1.0, abs(float(lhs)), abs(float(rhs)))
    if isinstance(difference, Fraction):
        equality = difference == 0
    else:
        equality = float(difference) <= EXACT_EQUALITY_TOLERANCE * scale
    return CheckReport(name=name, lhs=lhs, rhs=rhs, slack=-difference, equality=equality, witnesses=witnesses)


# ===== ブルン・ミンコフスキー型 =====
def check_brunn_minkowski(first: Polytope, second: Polytope) -> CheckReport:
    """vol(K+L)^{1/n} >= vol(K)^{1/n} + vol(L)^{1/n}（等号は相似のとき）"""
    n = _require_full(first, second)
    vol_k, vol_l = volume(first), volume(second)
    vol_sum = volume(minkowski_sum(first, second))
    homothety = detect_homothety(first, second)
    return CheckReport.build(
        "brunn_minkowski",
        _power(vol_sum, 1.0 / n),
        _power(vol_k, 1.0 / n) + _power(vol_l, 1.0 / n),
        EXACT_EQUALITY_TOLERANCE,
        witnesses={
            "K": _describe(first),
            "L": _describe(second),
            "volume_sum": vol_sum,
            "homothetic": homothety.homothetic,
            "homothety_ratio": homothety.ratio,
        },
        detected=homothety.homothetic,
    )


def check_kneser_suss(first: Polytope, second: Polytope, opts: Optional[SolverOptions] = None) -> CheckReport:
    """vol(K#L)^{(n-1)/n} >= vol(K)^{(n-1)/n} + vol(L)^{(n-1)/n}"""
    n = _require_full(first, second)
    body, diagnostics = blaschke_add(first, second, _check_options(opts), return_diagnostics=True)
    exponent = (n - 1) / n
    homothety = detect_homothety(first, second)
    return CheckReport.build(
        "kneser_suss",
        _power(volume(body), exponent),
        _power(volume(first), exponent) + _power(volume(second), exponent),
        SOLVER_EQUALITY_TOLERANCE,
        witnesses={
            "K": _describe(first),
            "L": _describe(second),
            "blaschke_volume": volume(body),
            "solver": diagnostics.to_dict(),
            "homothetic": homothety.homothetic,
        },
        detected=homothety.homothetic,
    )


def check_minkowski_first(first: Polytope, second: Polytope) -> CheckReport:
    """ミンコフスキーの第一不等式 V(K^{n-1}, L)^n >= vol(K)^{n-1}·vol(L)"""
    n = _require_full(first, second)
    mixed = _mixed_with(first, second)
    vol_k, vol_l = volume(first), volume(second)
    homothety = detect_homothety(first, second)
    return CheckReport.build(
        "minkowski_first",
        mixed**n,
        vol_k ** (n - 1) * vol_l,
        EXACT_EQUALITY_TOLERANCE,
        witnesses={"mixed_volume": mixed, "homothetic": homothety.homothetic},
        detected=homothety.homothetic,
    )


def check_alexandrov_fenchel(
    first: Polytope, second: Polytope, rest: Sequence[Polytope] = ()
) -> CheckReport:
    """V(K_1, K_2, C...)² >= V(K_1, K_1, C...)·V(K_2, K_2, C...)（C は n-2 個）"""
    n = first.dim
    if len(rest) != n - 2:
        raise DimensionMismatch(f"次元 {n} では残りの物体が {n - 2} 個必要です")
    rest = list(rest)
    mixed = mixed_volume([first, second, *rest])
    own_first = mixed_volume([first, first, *rest])
    own_second = mixed_volume([second, second, *rest])
    return CheckReport.build(
        "alexandrov_fenchel",
        mixed**2,
        own_first * own_second,
        EXACT_EQUALITY_TOLERANCE,
        witnesses={"V12": mixed, "V11": own_first, "V22": own_second},
    )


# ===== 内接半径とモース不等式 =====
def check_diskant_bound(outer: Polytope, inner: Polytope) -> CheckReport:
    """r(K, L) >= vol(K) / (n·V(K^{n-1}, L))"""
    n = _require_full(outer, inner)
    radius, translation = relative_inradius(outer, inner)
    mixed = _mixed_with(outer, inner)
    return CheckReport.build(
        "diskant_bound",
        radius,
        volume(outer) / (n * mixed),
        EXACT_EQUALITY_TOLERANCE,
        witnesses={"inradius": radius, "translation": translation, "mixed_volume": mixed},
    )


def _morse_function(outer: Polytope, inner: Polytope, translation: np.ndarray) -> SupportSample:
    """f(u) = h_K(u) - h_L(u) - t·u を K, L の面法線と準一様方向の上でサンプリング"""
    n = outer.dim
    groups = [
        np.array([ar.float_array(f.normal) for f in outer.facets]),
        np.array([ar.float_array(f.normal) for f in inner.facets]),
        sphere_directions(n, MORSE_SAMPLE_SIZE),
    ]
    directions = merge_directions(groups)
    values = (
        ar.float_array(support_values(outer, directions))
        - ar.float_array(support_values(inner, directions))
        - directions @ ar.float_array(translation)
    )
    return SupportSample(directions, values)


def check_morse(outer: Polytope, inner: Polytope) -> CheckReport:
    """
    モース不等式 vol(h_K - h_L) >= vol(K) - n·V(K^{n-1}, L)

    r(K, L) > 1 の平行移動 t を正値性の証拠とし、厳密に正の代表
    f = h_K - h_L - t·u の体積を左辺とします。右辺が正なのに証拠が
    得られない場合は左辺 0 で FAIL になります。
    """
    n = _require_full(outer, inner)
    centered = translate_to_centroid(inner)
    mixed = _mixed_with(outer, centered)
    rhs = volume(outer) - n * mixed
    radius, translation = relative_inradius(outer, centered)
    witnesses: Dict[str, Any] = {
        "inradius": radius,
        "translation": translation,
        "mixed_volume": mixed,
        "positivity": bool(radius > 1),
        "vacuous": bool(rhs <= 0),
    }
    lhs: Scalar = 0.0
    if radius > 1:
        lhs = float(volume_of_function(_morse_function(outer, centered, translation)))
    elif rhs > 0:
        logger.warning(f"右辺 {float(rhs):.6e} が正ですが正値性の証拠が得られません（r = {float(radius):.6e}）")
    return CheckReport.build("morse", lhs, rhs, EXACT_EQUALITY_TOLERANCE, witnesses=witnesses)


# ===== 逆ホヴァンスキー・テシエ型 =====
def _kt_factor(n: int, k: int) -> Fraction:
    if not 1 <= k <= n - 1:
        raise DimensionMismatch(f"k は 1..{n - 1} の範囲である必要があります: {k}")
    return Fraction(math.factorial(k) * math.factorial(n - k), math.factorial(n))


def check_reverse_kt(first: Polytope, middle: Polytope, last: Polytope, k: int) -> CheckReport:
    """
    V(K^k, L^{n-k})·V(L^k, M^{n-k}) >= (k!(n-k)!/n!)·vol(L)·V(K^k, M^{n-k})

    witnesses["ratio"] は lhs / (vol(L)·V(K^k, M^{n-k}))（定数 k!(n-k)!/n! との比較用）。
    """
    n = _require_full(first, middle, last)
    factor = _kt_factor(n, k)
    v_kl = mixed_volume([first] * k + [middle] * (n - k))
    v_lm = mixed_volume([middle] * k + [last] * (n - k))
    v_km = mixed_volume([first] * k + [last] * (n - k))
    vol_l = volume(middle)
    lhs = v_kl * v_lm
    denominator = vol_l * v_km
    ratio = float(lhs) / float(denominator) if denominator else float("inf")
    return CheckReport.build(
        "reverse_kt",
        lhs,
        factor * denominator,
        EXACT_EQUALITY_TOLERANCE,
        witnesses={
            "k": k,
            "factor": factor,
            "V_KL": v_kl,
            "V_LM": v_lm,
            "V_KM": v_km,
            "ratio": ratio,
            "within_half_again": ratio <= 1.5 * float(factor),
        },
    )


def check_mixed_discriminant_kt(
    first: SymmetricMatrix, middle: SymmetricMatrix, last: SymmetricMatrix, k: int
) -> CheckReport:
    """D(A^k, B^{n-k})·D(B^k, C^{n-k}) >= (k!(n-k)!/n!)·det(B)·D(A^k, C^{n-k})"""
    n = first.dim
    if middle.dim != n or last.dim != n:
        raise DimensionMismatch("行列の次元が揃っていません")
    for matrix in (first, middle, last):
        matrix.require_positive_definite()
    factor = _kt_factor(n, k)
    d_ab = mixed_discriminant([first] * k + [middle] * (n - k))
    d_bc = mixed_discriminant([middle] * k + [last] * (n - k))
    d_ac = mixed_discriminant([first] * k + [last] * (n - k))
    det_b = middle.determinant()
    return CheckReport.build(
        "mixed_discriminant_kt",
        d_ab * d_bc,
        factor * det_b * d_ac,
        EXACT_EQUALITY_TOLERANCE,
        witnesses={"k": k, "factor": factor, "D_AB": d_ab, "D_BC": d_bc, "D_AC": d_ac, "det_B": det_b},
    )


# ===== 射影と直方体 =====
def check_loomis_whitney(body: Polytope) -> CheckReport:
    """vol(K)^{n-1} <= Π_j vol(π_j(K))（等号は座標軸に平行な直方体）"""
    n = _require_full(body)
    shadows = [volume(project_out(body, j)) for j in range(n)]
    product: Scalar = Fraction(1) if body.is_exact else 1.0
    for shadow in shadows:
        product = product * shadow
    box = is_axis_box(body)
    return CheckReport.build(
        "loomis_whitney",
        product,
        volume(body) ** (n - 1),
        EXACT_EQUALITY_TOLERANCE,
        witnesses={"projections": shadows, "axis_box": box},
        detected=box,
    )


def check_box_bound(body: Polytope) -> CheckReport:
    """vol(K) <= Π_i (h_K(e_i) + h_K(-e_i))（等号は座標軸に平行な直方体）"""
    n = _require_full(body)
    widths = []
    for i in range(n):
        axis = ar.as_mode([1 if j == i else 0 for j in range(n)], body.is_exact)
        widths.append(support_value(body, axis) + support_value(body, -axis))
    product: Scalar = Fraction(1) if body.is_exact else 1.0
    for width in widths:
        product = product * width
    box = is_axis_box(body)
    return CheckReport.build(
        "box_bound",
        product,
        volume(body),
        EXACT_EQUALITY_TOLERANCE,
        witnesses={"widths": widths, "axis_box": box},
        detected=box,
        label=LABEL_ANALOGUE,
    )


# ===== 混合体 =====
def check_mixed_body_volume(bodies: Sequence[Polytope], opts: Optional[SolverOptions] = None) -> CheckReport:
    """vol([K_1, ..., K_{n-1}])^{n-1} >= Π vol(K_i)"""
    n = _require_full(*bodies)
    body, diagnostics = mixed_body(bodies, _check_options(opts), return_diagnostics=True)
    product: Scalar = 1.0
    for item in bodies:
        product *= float(volume(item))
    homothetic = all_homothetic(bodies)
    return CheckReport.build(
        "mixed_body_volume",
        float(volume(body)) ** (n - 1),
        product,
        SOLVER_EQUALITY_TOLERANCE,
        witnesses={"mixed_body_volume": volume(body), "solver": diagnostics.to_dict(), "homothetic": homothetic},
        label=LABEL_ANALOGUE,
        detected=homothetic,
    )


def mixed_body_volumes(
    first: Polytope, second: Polytope, opts: Optional[SolverOptions] = None
) -> List[float]:
    """
    列 vol([K, L]_i), i = 0..n-1（[K, L]_i = [K^{n-1-i}, L^i]）

    端点 [K, L]_0 = K と [K, L]_{n-1} = L はソルバーを通さずに入力の体積を使います。
    """
    n = _require_full(first, second)
    options = _check_options(opts)
    volumes = [float(volume(first))]
    for i in range(1, n - 1):
        body = mixed_body([first] * (n - 1 - i) + [second] * i, options)
        volumes.append(float(volume(body)))
    volumes.append(float(volume(second)))
    return volumes


def check_improved_bm(first: Polytope, second: Polytope, opts: Optional[SolverOptions] = None) -> CheckReport:
    """
    vol(K+L)^{1/n} >= (Σ_i C(n-1,i)·vol([K,L]_i)^{(n-1)/n})^{1/(n-1)} >= vol(K)^{1/n} + vol(L)^{1/n}

    lhs, rhs は連鎖の両端、slack は 2 つの段の slack の小さい方です。
    n = 2 では 2 段目は恒等式（planar_identity）。
    """
    n = _require_full(first, second)
    volumes = mixed_body_volumes(first, second, opts)
    exponent = (n - 1) / n
    middle = sum(math.comb(n - 1, i) * _power(v, exponent) for i, v in enumerate(volumes)) ** (1.0 / (n - 1))
    top = _power(volume(minkowski_sum(first, second)), 1.0 / n)
    bottom = _power(volume(first), 1.0 / n) + _power(volume(second), 1.0 / n)
    upper = CheckReport.build("improved_bm_upper", top, middle, SOLVER_EQUALITY_TOLERANCE)
    lower = CheckReport.build("improved_bm_lower", middle, bottom, SOLVER_EQUALITY_TOLERANCE)
    planar = n == 2
    homothetic = detect_homothety(first, second).homothetic
    slack = upper.slack if planar else min(upper.slack, lower.slack)
    equality = upper.equality and (planar or lower.equality) and homothetic
    return CheckReport(
        name="improved_bm",
        lhs=top,
        rhs=bottom,
        slack=slack,
        equality=equality,
        witnesses={
            "middle": middle,
            "mixed_body_volumes": volumes,
            "upper_slack": upper.slack,
            "lower_slack": lower.slack,
            "upper_equality": upper.equality,
            "lower_equality": True if planar else lower.equality,
            "planar_identity": planar,
            "worst_link": "upper" if planar or upper.slack <= lower.slack else "lower",
            "homothetic": homothetic,
        },
        label=LABEL_ANALOGUE,
    )


def check_log_concavity(first: Polytope, second: Polytope, opts: Optional[SolverOptions] = None) -> CheckReport:
    """
    vol([K,L]_i)² >= vol([K,L]_{i-1})·vol([K,L]_{i+1})（n >= 3）

    lhs, rhs, slack は相対 slack が最小の三つ組のものです。
    """
    n = _require_full(first, second)
    if n < 3:
        raise DimensionMismatch("対数凹性の列は n >= 3 で意味を持ちます")
    volumes = mixed_body_volumes(first, second, opts)
    triples = [
        CheckReport.build(
            "log_concavity", volumes[i] ** 2, volumes[i - 1] * volumes[i + 1], SOLVER_EQUALITY_TOLERANCE
        )
        for i in range(1, n - 1)
    ]
    worst = min(triples, key=lambda r: float(r.slack) / max(1.0, abs(float(r.lhs)), abs(float(r.rhs))))
    homothetic = detect_homothety(first, second).homothetic
    worst.equality = all(r.equality for r in triples) and homothetic
    worst.witnesses = {
        "volumes": volumes,
        "slacks": [r.slack for r in triples],
        "homothetic": homothetic,
    }
    worst.label = LABEL_ANALOGUE
    return worst


# ===== 恒等式 =====
def check_mixed_volume_linearity(body: Polytope, first: Polytope, second: Polytope) -> CheckReport:
    """V(K^{n-1}, L_1 + L_2) = V(K^{n-1}, L_1) + V(K^{n-1}, L_2)（分極公式で計算）"""
    n = body.dim
    if first.dim != n or second.dim != n:
        raise DimensionMismatch("物体の次元が揃っていません")
    combined = minkowski_sum(first, second)
    lhs = mixed_volume([body] * (n - 1) + [combined])
    v_first = mixed_volume([body] * (n - 1) + [first])
    v_second = mixed_volume([body] * (n - 1) + [second])
    return _identity_report(
        "mixed_volume_linearity",
        lhs,
        v_first + v_second,
        {"V_first": v_first, "V_second": v_second},
    )


def check_oracle_equivalence(bodies: Sequence[Polytope], function: Polytope) -> CheckReport:
    """分極公式の混合体積と混合面積測度による混合体積の一致"""
    polarized = mixed_volume([*bodies, function])
    via_measure = mixed_volume_via_measure(bodies, function)
    return _identity_report(
        "oracle_equivalence",
        polarized,
        via_measure,
        {"polarization": polarized, "measure": via_measure},
    )


def _measure_gap(left: SurfaceMeasure, right: SurfaceMeasure) -> Scalar:
    """Σ_u |w_left(u) - w_right(u)|（原子ごとの面積ベクトルの差のノルム和）"""
    exact = left.is_exact and right.is_exact
    total: Any = Fraction(0) if exact else 0.0
    matched = set()
    right_index = right.index()
    for w in left.area_vectors:
        k = right_index.find(w)
        other = right.area_vectors[k] if k is not None else ar.zeros(left.dim, exact)
        if k is not None:
            matched.add(k)
        total = total + ar.norm(w - other)
    for k, w in enumerate(right.area_vectors):
        if k not in matched:
            total = total + ar.norm(w)
    return total


def check_blaschke_compatibility(
    first: Polytope, second: Polytope, others: Sequence[Polytope] = ()
) -> CheckReport:
    """
    [K+L, D_2, ...] = [K, D_2, ...] # [L, D_2, ...] を面積測度で確認

    S(K+L, D; ·) = S(K, D; ·) + S(L, D; ·)（混合面積測度の第一引数についての線形性）。
    """
    others = list(others)
    n = first.dim
    if len(others) != n - 2:
        raise DimensionMismatch(f"次元 {n} では他の物体が {n - 2} 個必要です")
    left = mixed_area_measure([minkowski_sum(first, second), *others])
    right = mixed_area_measure([first, *others]) + mixed_area_measure([second, *others])
    gap = _measure_gap(left, right)
    report = _identity_report(
        "blaschke_compatibility",
        left.total_weight(),
        right.total_weight(),
        {"measure_gap": gap, "atoms": len(left)},
    )
    report.slack = -gap
    report.equality = gap == 0 if isinstance(gap, Fraction) else float(gap) <= EXACT_EQUALITY_TOLERANCE * max(
        1.0, left.total_weight()
    )
    report.label = LABEL_ANALOGUE
    return report


def check_indecomposability(
    polygon: Polytope, fraction: Scalar = Fraction(1, 3), opts: Optional[SolverOptions] = None
) -> CheckReport:
    """
    平面の多角形の分解不能性: 三角形だけが非自明な和に分解できない

    面積測度 μ を重心 0 の正値測度 μ_1 + μ_2 に分け、それぞれをソルバーで
    多角形 M, D に戻します。三角形では重心 0 の測度の空間が 1 次元なので
    μ_1 = fraction·μ しかなく M, D は必ず相似です。辺が 4 本以上なら
    零空間の別方向に沿って分け、相似でない和因子を作ります。

    三角形は lhs = 許容量, rhs = 相似残差、それ以外は lhs = 相似残差, rhs = 許容量。
    """
    if polygon.dim != 2:
        raise DimensionMismatch("分解不能性のチェックは平面の多角形が対象です")
    _require_full(polygon)
    measure = area_measure(polygon)
    vectors = ar.float_array(measure.area_vectors)
    weights = np.linalg.norm(vectors, axis=1)
    normals = vectors / weights[:, None]
    null = scipy.linalg.null_space(normals.T)
    nullity = int(null.shape[1])
    share = float(fraction)
    if nullity <= 1:
        part = measure.scaled(fraction)
        rest = measure.scaled(1 - fraction)
    else:
        # 重み方向と直交する零空間の成分で分ける
        residues = null - np.outer(weights, weights @ null) / (weights @ weights)
        direction = residues[:, int(np.argmax(np.linalg.norm(residues, axis=0)))]
        limits = [
            min(share, 1 - share) * w / abs(z) for w, z in zip(weights, direction) if abs(z) > 1e-12
        ]
        epsilon = 0.5 * min(limits)
        part = SurfaceMeasure.from_atoms(normals, share * weights + epsilon * direction)
        rest = SurfaceMeasure.from_atoms(normals, (1 - share) * weights - epsilon * direction)
    options = _check_options(opts)
    summand_m, _ = solve_minkowski(part, options)
    summand_d, _ = solve_minkowski(rest, options)
    residual = max(
        detect_homothety(polygon, summand_m, SOLVER_EQUALITY_TOLERANCE).residual,
        detect_homothety(polygon, summand_d, SOLVER_EQUALITY_TOLERANCE).residual,
    )
    triangle = nullity <= 1
    lhs, rhs = (SOLVER_EQUALITY_TOLERANCE, residual) if triangle else (residual, SOLVER_EQUALITY_TOLERANCE)
    return CheckReport.build(
        "indecomposability",
        lhs,
        rhs,
        0.0,
        witnesses={"edges": len(measure), "nullity": nullity, "homothety_residual": residual, "triangle": triangle},
    )


# ===== ソルバー・アレクサンドロフ =====
def check_solver_round_trip(body: Polytope, opts: Optional[SolverOptions] = None) -> CheckReport:
    """solve_minkowski(area_measure(P)) ≈ P（平行移動を除き、ハウスドルフ距離 <= 1e-6·diam）"""
    _require_full(body)
    solved, diagnostics = solve_minkowski(area_measure(body), opts)
    distance = hausdorff_distance(translate_to_centroid(body), solved)
    bound = SOLVER_EQUALITY_TOLERANCE * diameter(body)
    return CheckReport.build(
        "solver_round_trip",
        bound,
        distance,
        0.0,
        witnesses={"hausdorff": distance, "diameter": diameter(body), "solver": diagnostics.to_dict()},
    )


def check_alexandrov_decomposition(f: SupportSample) -> CheckReport:
    """
    分解 f = P(f) + N(f) の性質: 直交性、N(f) >= 0、冪等性 decompose(P(f)) の N ≡ 0

    lhs = 許容量, rhs = |直交性欠損|、slack には N(f) の最小値と冪等性も反映します。
    """
    result = decompose(f)
    scale = max(1.0, f.max_abs())
    minimum = min(float(v) for v in result.negative_part.values)
    again = decompose(result.positive_part)
    idempotent = again.negative_part.max_abs() <= 1e-12 * scale and hausdorff_distance(
        result.body, again.body
    ) <= 1e-12 * scale
    defect = abs(result.orthogonality_defect)
    slack = min(float(result.tolerance - defect), minimum + 1e-12 * scale, 0.0 if idempotent else -scale)
    return CheckReport(
        name="alexandrov_decomposition",
        lhs=result.tolerance,
        rhs=defect,
        slack=slack,
        equality=defect == 0,
        witnesses={
            "directions": len(f),
            "orthogonality_defect": result.orthogonality_defect,
            "min_negative_part": minimum,
            "idempotent": idempotent,
            "volume": volume(result.body),
        },
    )


def check_polar_volume(f: SupportSample, candidates: Sequence[Polytope] = ()) -> CheckReport:
    """候補上の極体積の最小値が vol(P(f)) と一致し、アレクサンドロフ体で達成されること"""
    body = alexandrov_body(f)
    minimum, minimizer = polar_volume(f, [*candidates, body])
    own = volume_of_function(f)
    report = _identity_report(
        "polar_volume",
        minimum,
        own,
        {"candidates": len(candidates) + 1, "minimizer_volume": volume(minimizer)},
    )
    report.label = LABEL_ANALOGUE
    return report


def check_derivative_lemma(f: SupportSample, g: SupportSample) -> CheckReport:
    """d/dt|₀ vol(f + t·g) = ∫ g dS(P(f)^{n-1}) の解析値と中心差分の一致（相対 1e-3）"""
    analytic, numeric = derivative_of_volume(f, g)
    bound = DERIVATIVE_AGREEMENT_TOLERANCE * max(1.0, abs(float(analytic)))
    difference = abs(float(analytic) - numeric)
    return CheckReport.build(
        "derivative_lemma",
        bound,
        difference,
        0.0,
        witnesses={"analytic": analytic, "numeric": numeric},
    )

