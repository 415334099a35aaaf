"""ミンコフスキーソルバー・ブラシュケ和・混合体のテスト"""

from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from src.cli.services.random_polytope import random_polytope
from src.convex.core import arithmetic as ar
from src.convex.core.hull import convex_hull, halfspace_intersection
from src.convex.core.operations import hausdorff_distance, minkowski_sum, scale_translate, translate_to_centroid
from src.convex.core.polytope import HalfspaceSystem, diameter, volume
from src.convex.exceptions import CentroidNonzero, DimensionMismatch, GreatSubsphere, NoConvergence
from src.convex.measures import SurfaceMeasure, area_measure
from src.convex.solver import SolverOptions, blaschke_add, mixed_body, solve_minkowski
from tests.conftest import box

_PENTAGON = [[0, 0], [4, 0], [5, 2], [2, 5], [-1, 3]]


def _close(first, second, tol=1e-6):
    """重心をそろえたハウスドルフ距離が小さいか"""
    return hausdorff_distance(translate_to_centroid(first), translate_to_centroid(second)) < tol


def test_options_validation():
    opts = SolverOptions(tolerance=1e-6, max_iterations=10)
    assert opts.max_iterations == 10
    with pytest.raises(ValidationError):
        SolverOptions(tolerance=0)
    with pytest.raises(ValidationError):
        SolverOptions(max_iterations=0)
    with pytest.raises(ValidationError):
        SolverOptions(damping=1.5)


def test_square_converges_immediately(square):
    body, diagnostics = solve_minkowski(area_measure(square))
    assert diagnostics.converged
    assert diagnostics.iterations == 0
    assert float(volume(body)) == pytest.approx(4.0)
    assert _close(body, square)


@pytest.mark.parametrize("points", [_PENTAGON, [[0, 0], [1, 0], [0, 1]], [[0, 0], [1, 0], [0, 3], [1, 3]]])
def test_planar_round_trip(points):
    target = convex_hull(points)
    body, diagnostics = solve_minkowski(area_measure(target))
    assert diagnostics.converged
    assert diagnostics.max_relative_error <= SolverOptions().tolerance
    assert _close(body, target)


def test_round_trip_in_three_dimensions(simplex3, octahedron):
    for target in (simplex3, octahedron, box(1, 2, 3)):
        body, diagnostics = solve_minkowski(area_measure(target))
        assert diagnostics.converged
        assert float(volume(body)) == pytest.approx(float(volume(target)), rel=1e-6)
        assert _close(body, target)


def test_result_is_centered(triangle):
    body, diagnostics = solve_minkowski(area_measure(triangle))
    centroid = body.vertices.astype(float).mean(axis=0)
    assert abs(centroid).max() < 1e-9
    assert diagnostics.centroid_defect < 1e-9


def test_diagnostics_dict(square):
    _, diagnostics = solve_minkowski(area_measure(square))
    payload = diagnostics.to_dict()
    assert set(payload) == {"iterations", "max_relative_error", "centroid_defect", "converged", "final_volume", "halvings"}
    assert payload["converged"] is True


def test_measure_on_a_great_subsphere_is_rejected():
    measure = SurfaceMeasure.from_atoms([[1, 0], [-1, 0]], [1, 1])
    with pytest.raises(GreatSubsphere):
        solve_minkowski(measure)


def test_nonzero_centroid_is_rejected():
    measure = SurfaceMeasure.from_atoms([[1, 0], [0, 1], [-1, 0], [0, -1]], [1, 1, 2, 1])
    with pytest.raises(CentroidNonzero):
        solve_minkowski(measure)


def test_iteration_limit_raises_with_diagnostics():
    target = area_measure(convex_hull(_PENTAGON))
    with pytest.raises(NoConvergence) as info:
        solve_minkowski(target, SolverOptions(tolerance=1e-14, max_iterations=1))
    diagnostics = info.value.diagnostics
    assert diagnostics is not None
    assert not diagnostics.converged
    assert diagnostics.max_relative_error > 1e-14


# ===== ブラシュケ和・混合体 =====
def test_planar_blaschke_sum_is_minkowski_sum(square, triangle):
    # 平面では面積測度が線形なのでブラシュケ和とミンコフスキー和が一致する
    body, diagnostics = blaschke_add(square, triangle, return_diagnostics=True)
    assert diagnostics.converged
    assert _close(body, minkowski_sum(square, triangle))


def test_blaschke_sum_with_itself(cube):
    # S(λK) = λ^{n-1} S(K) より K # K = 2^{1/(n-1)} K
    body = blaschke_add(cube, cube)
    assert _close(body, scale_translate(cube, 2 ** 0.5))


def test_blaschke_sum_dimension_mismatch(square, cube):
    with pytest.raises(DimensionMismatch):
        blaschke_add(square, cube)


def test_planar_mixed_body_is_the_body(triangle):
    assert _close(mixed_body([triangle]), triangle)


def test_mixed_body_of_equal_bodies(cube):
    body, diagnostics = mixed_body([cube, cube], return_diagnostics=True)
    assert diagnostics.converged
    assert float(volume(body)) == pytest.approx(1.0, rel=1e-6)


def test_mixed_body_of_boxes_has_mixed_measure():
    first, second = box(1, 2, 3), box(3, 1, 2)
    body = mixed_body([first, second])
    achieved = area_measure(body)
    assert sorted(round(float(w), 6) for w in achieved.weights) == sorted(
        [3.5, 3.5, 5.5, 5.5, 3.5, 3.5]
    )


# ===== 体積の勾配・解の存在と一意性 =====
@pytest.mark.parametrize("n, seed", [(2, 0), (2, 1), (3, 0), (3, 1)])
def test_volume_gradient_is_facet_measure(n, seed):
    # ∂vol(P(h))/∂h_i = F_i（中心差分 1e-5）
    body = random_polytope(seed, n, 8, exact=False)
    normals = np.array([ar.float_array(f.normal) for f in body.facets])
    offsets = np.array([float(f.offset) for f in body.facets])
    measures = np.array([float(f.measure) for f in body.facets])
    step = 1e-5
    for i in range(len(offsets)):
        shift = np.zeros(len(offsets))
        shift[i] = step
        plus = float(volume(halfspace_intersection(HalfspaceSystem(normals, offsets + shift))))
        minus = float(volume(halfspace_intersection(HalfspaceSystem(normals, offsets - shift))))
        numeric = (plus - minus) / (2 * step)
        assert numeric == pytest.approx(measures[i], rel=1e-4, abs=1e-4 * measures.max())


@pytest.mark.parametrize("epsilon", [Fraction(1), Fraction(1, 10), Fraction(1, 100)])
def test_planar_perturbed_target_is_minkowski_sum(epsilon, triangle):
    # 平面では S(K) + ε·S(L) = S(K + εL)
    pentagon = convex_hull(_PENTAGON)
    target = area_measure(pentagon) + area_measure(triangle).scaled(epsilon)
    body, diagnostics = solve_minkowski(target)
    assert diagnostics.converged
    expected = minkowski_sum(pentagon, scale_translate(triangle, epsilon))
    assert _close(body, expected, tol=1e-6 * diameter(expected))


@pytest.mark.parametrize("n, seed", [(2, 3), (3, 4)])
@pytest.mark.parametrize("epsilon", [Fraction(1), Fraction(1, 10), Fraction(1, 100)])
def test_perturbed_random_target_is_solvable(n, seed, epsilon):
    first = random_polytope(seed, n, 7)
    second = random_polytope(seed + 100, n, 7)
    target = area_measure(first) + area_measure(second).scaled(epsilon)
    body, diagnostics = solve_minkowski(target)
    assert diagnostics.converged
    assert diagnostics.max_relative_error <= SolverOptions().tolerance
    assert len(area_measure(body)) == len(target)


@pytest.mark.parametrize("seed", [5, 6])
def test_solution_is_unique_up_to_translation(seed):
    target_body = random_polytope(seed, 3, 9)
    target = area_measure(target_body)
    first, _ = solve_minkowski(target)
    second, diagnostics = solve_minkowski(target, SolverOptions(damping=0.5))
    assert diagnostics.converged
    scale = diameter(target_body)
    assert _close(first, second, tol=1e-6 * scale)
    assert _close(first, target_body, tol=1e-6 * scale)
