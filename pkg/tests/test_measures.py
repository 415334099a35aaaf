"""支持関数サンプル・表面積測度・混合面積測度のテスト"""

from fractions import Fraction

import pytest

from src.convex.core import arithmetic as ar
from src.convex.core.hull import convex_hull
from src.convex.measures import SupportSample, SurfaceMeasure, area_measure, centroid_defect, integrate, mixed_area_measure
from src.convex.exceptions import (
    DegenerateInput,
    DimensionMismatch,
    MissingDirection,
    NonPositive,
    Unbounded,
    ZeroDirection,
)


# ===== SupportSample =====
def test_support_sample_normalizes_directions():
    sample = SupportSample([[2, 0], [0, 1], [-1, 0], [0, -1]], [6, 1, 1, 1])
    assert sample.is_exact
    assert sample.value_at([1, 0]) == 3
    assert sample.value_at([4, 0]) == 12


def test_support_sample_rejects_duplicates():
    with pytest.raises(DegenerateInput):
        SupportSample([[1, 0], [3, 0]], [1, 3])


def test_support_sample_missing_and_zero_direction():
    sample = SupportSample([[1, 0], [0, 1], [-1, -1]], [1, 1, 1])
    with pytest.raises(MissingDirection):
        sample.value_at([-1, 0])
    with pytest.raises(ZeroDirection):
        sample.value_at([0, 0])
    with pytest.raises(ZeroDirection):
        SupportSample([[0, 0]], [1])


@pytest.mark.parametrize(
    "directions",
    [
        [[1, 0], [0, 1]],
        [[1, 0], [0, 1], [-1, 1]],
        [[1, 0], [-1, 0]],
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, 0]],
    ],
)
def test_support_sample_rejects_directions_in_a_halfspace(directions):
    with pytest.raises(Unbounded):
        SupportSample(directions, [1] * len(directions))


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), float("-inf")])
def test_support_sample_rejects_non_finite_values(bad):
    with pytest.raises(DegenerateInput):
        SupportSample([[1, 0], [0, 1], [-1, 0], [0, -1]], [1.0, bad, 1.0, 1.0])
    with pytest.raises(DegenerateInput):
        SupportSample([[1, 0], [bad, 1], [-1, 0], [0, -1]], [1.0, 1.0, 1.0, 1.0])


def test_support_sample_accepts_minimal_spanning_set():
    sample = SupportSample([[1, 0], [0, 1], [-1, -1]], [1, 1, 1])
    assert len(sample) == 3
    assert len(sample.scaled(2)) == 3


def test_support_sample_from_polytope(square):
    sample = SupportSample.from_polytope(square, [[1, 0], [0, 1], [1, 1], [-1, -1]])
    assert sample.value_at([1, 0]) == 1
    assert sample.value_at([1, 1]) == 2


def test_support_sample_at_facet_normals(triangle):
    sample = SupportSample.at_facet_normals(triangle)
    assert len(sample) == 3
    assert sample.value_at([1, 1]) == 1
    assert sample.value_at([-1, 0]) == 0


def test_support_sample_arithmetic():
    directions = [[1, 0], [0, 1], [-1, 0], [0, -1]]
    h = SupportSample(directions, [1, 2, 3, 4])
    linear = SupportSample.linear([1, 1], directions)
    assert list(linear.values) == [1, 1, -1, -1]
    shifted = h + linear
    assert list(shifted.values) == [2, 3, 2, 3]
    assert list((shifted - linear).values) == [1, 2, 3, 4]
    assert list(h.scaled(Fraction(1, 2)).values) == [Fraction(1, 2), 1, Fraction(3, 2), 2]
    assert h.is_strictly_positive()
    assert not linear.is_strictly_positive()
    assert h.max_abs() == 4.0


def test_support_sample_aligned_uses_own_order():
    h = SupportSample([[1, 0], [0, 1], [-1, -1]], [1, 2, 3])
    other = SupportSample([[0, 1], [-1, -1], [1, 0]], [5, 6, 7])
    assert list(h.aligned(other)) == [7, 5, 6]


def test_support_sample_irrational_length_falls_back_to_float():
    sample = SupportSample([[1, 1], [-1, 0], [0, -1]], [2, 1, 1])
    assert sample.value_at([1, 1]) == pytest.approx(2.0)


# ===== SurfaceMeasure =====
def test_area_measure_of_square(square):
    measure = area_measure(square)
    assert len(measure) == 4
    assert all(w == 2 for w in measure.weights)
    assert measure.total_weight() == 8.0
    assert all(x == 0 for x in centroid_defect(measure))
    assert measure.spans()


def test_area_measure_of_segment():
    segment = convex_hull([[0, 0], [2, 0]], allow_lower=True)
    with pytest.raises(DegenerateInput):
        area_measure(segment)
    measure = area_measure(segment, allow_lower=True)
    assert len(measure) == 2
    assert measure.weight_at(ar.exact_array([0, 1])) == 2
    assert measure.weight_at(ar.exact_array([1, 0])) == 0


def test_area_measure_of_point_is_zero():
    point = convex_hull([[1, 1]], allow_lower=True)
    measure = area_measure(point, allow_lower=True)
    assert len(measure) == 0
    assert not measure.spans()


def test_from_atoms_merges_parallel_normals():
    measure = SurfaceMeasure.from_atoms([[1, 0], [2, 0], [-1, 0]], [1, 2, 3])
    assert len(measure) == 2
    assert measure.weight_at(ar.exact_array([1, 0])) == 3
    assert measure.is_exact


def test_from_atoms_validation():
    with pytest.raises(NonPositive):
        SurfaceMeasure.from_atoms([[1, 0]], [0])
    with pytest.raises(ZeroDirection):
        SurfaceMeasure.from_atoms([[0, 0]], [1])
    with pytest.raises(DimensionMismatch):
        SurfaceMeasure.from_atoms([[1, 0], [0, 1]], [1])


def test_from_atoms_with_irrational_normal_length():
    measure = SurfaceMeasure.from_atoms([[1, 1], [-1, -1]], [1, 1])
    assert len(measure) == 2
    assert sum(float(w) for w in measure.weights) == pytest.approx(2.0)


def test_measure_addition_and_scaling(square):
    measure = area_measure(square)
    doubled = measure + measure
    assert len(doubled) == 4
    assert doubled.weight_at(ar.exact_array([1, 0])) == 4
    assert measure.scaled(Fraction(1, 2)).weight_at(ar.exact_array([0, 1])) == 1
    with pytest.raises(NonPositive):
        measure.scaled(0)


def test_integrate_support_against_own_measure(cube, octahedron):
    # ∫ h_K dS_K = n·vol(K)
    assert integrate(area_measure(cube), cube) == 3
    assert integrate(area_measure(octahedron), octahedron) == 3 * Fraction(4, 3)


def test_integrate_support_sample(square):
    measure = area_measure(square)
    sample = SupportSample([[1, 0], [0, 1], [-1, 0], [0, -1]], [1, 1, 1, 1])
    assert integrate(measure, sample) == 8
    partial = SupportSample([[1, 0], [0, 1], [-1, -1]], [1, 1, 1])
    with pytest.raises(MissingDirection):
        integrate(measure, partial)


# ===== 混合面積測度 =====
def test_mixed_area_measure_in_the_plane_is_area_measure(triangle):
    mixed = mixed_area_measure([triangle])
    plain = area_measure(triangle)
    assert len(mixed) == len(plain)
    for w in plain.area_vectors:
        assert mixed.weight_at(w) == ar.norm(w)


def test_mixed_area_measure_diagonal_is_area_measure(cube):
    mixed = mixed_area_measure([cube, cube])
    assert len(mixed) == 6
    assert all(w == 1 for w in mixed.weights)


def test_mixed_area_measure_of_boxes():
    from tests.conftest import box

    first, second = box(1, 2, 3), box(3, 1, 2)
    mixed = mixed_area_measure([first, second])
    assert all(x == 0 for x in centroid_defect(mixed))
    # S(A, B; ±e_1) = (a_2 b_3 + a_3 b_2) / 2
    assert mixed.weight_at(ar.exact_array([1, 0, 0])) == Fraction(2 * 2 + 3 * 1, 2)


def test_mixed_area_measure_needs_n_minus_one_bodies(cube):
    with pytest.raises(DimensionMismatch):
        mixed_area_measure([cube])
