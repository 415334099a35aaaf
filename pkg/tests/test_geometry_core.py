"""凸包・半空間交差・体積・ミンコフスキー和・内接半径のテスト"""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.convex.core import arithmetic as ar
from src.convex.core.hull import convex_hull, halfspace_intersection
from src.convex.core.inradius import relative_inradius
from src.convex.core.operations import (
    hausdorff_distance,
    minkowski_sum,
    project_out,
    scale_translate,
    translate,
    translate_to_centroid,
)
from src.convex.core.polytope import HalfspaceSystem, contains, support_value, vertex_centroid, volume
from src.convex.exceptions import (
    DegenerateInput,
    EmptyPolytope,
    NegativeScale,
    Unbounded,
    ZeroDirection,
)


# ===== 演算モード =====
def test_to_fraction_keeps_binary_value():
    assert ar.to_fraction(0.5) == Fraction(1, 2)
    assert ar.to_fraction("3/4") == Fraction(3, 4)
    assert ar.to_fraction(0.1) == Fraction(0.1)


def test_format_scalar():
    assert ar.format_scalar(Fraction(1, 2)) == "1/2"
    assert ar.format_scalar(Fraction(6, 2)) == "3"
    assert ar.format_scalar(0.25) == 0.25


def test_fraction_sqrt():
    assert ar.fraction_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert ar.fraction_sqrt(Fraction(2)) is None


def test_exact_determinant():
    matrix = ar.exact_array([[Fraction(1, 3), 2], [1, 5]])
    assert ar.det(matrix) == Fraction(5, 3) - 2


def test_unify_falls_back_to_float():
    exact = ar.exact_array([1, 2])
    floats = np.array([0.5, 0.5])
    a, b = ar.unify(exact, floats)
    assert not ar.is_exact(a) and not ar.is_exact(b)


# ===== 凸包と体積 =====
def test_square_volume_is_exact(square):
    value = volume(square)
    assert isinstance(value, Fraction)
    assert value == 4
    assert len(square.facets) == 4


def test_facet_area_vectors_close(cube, octahedron):
    for body in (cube, octahedron):
        total = sum((f.area_vector for f in body.facets), ar.zeros(3, True))
        assert all(x == 0 for x in total)


def test_known_volumes(triangle, cube, octahedron, simplex3):
    assert volume(triangle) == Fraction(1, 2)
    assert volume(cube) == 1
    assert len(cube.facets) == 6
    assert volume(octahedron) == Fraction(4, 3)
    assert len(octahedron.facets) == 8
    assert volume(simplex3) == Fraction(1, 6)


def test_interior_points_are_dropped():
    body = convex_hull([[0, 0], [2, 0], [2, 2], [0, 2], [1, 1], [1, 0]])
    assert len(body) == 4
    assert volume(body) == 4


def test_float_mode_volume():
    body = convex_hull(np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]))
    assert not body.is_exact
    assert volume(body) == pytest.approx(4.0)


def test_rational_vertices():
    body = convex_hull([["0", "0"], ["1/3", "0"], ["0", "1/3"]])
    assert volume(body) == Fraction(1, 18)


def test_collinear_points_are_degenerate():
    points = [[0, 0], [1, 1], [2, 2]]
    with pytest.raises(DegenerateInput):
        convex_hull(points)
    segment = convex_hull(points, allow_lower=True)
    assert segment.affine_dim == 1
    assert volume(segment) == 0
    with pytest.raises(DegenerateInput):
        segment.facets


# ===== 半空間交差 =====
def _box_system(bound):
    return HalfspaceSystem.from_pairs([([1, 0], bound), ([-1, 0], bound), ([0, 1], bound), ([0, -1], bound)])


def test_halfspace_intersection_box():
    body = halfspace_intersection(_box_system(1))
    assert body.is_exact
    assert volume(body) == 4
    assert len(body) == 4


def test_halfspace_intersection_with_redundant_constraint():
    system = HalfspaceSystem.from_pairs(
        [([1, 0], 1), ([-1, 0], 1), ([0, 1], 1), ([0, -1], 1), ([1, 1], 5)]
    )
    assert volume(halfspace_intersection(system)) == 4


def test_halfspace_intersection_empty():
    system = HalfspaceSystem.from_pairs([([1, 0], -1), ([-1, 0], -1), ([0, 1], 1), ([0, -1], 1)])
    with pytest.raises(EmptyPolytope):
        halfspace_intersection(system)


def test_halfspace_intersection_unbounded():
    system = HalfspaceSystem.from_pairs([([1, 0], 1), ([0, 1], 1)])
    with pytest.raises(Unbounded):
        halfspace_intersection(system)


def test_halfspace_intersection_rational_vertices():
    system = HalfspaceSystem.from_pairs([([3, 1], 1), ([-1, 0], 0), ([0, -1], 0)])
    body = halfspace_intersection(system)
    assert volume(body) == Fraction(1, 6)


# ===== 演算 =====
def test_minkowski_sum_octagon(square, diamond):
    total = minkowski_sum(square, diamond)
    assert len(total) == 8
    assert volume(total) == 14


def test_minkowski_sum_with_point_is_translation(square):
    point = convex_hull([[3, 4]], allow_lower=True)
    moved = minkowski_sum(square, point)
    assert volume(moved) == 4
    assert all(vertex_centroid(moved) == ar.exact_array([3, 4]))


def test_scale_translate(square):
    scaled = scale_translate(square, Fraction(1, 2), [1, 1])
    assert volume(scaled) == 1
    assert support_value(scaled, [1, 0]) == Fraction(3, 2)
    with pytest.raises(NegativeScale):
        scale_translate(square, -1)
    assert scale_translate(square, Fraction(0)).affine_dim == 0


def test_translate_to_centroid(triangle):
    centered = translate_to_centroid(triangle)
    assert all(x == 0 for x in vertex_centroid(centered))
    assert volume(centered) == volume(triangle)


def test_support_value(square):
    assert support_value(square, [1, 1]) == 2
    with pytest.raises(ZeroDirection):
        support_value(square, [0, 0])


def test_project_out(cube):
    shadow = project_out(cube, 0)
    assert shadow.dim == 2
    assert volume(shadow) == 1


def test_contains(square, diamond):
    assert contains(square, diamond)
    assert not contains(diamond, square)


# ===== 内接半径とハウスドルフ距離 =====
def test_relative_inradius_is_certified(square, diamond):
    radius, translation = relative_inradius(square, diamond)
    assert radius == 1
    assert all(float(x) == pytest.approx(0.0, abs=1e-12) for x in translation)


def test_relative_inradius_of_scaled_copy(square):
    radius, _ = relative_inradius(square, scale_translate(square, Fraction(1, 3), [5, 5]))
    assert radius == 3


def test_planar_hausdorff_is_exact(square, diamond):
    assert hausdorff_distance(square, diamond) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_hausdorff_of_translation(cube):
    moved = translate(cube, [Fraction(1, 2), 0, 0])
    assert hausdorff_distance(cube, moved) == pytest.approx(0.5, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_volume_is_translation_invariant(shift):
    body = convex_hull([[0, 0], [3, 1], [1, 4], [-1, 2]])
    assert volume(translate(body, shift)) == volume(body)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_box_volume_is_product(a, b, c):
    from tests.conftest import box

    assert volume(box(a, b, c)) == a * b * c
