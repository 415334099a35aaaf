"""混合体積のテスト（分極公式と測度経由の一致・対称性・多重線形性）"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.convex.core.hull import convex_hull
from src.convex.core.operations import minkowski_sum, scale_translate, translate
from src.convex.core.polytope import volume
from src.convex.exceptions import DimensionMismatch
from src.convex.measures import SupportSample, mixed_volume, mixed_volume_via_measure
from tests.conftest import box

_coords = st.integers(-4, 4)
_points2 = st.lists(st.tuples(_coords, _coords), min_size=3, max_size=6, unique=True)


def _body(points):
    """ランダムな点から全次元の凸多角形（退化していれば単位正方形を足して膨らませる）"""
    body = convex_hull([list(p) for p in points], allow_lower=True)
    if body.is_full_dimensional:
        return body
    return minkowski_sum(body, box(1, 1))


def test_diagonal_is_volume(square, cube):
    assert mixed_volume([square, square]) == 4
    assert mixed_volume([cube, cube, cube]) == 1


def test_unit_square():
    assert mixed_volume([box(1, 1), box(1, 1)]) == 1


def test_square_and_diamond(square, diamond):
    assert mixed_volume([square, diamond]) == 4
    assert mixed_volume_via_measure([square], diamond) == 4


def test_segment_operand(unit_square):
    segment = convex_hull([[0, 0], [1, 0]], allow_lower=True)
    assert mixed_volume([unit_square, segment]) == Fraction(1, 2)
    assert mixed_volume([segment, segment]) == 0


def test_boxes_give_permanent():
    # V(A, B, C) = perm(W) / 3!
    a, b, c = box(1, 2, 3), box(2, 1, 1), box(1, 1, 2)
    rows = [(1, 2, 3), (2, 1, 1), (1, 1, 2)]
    perm = sum(
        rows[0][i] * rows[1][j] * rows[2][k]
        for i in range(3)
        for j in range(3)
        for k in range(3)
        if len({i, j, k}) == 3
    )
    assert mixed_volume([a, b, c]) == Fraction(perm, 6)


def test_via_measure_in_three_dimensions(cube, octahedron, simplex3):
    direct = mixed_volume([cube, octahedron, simplex3])
    assert mixed_volume_via_measure([cube, octahedron], simplex3) == direct


def test_via_measure_with_support_sample(square, diamond):
    directions = [[1, 0], [0, 1], [-1, 0], [0, -1]]
    sample = SupportSample.from_polytope(diamond, directions)
    assert mixed_volume_via_measure([square], sample) == 4


def test_float_mode(square):
    floats = convex_hull([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
    value = mixed_volume([floats, square])
    assert isinstance(value, float)
    assert value == pytest.approx(4.0)


def test_wrong_count(square, cube):
    with pytest.raises(DimensionMismatch):
        mixed_volume([square])
    with pytest.raises(DimensionMismatch):
        mixed_volume([square, cube])
    with pytest.raises(DimensionMismatch):
        mixed_volume_via_measure([cube], cube)


@settings(max_examples=25, deadline=None)
@given(_points2, _points2)
def test_symmetric(first, second):
    k, l = _body(first), _body(second)
    assert mixed_volume([k, l]) == mixed_volume([l, k])


@settings(max_examples=20, deadline=None)
@given(_points2, _points2, _points2)
def test_additive_in_each_argument(first, second, third):
    k, l, m = _body(first), _body(second), _body(third)
    assert mixed_volume([minkowski_sum(k, l), m]) == mixed_volume([k, m]) + mixed_volume([l, m])


@settings(max_examples=20, deadline=None)
@given(_points2, _points2, st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8), st.tuples(_coords, _coords))
def test_homogeneous_and_translation_invariant(first, second, scale, shift):
    k, l = _body(first), _body(second)
    moved = scale_translate(k, scale, list(shift))
    assert mixed_volume([moved, l]) == scale * mixed_volume([k, l])
    assert mixed_volume([translate(l, list(shift)), k]) == mixed_volume([l, k])


@settings(max_examples=20, deadline=None)
@given(_points2, _points2)
def test_polarization_of_sum_volume(first, second):
    # vol(K + L) = vol(K) + 2V(K, L) + vol(L)
    k, l = _body(first), _body(second)
    assert volume(minkowski_sum(k, l)) == volume(k) + 2 * mixed_volume([k, l]) + volume(l)


@settings(max_examples=15, deadline=None)
@given(_points2, _points2)
def test_polarization_agrees_with_measure(first, second):
    k, l = _body(first), _body(second)
    assert mixed_volume_via_measure([k], l) == mixed_volume([k, l])
