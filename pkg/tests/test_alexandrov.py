"""アレクサンドロフ体・分解・極体積・体積の微分のテスト"""

from fractions import Fraction

import numpy as np
import pytest

from src.convex.alexandrov import (
    alexandrov_body,
    decompose,
    derivative_of_volume,
    polar_volume,
    volume_of_function,
)
from src.convex.alexandrov import decomposition as decomposition_module
from src.convex.core import arithmetic as ar
from src.convex.core.hull import convex_hull
from src.convex.core.operations import scale_translate
from src.convex.core.polytope import volume
from src.convex.exceptions import DegenerateInput, MissingDirection, NonPositive, Unbounded
from src.convex.measures import SupportSample

_AXES = [[1, 0], [0, 1], [-1, 0], [0, -1]]
_DIAGONALS = [[1, 1], [-1, 1], [-1, -1], [1, -1]]


def _sample(axis_value, diagonal_value):
    return SupportSample(_AXES + _DIAGONALS, [axis_value] * 4 + [diagonal_value] * 4)


def test_alexandrov_body_ignores_slack_directions():
    body = alexandrov_body(_sample(1, 3))
    assert volume(body) == 4
    assert volume_of_function(_sample(1, 3)) == 4


def test_alexandrov_body_with_all_constraints_active():
    # 正方形の4隅を |x| + |y| <= 3/2 で切った八角形
    assert volume_of_function(_sample(1, Fraction(3, 2))) == Fraction(7, 2)


def test_decomposition_of_support_function():
    decomposition = decompose(_sample(1, Fraction(3, 2)))
    assert all(v == 0 for v in decomposition.negative_part.values)
    assert decomposition.orthogonality_defect == 0
    assert decomposition.is_orthogonal


def test_decomposition_with_negative_part():
    f = _sample(1, 3)
    decomposition = decompose(f)
    # 対角方向では h_K((1,1)) = 2 なので N(f) = 1
    assert decomposition.positive_part.value_at([1, 1]) == 2
    assert decomposition.negative_part.value_at([1, 1]) == 1
    assert decomposition.negative_part.value_at([1, 0]) == 0
    assert all(v >= 0 for v in decomposition.negative_part.values)
    assert decomposition.orthogonality_defect == 0
    payload = decomposition.to_dict()
    assert payload["volume"] == "4"
    assert payload["orthogonal"] is True
    assert payload["dimension"] == 2


def test_decomposition_in_float_mode():
    f = _sample(1.0, 3.0)
    decomposition = decompose(f)
    assert not decomposition.positive_part.is_exact
    assert abs(float(decomposition.orthogonality_defect)) <= decomposition.tolerance
    assert float(volume(decomposition.body)) == pytest.approx(4.0)


def test_float_defect_is_measured_before_rounding_cleanup(monkeypatch):
    # h_K を 1e-6 だけずらすと、面の方向での残差 -1e-6 が欠損に現れる（周長 8）
    original = decomposition_module.support_values
    monkeypatch.setattr(
        decomposition_module,
        "support_values",
        lambda body, directions: ar.float_array(original(body, directions)) + 1e-6,
    )
    decomposition = decompose(_sample(1.0, 3.0))
    assert float(decomposition.orthogonality_defect) == pytest.approx(-8e-6, rel=1e-6)
    assert not decomposition.is_orthogonal
    # 返す部分では面の方向の残差を 0 に揃える
    assert decomposition.negative_part.value_at([1, 0]) == 0.0
    assert decomposition.positive_part.value_at([1, 0]) == 1.0


def test_decomposition_in_three_dimensions():
    directions = np.vstack([np.eye(3, dtype=int), -np.eye(3, dtype=int)]).tolist() + [[1, 1, 1]]
    f = SupportSample(directions, [1] * 6 + [10])
    decomposition = decompose(f)
    assert volume(decomposition.body) == 8
    assert decomposition.negative_part.value_at([1, 1, 1]) == 7


def test_nonpositive_function_is_rejected():
    with pytest.raises(NonPositive):
        alexandrov_body(SupportSample(_AXES, [1, 1, 0, 1]))
    with pytest.raises(NonPositive):
        decompose(SupportSample(_AXES, [1, -1, 1, 1]))


def test_unbounded_function_is_rejected():
    with pytest.raises(Unbounded):
        alexandrov_body(SupportSample([[1, 0], [0, 1]], [1, 1]))


# ===== 極体積 =====
def test_polar_volume_is_attained_by_the_alexandrov_body():
    f = _sample(1, 3)
    value, minimizer = polar_volume(f)
    assert value == 4
    assert volume(minimizer) == 4


def test_polar_volume_over_candidates(square, diamond, triangle):
    f = _sample(1, 3)
    pentagon = convex_hull([[0, 0], [4, 0], [5, 2], [2, 5], [-1, 3]])
    candidates = [diamond, triangle, scale_translate(square, 2), pentagon]
    value, minimizer = polar_volume(f, candidates)
    assert value == 4
    assert volume(minimizer) in (4, 16)


def test_polar_volume_never_beats_volume_of_function():
    f = _sample(1, Fraction(3, 2))
    value, _ = polar_volume(f, [convex_hull(_AXES)])
    assert value == volume_of_function(f)


# ===== 体積の微分 =====
def test_derivative_of_square_bump():
    f = SupportSample(_AXES, [1, 1, 1, 1])
    g = SupportSample(_AXES, [1, 0, 0, 0])
    analytic, numeric = derivative_of_volume(f, g)
    assert analytic == 2
    assert numeric == pytest.approx(2.0, rel=1e-6)


def test_derivative_along_linear_function_vanishes():
    f = _sample(1, Fraction(3, 2))
    g = SupportSample.linear([2, -1], _AXES + _DIAGONALS)
    analytic, numeric = derivative_of_volume(f, g)
    assert analytic == 0
    assert numeric == pytest.approx(0.0, abs=1e-6)


def test_derivative_along_f_is_n_times_volume():
    f = _sample(1, Fraction(3, 2))
    analytic, numeric = derivative_of_volume(f, f)
    assert analytic == 2 * Fraction(7, 2)
    assert numeric == pytest.approx(7.0, rel=1e-6)


def test_derivative_requires_matching_directions():
    f = SupportSample(_AXES, [1, 1, 1, 1])
    g = SupportSample([[1, 0], [0, 1], [-1, -1]], [1, 1, 1])
    with pytest.raises(MissingDirection):
        derivative_of_volume(f, g)


def test_polar_volume_without_any_evaluable_candidate(monkeypatch):
    def _no_slots(measure, f):
        raise MissingDirection("割り当てなし")

    monkeypatch.setattr(decomposition_module, "_atom_slots", _no_slots)
    with pytest.raises(DegenerateInput):
        polar_volume(_sample(1, 3))
