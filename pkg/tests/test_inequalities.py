"""不等式チェック・等号検出器・CheckReport のテスト"""

from fractions import Fraction

import pytest

from src.convex.core.hull import convex_hull
from src.convex.core.operations import scale_translate
from src.convex.exceptions import DimensionMismatch
from src.convex.inequalities import (
    CheckReport,
    check_alexandrov_decomposition,
    check_alexandrov_fenchel,
    check_blaschke_compatibility,
    check_box_bound,
    check_brunn_minkowski,
    check_derivative_lemma,
    check_diskant_bound,
    check_improved_bm,
    check_indecomposability,
    check_kneser_suss,
    check_log_concavity,
    check_loomis_whitney,
    check_minkowski_first,
    check_mixed_body_volume,
    check_mixed_volume_linearity,
    check_morse,
    check_oracle_equivalence,
    check_polar_volume,
    check_reverse_kt,
    check_solver_round_trip,
    detect_homothety,
    is_axis_box,
)
from src.convex.measures import SupportSample
from tests.conftest import box

_AXES = [[1, 0], [0, 1], [-1, 0], [0, -1]]
_DIAGONALS = [[1, 1], [-1, 1], [-1, -1], [1, -1]]


# ===== CheckReport =====
def test_report_pass_threshold():
    assert CheckReport.build("x", Fraction(1), Fraction(1), 0.0).passed
    assert CheckReport("x", 1e6, 1e6, -1e-4).passed
    assert not CheckReport("x", 1.0, 1.0, -1e-6).passed


def test_report_equality_respects_detector():
    assert CheckReport.build("x", 2.0, 2.0, 1e-12).equality
    assert not CheckReport.build("x", 2.0, 2.0, 1e-12, detected=False).equality
    assert not CheckReport.build("x", 3.0, 2.0, 1e-12, detected=True).equality


def test_report_to_dict():
    report = CheckReport.build("x", Fraction(3, 2), Fraction(1), 0.0, witnesses={"ratio": Fraction(1, 3), "ok": True})
    payload = report.to_dict()
    assert payload["lhs"] == "3/2"
    assert payload["slack"] == "1/2"
    assert payload["passed"] is True
    assert payload["label"] == "convex"
    assert payload["witnesses"] == {"ratio": "1/3", "ok": True}


# ===== 検出器 =====
def test_detect_homothety(square, triangle):
    result = detect_homothety(square, scale_translate(square, 3, [1, 2]))
    assert result.homothetic
    assert result.ratio == pytest.approx(3.0)
    assert list(result.translation) == pytest.approx([1.0, 2.0])
    assert not detect_homothety(square, triangle).homothetic


def test_is_axis_box(diamond):
    assert is_axis_box(box(1, 2, 3))
    assert not is_axis_box(diamond)


# ===== ブルン・ミンコフスキー型 =====
def test_brunn_minkowski_strict(square, triangle, cube, octahedron):
    for first, second in ((square, triangle), (cube, octahedron)):
        report = check_brunn_minkowski(first, second)
        assert report.passed
        assert not report.equality


def test_brunn_minkowski_equality_for_homothets(triangle):
    report = check_brunn_minkowski(triangle, scale_translate(triangle, 2, [5, -1]))
    assert report.passed
    assert report.equality
    assert report.witnesses["homothetic"]


def test_minkowski_first(square, diamond):
    report = check_minkowski_first(square, diamond)
    assert report.lhs == 16
    assert report.rhs == 8
    assert not report.equality
    assert check_minkowski_first(square, scale_translate(square, Fraction(1, 2))).equality


def test_alexandrov_fenchel(square, diamond, cube, octahedron, simplex3):
    planar = check_alexandrov_fenchel(square, diamond)
    assert planar.passed
    assert planar.witnesses["V12"] == 4
    assert check_alexandrov_fenchel(cube, octahedron, [simplex3]).passed
    with pytest.raises(DimensionMismatch):
        check_alexandrov_fenchel(cube, octahedron)


def test_kneser_suss(square, triangle):
    report = check_kneser_suss(square, triangle)
    assert report.passed
    assert report.witnesses["solver"]["converged"]


# ===== 内接半径とモース =====
def test_diskant_bound(square, diamond):
    report = check_diskant_bound(square, diamond)
    assert report.lhs == 1
    assert report.rhs == Fraction(1, 2)
    assert report.passed


def test_morse_with_positive_right_side(square, diamond):
    report = check_morse(square, scale_translate(diamond, Fraction(1, 4)))
    assert report.rhs == 2
    assert report.witnesses["positivity"]
    assert report.passed


def test_morse_vacuous_case(square):
    report = check_morse(square, square)
    assert report.witnesses["vacuous"]
    assert report.passed


# ===== 逆ホヴァンスキー・テシエ型 =====
def test_reverse_kt(square, diamond, triangle, cube, octahedron, simplex3):
    report = check_reverse_kt(square, diamond, triangle, 1)
    assert report.passed
    assert report.witnesses["factor"] == Fraction(1, 2)
    for k in (1, 2):
        assert check_reverse_kt(cube, octahedron, simplex3, k).passed
    with pytest.raises(DimensionMismatch):
        check_reverse_kt(cube, octahedron, simplex3, 3)


# ===== 射影と直方体 =====
def test_loomis_whitney(octahedron):
    strict = check_loomis_whitney(octahedron)
    assert strict.lhs == 8
    assert strict.rhs == Fraction(16, 9)
    assert not strict.equality
    tight = check_loomis_whitney(box(1, 2, 3))
    assert tight.passed
    assert tight.equality


def test_box_bound(triangle):
    report = check_box_bound(triangle)
    assert report.lhs == 1
    assert report.rhs == Fraction(1, 2)
    assert report.label == "convex analogue"
    assert check_box_bound(box(2, 3)).equality


# ===== 混合体 =====
def test_mixed_body_volume(cube, octahedron):
    report = check_mixed_body_volume([cube, octahedron])
    assert report.passed
    assert not report.equality
    assert report.label == "convex analogue"


def test_improved_bm_planar(square, triangle):
    report = check_improved_bm(square, triangle)
    assert report.passed
    assert report.witnesses["planar_identity"]
    assert report.witnesses["mixed_body_volumes"] == pytest.approx([4.0, 0.5])


@pytest.mark.slow
def test_improved_bm_and_log_concavity_in_three_dimensions(cube, octahedron):
    assert check_improved_bm(cube, octahedron).passed
    assert check_log_concavity(cube, octahedron).passed


def test_log_concavity_needs_three_dimensions(square, triangle):
    with pytest.raises(DimensionMismatch):
        check_log_concavity(square, triangle)


# ===== 恒等式 =====
def test_mixed_volume_linearity(square, diamond, triangle):
    report = check_mixed_volume_linearity(square, diamond, triangle)
    assert report.slack == 0
    assert report.passed and report.equality


def test_oracle_equivalence(square, diamond, cube, octahedron, simplex3):
    assert check_oracle_equivalence([square], diamond).equality
    report = check_oracle_equivalence([cube, octahedron], simplex3)
    assert report.slack == 0


def test_blaschke_compatibility(square, triangle, cube, octahedron, simplex3):
    assert check_blaschke_compatibility(square, triangle).slack == 0
    report = check_blaschke_compatibility(cube, octahedron, [simplex3])
    assert report.passed
    assert report.witnesses["measure_gap"] == 0


def test_indecomposability(triangle):
    assert check_indecomposability(triangle).passed
    hexagon = convex_hull([[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]])
    report = check_indecomposability(hexagon)
    assert report.passed
    assert not report.witnesses["triangle"]


# ===== ソルバー・アレクサンドロフ =====
def test_solver_round_trip(triangle):
    assert check_solver_round_trip(triangle).passed


def test_alexandrov_decomposition():
    f = SupportSample(_AXES + _DIAGONALS, [1] * 4 + [3] * 4)
    report = check_alexandrov_decomposition(f)
    assert report.passed
    assert report.witnesses["idempotent"]


def test_polar_volume(diamond):
    f = SupportSample(_AXES + _DIAGONALS, [1] * 4 + [3] * 4)
    report = check_polar_volume(f, [diamond])
    assert report.slack == 0
    assert report.label == "convex analogue"


def test_derivative_lemma():
    f = SupportSample(_AXES, [1, 1, 1, 1])
    g = SupportSample(_AXES, [1, 0, 0, 0])
    report = check_derivative_lemma(f, g)
    assert report.passed
    assert report.witnesses["analytic"] == 2
