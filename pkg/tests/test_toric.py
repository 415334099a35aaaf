"""フロップの例と格子点・体積の対応のテスト"""

from fractions import Fraction

import pytest

from src.config import env_loader
from src.convex.exceptions import DegenerateInput, NegativeScale, TooLarge
from src.convex.toric import (
    FlopDivisor,
    LatticePolytope,
    check_flop_volume,
    check_volume_correspondence,
    flop_wall_jump,
    lattice_point_count,
    section_count_closed_form,
    section_count_flop,
    volume_closed_form,
    volume_flop,
)
from src.convex.toric.extrapolation import richardson

_GRID = [(a, b) for a in range(6) for b in range(6) if (a, b) != (0, 0)]


# ===== フロップ =====
@pytest.mark.parametrize("a,b", _GRID)
def test_section_count_closed_form(a, b):
    divisor = FlopDivisor(a, b)
    assert section_count_closed_form(divisor) == section_count_flop(divisor)


@pytest.mark.parametrize("a,b", _GRID)
def test_flop_volume_extrapolation_is_exact(a, b):
    closed, asymptotic = volume_flop(FlopDivisor(a, b))
    assert asymptotic == closed
    assert check_flop_volume(FlopDivisor(a, b)).passed


def test_known_values():
    assert section_count_flop(FlopDivisor(1, 1)) == 5
    assert section_count_flop(FlopDivisor(1, 0)) == 2
    assert volume_closed_form(FlopDivisor(1, 2)) == 5
    assert volume_closed_form(FlopDivisor(2, 1)) == 5
    assert volume_closed_form(FlopDivisor(3, 3)) == 54


def test_flop_divisor_validation():
    with pytest.raises(NegativeScale):
        FlopDivisor(-1, 2)
    with pytest.raises(DegenerateInput):
        volume_flop(FlopDivisor(0, 0))
    assert FlopDivisor(1, 2).scaled(3) == FlopDivisor(3, 6)


def test_flop_check_report():
    report = check_flop_volume(FlopDivisor(2, 5))
    assert report.label == "convex analogue"
    assert report.witnesses["volume"] == 3 * 5 * 4 - 8
    assert report.slack == report.lhs


@pytest.mark.parametrize("h", [Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)])
def test_wall_jump_is_cubic_in_step(h):
    jump = flop_wall_jump(1, h)
    assert jump.observed == jump.predicted == 48 * h**3
    assert jump.observed != 0
    # 体積は a, b について対称なので両側の差分は等しい
    assert jump.delta_minus == jump.delta_plus


def test_wall_jump_to_dict():
    payload = flop_wall_jump(Fraction(2), Fraction(1, 10)).to_dict()
    assert payload["predicted"] == "6/125"
    assert set(payload) == {"delta_plus", "delta_minus", "continuation", "observed", "predicted"}


def test_wall_jump_validation():
    with pytest.raises(DegenerateInput):
        flop_wall_jump(0, Fraction(1, 10))
    with pytest.raises(DegenerateInput):
        flop_wall_jump(1, 0)


# ===== リチャードソン外挿 =====
def test_richardson_recovers_constant_term():
    # x_m = 3 + 5/m - 2/m² は 2 段で厳密
    values = [Fraction(3) + Fraction(5, m) - Fraction(2, m * m) for m in (1, 2, 4)]
    assert richardson(values) == 3


# ===== 格子多面体 =====
def test_lattice_point_count(triangle, cube):
    assert lattice_point_count(LatticePolytope(triangle)) == 3
    assert lattice_point_count(LatticePolytope(cube)) == 8
    assert lattice_point_count(LatticePolytope(cube).dilate(2)) == 27


def test_lattice_polytope_from_float_vertices():
    lattice = LatticePolytope.from_vertices([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])
    assert lattice.polytope.is_exact
    assert lattice_point_count(lattice) == 6


def test_lattice_polytope_rejects_fractional_vertices():
    with pytest.raises(ValueError):
        LatticePolytope.from_vertices([[0, 0], ["1/2", 0], [0, 1]])


def test_lattice_point_limit(monkeypatch, cube):
    monkeypatch.setattr(env_loader, "LATTICE_MAX_CANDIDATES", 10)
    with pytest.raises(TooLarge):
        lattice_point_count(LatticePolytope(cube).dilate(3))


def test_volume_correspondence(triangle, octahedron, simplex3):
    for body in (triangle, octahedron, simplex3):
        report = check_volume_correspondence(LatticePolytope(body))
        assert report.passed
        assert report.witnesses["leading_coefficient"] == report.witnesses["volume"]
    report = check_volume_correspondence(LatticePolytope(simplex3))
    assert report.witnesses["toric_volume"] == 1
