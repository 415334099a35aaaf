"""ランダムな入力の生成のテスト"""

from fractions import Fraction

import numpy as np
import pytest

from src.cli.services.random_polytope import (
    random_lattice_points,
    random_perturbation,
    random_polytope,
    random_positive_sample,
    random_spd_matrix,
    vertex_count_for,
)
from src.convex.alexandrov import alexandrov_body
from src.convex.core.polytope import affine_rank, volume
from src.convex.exceptions import DimensionMismatch


@pytest.mark.parametrize("n", [2, 3, 4])
def test_random_polytope_is_full_dimensional(n):
    body = random_polytope(11, n, n + 4)
    assert body.is_full_dimensional
    assert body.is_exact
    assert len(body) <= n + 4
    assert volume(body) > 0


def test_same_seed_gives_same_polytope():
    first = random_polytope(5, 3, 8)
    second = random_polytope(5, 3, 8)
    assert first.vertices.tolist() == second.vertices.tolist()
    assert random_polytope(6, 3, 8).vertices.tolist() != first.vertices.tolist()


def test_exact_coordinates_are_dyadic():
    body = random_polytope(1, 2, 6)
    for value in body.vertices.flat:
        assert isinstance(value, Fraction)
        assert (value * 2**16).denominator == 1


def test_float_mode():
    body = random_polytope(1, 2, 6, exact=False)
    assert not body.is_exact
    assert float(volume(body)) > 0


def test_too_few_points_is_rejected():
    with pytest.raises(DimensionMismatch):
        random_polytope(0, 3, 3)


def test_lattice_points_span():
    points = random_lattice_points(np.random.default_rng(3), 3, 5)
    assert affine_rank(points) == 3
    assert all(value in (-1, 0, 1) for value in points.flat)


def test_random_spd_matrix():
    rng = np.random.default_rng(0)
    for n in (2, 3, 5):
        assert random_spd_matrix(rng, n).is_positive_definite()
    assert random_spd_matrix(rng, 3, exact=False).is_positive_definite()


def test_random_positive_sample_has_bounded_body():
    rng = np.random.default_rng(2)
    f = random_positive_sample(rng, 3, 12)
    assert len(f) == 12
    assert all(value > 0 for value in f.values)
    assert volume(alexandrov_body(f)) > 0

    g = random_perturbation(rng, f)
    assert g.is_exact
    assert all(-1 <= value <= 1 for value in g.values)


def test_vertex_count_for_respects_dimension():
    rng = np.random.default_rng(0)
    counts = {vertex_count_for(rng, 4, (3, 6)) for _ in range(50)}
    assert counts <= {5, 6}
    assert vertex_count_for(rng, 2, (7, 7)) == 7
