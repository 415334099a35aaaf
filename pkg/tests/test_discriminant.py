"""対称行列と混合判別式のテスト"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.convex.exceptions import DimensionMismatch, NotPositiveDefinite
from src.convex.inequalities import SymmetricMatrix, check_mixed_discriminant_kt, mixed_discriminant


def _diag(*values):
    n = len(values)
    return SymmetricMatrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])


def test_mixed_discriminant_of_diagonal_matrices():
    assert mixed_discriminant([_diag(1, 2), _diag(3, 4)]) == 5


def test_mixed_discriminant_diagonal_is_determinant():
    matrix = SymmetricMatrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert mixed_discriminant([matrix, matrix, matrix]) == matrix.determinant() == 18


def test_symmetric_matrix_validation():
    with pytest.raises(ValueError):
        SymmetricMatrix([[1, 2], [3, 4]])
    with pytest.raises(DimensionMismatch):
        SymmetricMatrix([[1, 2, 3], [2, 1, 0]])
    with pytest.raises(DimensionMismatch):
        mixed_discriminant([_diag(1, 2)])


def test_positive_definiteness():
    assert SymmetricMatrix([[2, 1], [1, 2]]).is_positive_definite()
    assert not SymmetricMatrix([[1, 2], [2, 1]]).is_positive_definite()
    assert not SymmetricMatrix([[1.0, 2.0], [2.0, 1.0]]).is_positive_definite()
    with pytest.raises(NotPositiveDefinite):
        SymmetricMatrix([[0, 0], [0, 1]]).require_positive_definite()


def test_float_matrices():
    value = mixed_discriminant([SymmetricMatrix([[1.0, 0.0], [0.0, 2.0]]), _diag(3, 4)])
    assert isinstance(value, float)
    assert value == pytest.approx(5.0)


def test_mixed_discriminant_kt():
    report = check_mixed_discriminant_kt(_diag(1, 2), _diag(1, 1), _diag(3, 4), 1)
    assert report.lhs == Fraction(21, 4)
    assert report.rhs == Fraction(5, 2)
    assert report.passed


def test_mixed_discriminant_kt_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        check_mixed_discriminant_kt(_diag(1, -1), _diag(1, 1), _diag(1, 1), 1)


_entry = st.integers(1, 9)


@settings(max_examples=30, deadline=None)
@given(st.tuples(_entry, _entry, _entry), st.tuples(_entry, _entry, _entry), st.tuples(_entry, _entry, _entry), st.integers(1, 2))
def test_mixed_discriminant_kt_holds_for_diagonal_matrices(a, b, c, k):
    assert check_mixed_discriminant_kt(_diag(*a), _diag(*b), _diag(*c), k).passed


@settings(max_examples=30, deadline=None)
@given(st.tuples(_entry, _entry), st.tuples(_entry, _entry))
def test_mixed_discriminant_is_symmetric(a, b):
    assert mixed_discriminant([_diag(*a), _diag(*b)]) == mixed_discriminant([_diag(*b), _diag(*a)])
