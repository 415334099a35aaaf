"""
テスト共通のフィクスチャ
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.config.settings_loader import ENV_OVERRIDE_MAP  # noqa: E402
from src.convex.core.hull import convex_hull  # noqa: E402
from src.convex.core.polytope import Polytope  # noqa: E402


@pytest.fixture(autouse=True)
def _clear_env_overrides(monkeypatch):
    """.env のオーバーライドがスイート設定のテストに混ざらないようにする"""
    for env_key, _ in ENV_OVERRIDE_MAP.values():
        monkeypatch.delenv(env_key, raising=False)


def box(*widths) -> Polytope:
    """原点を隅に持つ座標軸に平行な直方体 [0, w_1] × ... × [0, w_n]"""
    corners = [[]]
    for w in widths:
        corners = [c + [x] for c in corners for x in (0, w)]
    return convex_hull(corners)


@pytest.fixture
def square() -> Polytope:
    """[-1, 1]²（面積 4）"""
    return convex_hull([[-1, -1], [1, -1], [1, 1], [-1, 1]])


@pytest.fixture
def unit_square() -> Polytope:
    return box(1, 1)


@pytest.fixture
def triangle() -> Polytope:
    """(0,0), (1,0), (0,1)（面積 1/2）"""
    return convex_hull([[0, 0], [1, 0], [0, 1]])


@pytest.fixture
def diamond() -> Polytope:
    """|x| + |y| <= 1（面積 2）"""
    return convex_hull([[1, 0], [0, 1], [-1, 0], [0, -1]])


@pytest.fixture
def cube() -> Polytope:
    """[0, 1]³"""
    return box(1, 1, 1)


@pytest.fixture
def octahedron() -> Polytope:
    """|x| + |y| + |z| <= 1（体積 4/3）"""
    return convex_hull([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]])


@pytest.fixture
def simplex3() -> Polytope:
    """標準単体（体積 1/6）"""
    return convex_hull([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
