"""
厳密演算と浮動小数点演算の共通ユーティリティ

演算モードは配列の dtype で決まります。
- object 配列（要素は fractions.Fraction）: 厳密な有理数演算
- float64 配列: 浮動小数点演算

厳密モードと浮動小数点モードが混在した演算は浮動小数点に揃えます。
小さな行列式は Fraction のまま直接展開し、大きな行列式・連立方程式・階数は
sympy の有理数行列で計算します。
"""

import math
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

Scalar = Union[Fraction, float]


def to_fraction(value: Any) -> Fraction:
    """
    スカラー値を Fraction に変換（値を一切丸めない）

    Args:
        value: int, float, Fraction, "p/q" または10進文字列, numpy スカラー, sympy Rational

    Returns:
        厳密に等しい Fraction

    Raises:
        ValueError: 有限でない値、または解釈できない文字列
        TypeError: 未対応の型
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool はスカラーとして扱えません")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(float(value)):
            raise ValueError(f"有限でない値は扱えません: {value}")
        return Fraction(float(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"スカラーに変換できない型です: {type(value).__name__}")


def is_exact(array: np.ndarray) -> bool:
    """配列が厳密モード（object dtype）かどうか"""
    return np.asarray(array).dtype == object


def exact_array(values: Any) -> np.ndarray:
    """任意の入れ子リスト・配列を Fraction の object 配列に変換"""
    arr = np.asarray(values, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_fraction(arr[idx])
    return out


def float_array(values: Any) -> np.ndarray:
    """任意の入れ子リスト・配列を float64 配列に変換"""
    arr = np.asarray(values, dtype=object) if not isinstance(values, np.ndarray) else values
    if arr.dtype != object:
        return np.asarray(arr, dtype=float)
    out = np.empty(arr.shape, dtype=float)
    for idx in np.ndindex(arr.shape):
        out[idx] = float(arr[idx])
    return out


def as_mode(values: Any, exact: bool) -> np.ndarray:
    """exact フラグに応じて厳密配列か浮動小数点配列に変換"""
    return exact_array(values) if exact else float_array(values)


def auto_array(values: Any) -> np.ndarray:
    """
    入力の型からモードを推定して配列化

    要素がすべて int / Fraction / 文字列なら厳密、それ以外は浮動小数点。
    """
    arr = np.asarray(values, dtype=object) if not isinstance(values, np.ndarray) else values
    if arr.dtype != object:
        if np.issubdtype(arr.dtype, np.integer):
            return exact_array(arr)
        return np.asarray(arr, dtype=float)
    flat = arr.ravel()
    if all(isinstance(x, (Fraction, int, str, np.integer)) and not isinstance(x, bool) for x in flat):
        return exact_array(arr)
    return float_array(arr)


def unify(*arrays: np.ndarray) -> Tuple[np.ndarray, ...]:
    """すべて厳密なら厳密のまま、一つでも浮動小数点ならすべて float64 に揃える"""
    if all(is_exact(a) for a in arrays):
        return tuple(arrays)
    return tuple(float_array(a) for a in arrays)


def to_float(value: Any) -> float:
    return float(value)


def scalar_like(value: Any, exact: bool) -> Scalar:
    """モードに応じたスカラー"""
    return to_fraction(value) if exact else float(value)


def zeros(shape: Union[int, Tuple[int, ...]], exact: bool) -> np.ndarray:
    """モードに応じたゼロ配列"""
    if not exact:
        return np.zeros(shape, dtype=float)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def fraction_sqrt(value: Fraction) -> Optional[Fraction]:
    """有理数の平方根が有理数ならそれを返し、そうでなければ None"""
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def norm(vector: np.ndarray) -> Scalar:
    """
    ユークリッドノルム

    厳密モードでは二乗和が有理数の平方なら Fraction、そうでなければ float を返します。
    """
    if is_exact(vector):
        squared = sum((x * x for x in vector), Fraction(0))
        root = fraction_sqrt(squared)
        if root is not None:
            return root
        return math.sqrt(float(squared))
    return float(np.linalg.norm(vector))


def normalize(vector: np.ndarray) -> np.ndarray:
    """単位ベクトル化（厳密ノルムが得られない場合は浮動小数点）"""
    length = norm(vector)
    if isinstance(length, Fraction):
        return np.array([x / length for x in vector], dtype=object)
    return float_array(vector) / length


def _to_sympy(matrix: np.ndarray) -> sympy.Matrix:
    rows = [
        [sympy.Rational(x.numerator, x.denominator) for x in row] for row in matrix
    ]
    return sympy.Matrix(rows)


def _from_sympy(value: Any) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def det(matrix: np.ndarray) -> Scalar:
    """
    正方行列の行列式

    厳密モードでは 3×3 までを直接展開し、それより大きい場合は sympy の
    Bareiss 法を使います。
    """
    size = matrix.shape[0]
    if not is_exact(matrix):
        if size == 0:
            return 1.0
        return float(np.linalg.det(matrix))
    if size == 0:
        return Fraction(1)
    if size == 1:
        return matrix[0, 0]
    if size == 2:
        return matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0]
    if size == 3:
        a, b, c = matrix[0]
        d, e, f = matrix[1]
        g, h, i = matrix[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return _from_sympy(_to_sympy(matrix).det(method="bareiss"))


def cofactor_normal(edges: np.ndarray) -> np.ndarray:
    """
    n-1 本の辺ベクトルに直交するベクトル（一般化外積）

    成分 j は辺行列から列 j を除いた小行列式に (-1)^j を掛けたもの。
    ノルムは辺が張る平行体の (n-1) 次元体積に等しい。

    Args:
        edges: (n-1, n) 配列

    Returns:
        長さ n のベクトル（入力と同じモード）
    """
    n = edges.shape[1]
    exact = is_exact(edges)
    out = zeros(n, exact)
    for j in range(n):
        minor = np.delete(edges, j, axis=1)
        value = det(minor)
        out[j] = value if j % 2 == 0 else -value
    return out


def cofactor_normals(edges: np.ndarray) -> np.ndarray:
    """
    cofactor_normal の浮動小数点一括版

    Args:
        edges: (F, n-1, n) 配列

    Returns:
        (F, n) 配列
    """
    count, _, n = edges.shape
    out = np.empty((count, n), dtype=float)
    for j in range(n):
        minors = np.delete(edges, j, axis=2)
        values = np.linalg.det(minors) if minors.shape[1] > 0 else np.ones(count)
        out[:, j] = values if j % 2 == 0 else -values
    return out


def solve(matrix: np.ndarray, rhs: np.ndarray) -> Optional[np.ndarray]:
    """
    正方連立一次方程式を解く

    Returns:
        解ベクトル。特異な場合は None
    """
    if is_exact(matrix) and is_exact(rhs):
        system = _to_sympy(matrix)
        if system.det(method="bareiss") == 0:
            return None
        sol = system.LUsolve(_to_sympy(rhs.reshape(-1, 1)))
        return np.array([_from_sympy(x) for x in sol], dtype=object)
    a, b = float_array(matrix), float_array(rhs)
    try:
        return np.linalg.solve(a, b)
    except np.linalg.LinAlgError:
        return None


def inverse(matrix: np.ndarray) -> Optional[np.ndarray]:
    """正方行列の逆行列（特異なら None）"""
    if is_exact(matrix):
        system = _to_sympy(matrix)
        if system.det(method="bareiss") == 0:
            return None
        inv = system.inv()
        return np.array(
            [[_from_sympy(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)],
            dtype=object,
        )
    try:
        return np.linalg.inv(float_array(matrix))
    except np.linalg.LinAlgError:
        return None


def rank(matrix: np.ndarray, tol: float = 1e-9) -> int:
    """行列の階数（厳密モードは sympy、浮動小数点は相対許容誤差付き SVD）"""
    if matrix.size == 0:
        return 0
    if is_exact(matrix):
        return int(_to_sympy(matrix).rank())
    fm = float_array(matrix)
    scale = max(1.0, float(np.abs(fm).max()))
    return int(np.linalg.matrix_rank(fm, tol=tol * scale))


def canonical_key(vector: Sequence[Fraction], *extra: Fraction) -> Tuple[Fraction, ...]:
    """
    向きを保った方向の正規化キー

    最初の非ゼロ成分の絶対値で割ったベクトル（正の倍数で不変）を返します。
    extra は同じ係数で割って末尾に付けます。
    """
    scale = next((abs(x) for x in vector if x != 0), None)
    if scale is None:
        raise ValueError("ゼロベクトルの方向キーは定義されません")
    return tuple(x / scale for x in vector) + tuple(x / scale for x in extra)


def format_scalar(value: Any) -> Union[str, float]:
    """
    JSON 出力用のスカラー表現

    Fraction は "p/q"（整数なら "p"）、それ以外は float。
    """
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return float(value)


def format_vector(values: Iterable[Any]) -> list:
    return [format_scalar(x) for x in values]


def format_matrix(rows: Iterable[Iterable[Any]]) -> list:
    return [format_vector(row) for row in rows]
