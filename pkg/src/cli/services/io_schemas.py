"""
入力ファイルのスキーマと変換

JSON ファイルを pydantic モデルで検証してから幾何オブジェクトに変換します。
スカラーは JSON の数値、10進文字列、"p/q" 文字列のいずれでもよく、
厳密モードではすべて Fraction（10進数は値を丸めずに）、浮動小数点モードでは float になります。

ファイルの種類はトップレベルのキーで判別します。
- "vertices": PolytopeFile
- "halfspaces": HalfspaceFile
- "atoms": MeasureFile
- "directions" と "values": SampleFile
- "matrix": MatrixFile
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, StrictFloat, StrictInt, ValidationError, field_validator, model_validator

from src.config import env_loader
from src.convex.core import arithmetic as ar
from src.convex.core.hull import convex_hull, halfspace_intersection
from src.convex.core.polytope import HalfspaceSystem, Polytope
from src.convex.exceptions import (
    ConvexGeometryError,
    InvariantViolation,
    SchemaError,
    ZeroDirection,
)
from src.convex.inequalities.discriminant import SymmetricMatrix
from src.convex.measures.support_sample import SupportSample
from src.convex.measures.surface_measure import SurfaceMeasure, centroid_defect, merge_area_vectors
from src.convex.solver.options import SolverOptions
from src.utils.logger import setup_logger

logger = setup_logger("io_schemas", log_dir=env_loader.LOG_DIR + "/cli")

ScalarInput = Union[StrictInt, StrictFloat, str]
ParsedValue = Union[Polytope, SurfaceMeasure, SupportSample, SymmetricMatrix]


def parse_scalar(value: Any) -> Fraction:
    """
    入力スカラーを Fraction に変換

    JSON の浮動小数点数は 10 進表記のまま解釈します（0.1 -> 1/10）。

    Raises:
        ValueError: 解釈できない文字列、または有限でない値
    """
    if isinstance(value, bool):
        raise ValueError("真偽値はスカラーとして扱えません")
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"有限でない値は扱えません: {value}")
        return Fraction(repr(value))
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"スカラーとして解釈できません: {value!r}")


def _check_scalars(values: Any) -> Any:
    for item in values if isinstance(values, list) else [values]:
        if isinstance(item, list):
            _check_scalars(item)
        else:
            parse_scalar(item)
    return values


def _to_array(values: Any, exact: bool) -> np.ndarray:
    arr = np.asarray(values, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = parse_scalar(arr[idx])
    return out if exact else ar.float_array(out)


class _SchemaModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ===== 多面体 =====
class PolytopeFile(_SchemaModel):
    """{"dim": n, "vertices": [[q, ...], ...]}"""

    dim: int = Field(ge=1)
    vertices: List[List[ScalarInput]] = Field(min_length=1)

    @field_validator("vertices")
    @classmethod
    def parse_scalars(cls, value: Any) -> Any:
        return _check_scalars(value)

    @model_validator(mode="after")
    def check_lengths(self) -> "PolytopeFile":
        for i, row in enumerate(self.vertices):
            if len(row) != self.dim:
                raise ValueError(f"vertices[{i}] の長さ {len(row)} が dim = {self.dim} と一致しません")
        return self

    def to_value(self, exact: bool) -> Polytope:
        return convex_hull(_to_array(self.vertices, exact), allow_lower=True)


class HalfspaceEntry(_SchemaModel):
    normal: List[ScalarInput] = Field(min_length=1)
    bound: ScalarInput

    @field_validator("normal", "bound")
    @classmethod
    def parse_scalars(cls, value: Any) -> Any:
        return _check_scalars(value)


class HalfspaceFile(_SchemaModel):
    """{"dim": n, "halfspaces": [{"normal": [...], "bound": q}, ...]}"""

    dim: int = Field(ge=1)
    halfspaces: List[HalfspaceEntry] = Field(min_length=1)

    @model_validator(mode="after")
    def check_lengths(self) -> "HalfspaceFile":
        for i, entry in enumerate(self.halfspaces):
            if len(entry.normal) != self.dim:
                raise ValueError(f"halfspaces[{i}].normal の長さが dim = {self.dim} と一致しません")
        return self

    def to_value(self, exact: bool) -> Polytope:
        system = HalfspaceSystem(
            normals=_to_array([h.normal for h in self.halfspaces], exact),
            bounds=_to_array([h.bound for h in self.halfspaces], exact),
        )
        return halfspace_intersection(system)


# ===== 測度 =====
class AtomEntry(_SchemaModel):
    """
    原子 {"normal": [...], "weight": q}、または面積ベクトル {"area_vector": [...]}

    単位化すると無理数になる厳密な原子は area_vector 形式で書き出されます。
    """

    normal: Optional[List[ScalarInput]] = None
    weight: Optional[ScalarInput] = None
    area_vector: Optional[List[ScalarInput]] = None

    @field_validator("normal", "weight", "area_vector")
    @classmethod
    def parse_scalars(cls, value: Any) -> Any:
        return value if value is None else _check_scalars(value)

    @model_validator(mode="after")
    def check_form(self) -> "AtomEntry":
        paired = self.normal is not None and self.weight is not None
        if paired == (self.area_vector is not None):
            raise ValueError("原子は normal と weight の組、または area_vector のどちらか一方で指定してください")
        return self

    def vector(self) -> List[ScalarInput]:
        return self.area_vector if self.area_vector is not None else self.normal  # type: ignore[return-value]


class MeasureFile(_SchemaModel):
    """{"dim": n, "atoms": [{"normal": [...], "weight": q}, ...]}"""

    dim: int = Field(ge=1)
    atoms: List[AtomEntry] = Field(min_length=1)

    @model_validator(mode="after")
    def check_lengths(self) -> "MeasureFile":
        for i, atom in enumerate(self.atoms):
            if len(atom.vector()) != self.dim:
                raise ValueError(f"atoms[{i}] の長さが dim = {self.dim} と一致しません")
        return self

    def to_value(self, exact: bool) -> SurfaceMeasure:
        rows = []
        for i, atom in enumerate(self.atoms):
            try:
                if atom.area_vector is not None:
                    vector = _to_array(atom.area_vector, exact)
                    if all(x == 0 for x in vector):
                        raise ZeroDirection("面積ベクトルがゼロです")
                else:
                    single = SurfaceMeasure.from_atoms(
                        _to_array([atom.normal], exact), _to_array([atom.weight], exact), exact=exact
                    )
                    vector = single.area_vectors[0]
            except ConvexGeometryError as e:
                raise InvariantViolation(f"atoms[{i}]: {e}") from e
            rows.append(vector)
        if all(ar.is_exact(row) for row in rows):
            vectors = np.array(rows, dtype=object).reshape(len(rows), self.dim)
        else:
            vectors = np.array([ar.float_array(row) for row in rows])
        return merge_area_vectors(vectors, [1] * len(rows), dim=self.dim)


# ===== サポートサンプル =====
class SampleFile(_SchemaModel):
    """{"dim": n, "directions": [[...], ...], "values": [...]}"""

    dim: int = Field(ge=1)
    directions: List[List[ScalarInput]] = Field(min_length=1)
    values: List[ScalarInput] = Field(min_length=1)

    @field_validator("directions", "values")
    @classmethod
    def parse_scalars(cls, value: Any) -> Any:
        return _check_scalars(value)

    @model_validator(mode="after")
    def check_lengths(self) -> "SampleFile":
        if len(self.directions) != len(self.values):
            raise ValueError(
                f"directions（{len(self.directions)} 個）と values（{len(self.values)} 個）の個数が一致しません"
            )
        for i, row in enumerate(self.directions):
            if len(row) != self.dim:
                raise ValueError(f"directions[{i}] の長さが dim = {self.dim} と一致しません")
        return self

    def to_value(self, exact: bool) -> SupportSample:
        return SupportSample(_to_array(self.directions, exact), _to_array(self.values, exact), exact=exact)


# ===== 対称行列 =====
class MatrixFile(_SchemaModel):
    """{"matrix": [[...], ...]}"""

    matrix: List[List[ScalarInput]] = Field(min_length=1)

    @field_validator("matrix")
    @classmethod
    def parse_scalars(cls, value: Any) -> Any:
        return _check_scalars(value)

    @model_validator(mode="after")
    def check_square(self) -> "MatrixFile":
        size = len(self.matrix)
        for i, row in enumerate(self.matrix):
            if len(row) != size:
                raise ValueError(f"matrix[{i}] の長さ {len(row)} が行数 {size} と一致しません")
        return self

    def to_value(self, exact: bool) -> SymmetricMatrix:
        return SymmetricMatrix(_to_array(self.matrix, exact))


SCHEMAS = {
    "vertices": PolytopeFile,
    "halfspaces": HalfspaceFile,
    "atoms": MeasureFile,
    "directions": SampleFile,
    "matrix": MatrixFile,
}


def _schema_for(payload: Dict[str, Any], source: str):
    if not isinstance(payload, dict):
        raise SchemaError(f"{source}: トップレベルは JSON オブジェクトである必要があります")
    for key, model in SCHEMAS.items():
        if key in payload:
            return model
    raise SchemaError(f"{source}: ファイルの種類を判別できません（キー: {sorted(payload)}）")


def _format_validation_error(source: str, error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "(root)"
        lines.append(f"{source}: {location}: {item['msg']}")
    return "\n".join(lines)


def parse_payload(
    payload: Any, exact: bool = True, source: str = "<input>", for_solving: bool = False
) -> ParsedValue:
    """
    読み込み済みの JSON を検証して幾何オブジェクトに変換

    Args:
        payload: json.load の結果
        exact: 厳密モードで変換するか
        source: エラーメッセージに使う入力名
        for_solving: 測度をミンコフスキー問題の入力として検証するか
            （重心 0、法線が ℝⁿ を張る）

    Raises:
        SchemaError: スキーマに適合しない場合（フィールド単位のメッセージ）
        InvariantViolation: 値の不変条件を満たさない場合
    """
    model = _schema_for(payload, source)
    try:
        parsed = model.model_validate(payload)
    except ValidationError as e:
        raise SchemaError(_format_validation_error(source, e)) from e
    try:
        value = parsed.to_value(exact)
    except (ConvexGeometryError, ValueError, ArithmeticError) as e:
        raise InvariantViolation(f"{source}: {e}") from e
    if for_solving and isinstance(value, SurfaceMeasure):
        _require_solvable(value, source)
    return value


def _require_solvable(measure: SurfaceMeasure, source: str) -> None:
    """重心 0（SolverOptions の許容量内）と法線が ℝⁿ を張ることを確認"""
    defect = float(np.linalg.norm(ar.float_array(centroid_defect(measure))))
    allowed = SolverOptions().centroid_tolerance * max(1.0, measure.total_weight())
    if defect > allowed:
        raise InvariantViolation(
            f"{source}: atoms: 重心欠損 {defect:.3e} が許容量 {allowed:.3e} を超えています"
        )
    if not measure.spans():
        raise InvariantViolation(f"{source}: atoms: 法線が ℝ^{measure.dim} を張りません")


def load_json(path: Union[str, Path]) -> Any:
    """
    JSON ファイルを読み込む

    Raises:
        FileNotFoundError: ファイルが存在しない場合
        SchemaError: JSON として解釈できない場合
    """
    file_path = Path(path)
    if not file_path.is_file():
        raise FileNotFoundError(f"入力ファイルが見つかりません: {file_path}")
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{file_path}: JSON の構文エラー（{e.lineno} 行 {e.colno} 列）: {e.msg}") from e


def parse_inputs(
    paths: Sequence[Union[str, Path]], exact: bool = True, for_solving: bool = False
) -> List[ParsedValue]:
    """
    入力ファイル群を検証済みの値に変換

    Example:
        >>> [square] = parse_inputs(["square.json"])
        >>> volume(square)
        Fraction(4, 1)
    """
    values = []
    for path in paths:
        value = parse_payload(load_json(path), exact=exact, source=str(path), for_solving=for_solving)
        logger.debug(f"入力を読み込みました: {path} -> {value!r}")
        values.append(value)
    return values


# ===== 出力 =====
def polytope_to_dict(polytope: Polytope) -> Dict[str, Any]:
    return {"dim": polytope.dim, "vertices": ar.format_matrix(polytope.vertices)}


def measure_to_dict(measure: SurfaceMeasure) -> Dict[str, Any]:
    """原子の重みが厳密に表せない場合は area_vector 形式で書き出す"""
    atoms = []
    for vector, weight in zip(measure.area_vectors, measure.weights):
        if measure.is_exact and isinstance(weight, float):
            atoms.append({"area_vector": ar.format_vector(vector)})
        else:
            atoms.append({"normal": ar.format_vector(ar.normalize(vector)), "weight": ar.format_scalar(weight)})
    return {"dim": measure.dim, "atoms": atoms}


def sample_to_dict(sample: SupportSample) -> Dict[str, Any]:
    return {
        "dim": sample.dim,
        "directions": ar.format_matrix(sample.directions),
        "values": ar.format_vector(sample.values),
    }
