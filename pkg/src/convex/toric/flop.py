"""
フロップの例: ℙ(𝒪⊕𝒪⊕𝒪(-1)) 上の因子 aξ + bf の切断の数と体積

H⁰(aξ + bf) は ℙ¹ 上の Symᵃ(𝒪⊕𝒪⊕𝒪(-1)) ⊗ 𝒪(b) の大域切断なので、
重み k の直和成分 𝒪(b-k)^{a-k+1} ごとに数えて

    h⁰ = Σ_{k=0}^{min(a,b)} (a-k+1)(b-k+1)

となります。体積は b >= a で 3ba² - a³、a >= b で 3ab² - b³ の区分的な
3 次式で、壁 a = b を越えると多項式として続きません。
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Tuple

from src.config.constants import FLOP_ASYMPTOTIC_TOLERANCE, FLOP_LADDER
from src.convex.exceptions import DegenerateInput, NegativeScale
from src.convex.inequalities.report import LABEL_ANALOGUE, CheckReport
from src.convex.toric.extrapolation import richardson


@dataclass(frozen=True)
class FlopDivisor:
    """因子 aξ + bf（a, b は 0 以上の整数）"""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise NegativeScale(f"係数は 0 以上である必要があります: a={self.a}, b={self.b}")

    def scaled(self, m: int) -> "FlopDivisor":
        return FlopDivisor(m * self.a, m * self.b)


def section_count_flop(divisor: FlopDivisor) -> int:
    """h⁰(aξ + bf) を重み空間ごとの和で数える"""
    a, b = divisor.a, divisor.b
    return sum((a - k + 1) * (b - k + 1) for k in range(min(a, b) + 1))


def section_count_closed_form(divisor: FlopDivisor) -> Fraction:
    """
    h⁰ の閉じた式

    b >= a: ba²/2 - a³/6 + 3ab/2 + b + 7a/6 + 1（a >= b は a, b を入れ替えた式）
    """
    a, b = divisor.a, divisor.b
    if a > b:
        a, b = b, a
    return (
        Fraction(b * a * a, 2)
        - Fraction(a**3, 6)
        + Fraction(3 * a * b, 2)
        + b
        + Fraction(7 * a, 6)
        + 1
    )


def volume_closed_form(divisor: FlopDivisor) -> int:
    """b >= a で 3ba² - a³、a >= b で 3ab² - b³"""
    a, b = divisor.a, divisor.b
    if b >= a:
        return 3 * b * a * a - a**3
    return 3 * a * b * b - b**3


def volume_flop(divisor: FlopDivisor) -> Tuple[int, Fraction]:
    """
    体積の閉じた式と、3!·h⁰(m·D)/m³ の m ∈ {8, 16, 32, 64} からのリチャードソン外挿

    h⁰(m·D) は m の 3 次多項式なので、3 段の消去で外挿値は厳密に一致します。

    Raises:
        DegenerateInput: (a, b) = (0, 0) の場合
    """
    if divisor.a == 0 and divisor.b == 0:
        raise DegenerateInput("(a, b) = (0, 0) の体積は扱いません")
    samples = [
        Fraction(math.factorial(3) * section_count_flop(divisor.scaled(m)), m**3) for m in FLOP_LADDER
    ]
    return volume_closed_form(divisor), richardson(samples)


def check_flop_volume(divisor: FlopDivisor) -> CheckReport:
    """
    閉じた式と外挿値の一致（相対 1%）、および h⁰ の和と閉じた式の一致

    lhs = 1%·体積, rhs = |体積 - 外挿値|。h⁰ の閉じた式が和と食い違えば slack を負にします。
    """
    closed, asymptotic = volume_flop(divisor)
    count = section_count_flop(divisor)
    formula = section_count_closed_form(divisor)
    bound = FLOP_ASYMPTOTIC_TOLERANCE * Fraction(closed)
    gap = abs(Fraction(closed) - asymptotic)
    report = CheckReport.build(
        "flop_volume",
        bound,
        gap,
        0.0,
        witnesses={
            "a": divisor.a,
            "b": divisor.b,
            "volume": closed,
            "asymptotic": asymptotic,
            "section_count": count,
            "section_count_closed_form": formula,
        },
        label=LABEL_ANALOGUE,
    )
    if formula != count:
        report.slack = min(report.slack, -abs(formula - count))
    return report


@dataclass(frozen=True)
class WallJump:
    """
    壁 a = b を横切る 2 階差分

    Attributes:
        delta_plus: a >= b 側の片側 2 階差分
        delta_minus: b >= a 側の片側 2 階差分
        continuation: b >= a の多項式を a >= b 側へ延長したときの 2 階差分
        observed: delta_plus - continuation
        predicted: 2 つの閉じた式の差 (a - b)³ の 2 階差分（= 48h³）
    """

    delta_plus: Fraction
    delta_minus: Fraction
    continuation: Fraction
    observed: Fraction
    predicted: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {key: str(value) for key, value in self.__dict__.items()}


def _volume_at(a: Fraction, b: Fraction) -> Fraction:
    if b >= a:
        return 3 * b * a * a - a**3
    return 3 * a * b * b - b**3


def _polynomial_below(a: Fraction, b: Fraction) -> Fraction:
    return 3 * b * a * a - a**3


def flop_wall_jump(t: Any = 1, h: Any = Fraction(1, 10)) -> WallJump:
    """
    壁上の点 (t, t) から方向 (1, -1) に沿った片側 2 階差分の跳び

    体積は壁を越えて C² なので跳びは h の 3 次 (48h³) です。有理数で厳密に計算します。

    Raises:
        DegenerateInput: t <= 0 または h <= 0 の場合
    """
    t, h = Fraction(t), Fraction(h)
    if t <= 0 or h <= 0:
        raise DegenerateInput("t, h は正である必要があります")

    def along(func, s: Fraction) -> Fraction:
        return func(t + s, t - s)

    delta_plus = along(_volume_at, 2 * h) - 2 * along(_volume_at, h) + along(_volume_at, Fraction(0))
    delta_minus = along(_volume_at, -2 * h) - 2 * along(_volume_at, -h) + along(_volume_at, Fraction(0))
    continuation = (
        along(_polynomial_below, 2 * h) - 2 * along(_polynomial_below, h) + along(_polynomial_below, Fraction(0))
    )

    def correction(a: Fraction, b: Fraction) -> Fraction:
        return (3 * a * b * b - b**3) - (3 * b * a * a - a**3)

    predicted = along(correction, 2 * h) - 2 * along(correction, h) + along(correction, Fraction(0))
    return WallJump(
        delta_plus=delta_plus,
        delta_minus=delta_minus,
        continuation=continuation,
        observed=delta_plus - continuation,
        predicted=predicted,
    )
