"""유리함수체 Q(q) 위의 정확한 스칼라 연산과 q-정수, 평가 준동형.

체의 생성원은 변형 매개변수 q 입니다. 표준 R^(r|s)의 Hecke 매개변수는
p = q**2 이고, 체의 원소로 들어 있습니다. q_int / q_factorial 은 괄호 매개변수를
인자로 받으며 기본값은 생성원 자체입니다.
"""
import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Optional

from sympy import Rational
from sympy.polys.domains import QQ, ZZ
from sympy.polys.fields import field

from src import config
from src.errors import EvalPointError, PoleError

logger = logging.getLogger(__name__)

# --- 1. 기본 체 ---
FIELD, q = field("q", ZZ)
K = FIELD.to_domain()
RING = FIELD.ring
Scalar = FIELD.dtype


def scalar(value: Any) -> Scalar:
    """정수, 유리수, 문자열("num/den" 직렬화)을 Scalar로."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return scalar_from_str(value)
    return FIELD(value)


def is_scalar_like(value: Any) -> bool:
    return isinstance(value, (Scalar, QQ.dtype))


def is_constant(f: Scalar) -> bool:
    """분모가 1이고 분자가 상수항뿐인지 (사영자의 trace 검사용)."""
    return f.denom == 1 and f.numer.degree() <= 0


# --- 2. q-정수 ---
def q_int(n: int, p=None):
    """[n] = (p^n - 1)/(p - 1). n 음수 허용."""
    p = q if p is None else p
    if p == 1:
        return p * 0 + n
    return (p**n - 1) / (p - 1)


def q_factorial(n: int, p=None):
    if n < 0:
        raise ValueError(f"q_factorial: 음수 인자 {n}")
    p = q if p is None else p
    result = p**0
    for j in range(1, n + 1):
        result = result * q_int(j, p)
    return result


# --- 3. 평가점 ---
def parse_rational(text: Any):
    if isinstance(text, QQ.dtype):
        return text
    return QQ.from_sympy(Rational(str(text).strip()))


@dataclass(frozen=True)
class EvalPoint:
    q0: Any
    root_order: int = dc_field(default=config.ROOT_ORDER, compare=False)

    def __post_init__(self):
        value = parse_rational(self.q0)
        object.__setattr__(self, "q0", value)
        if value == 0:
            raise EvalPointError("평가점 q0 = 0 은 허용되지 않습니다.")
        power = QQ.one
        for k in range(1, self.root_order + 1):
            power = power * value
            if power == 1:
                raise EvalPointError(f"평가점 q0 = {value} 는 {k}차 1의 거듭제곱근입니다.")

    @classmethod
    def default(cls) -> "EvalPoint":
        return cls(config.DEFAULT_Q0)

    def __str__(self):
        return str(self.q0)


def _eval_poly(poly, x):
    total = QQ.zero
    for (k,), c in poly.terms():
        total += QQ(int(c)) * x**k
    return total


def eval_at(f: Any, pt: EvalPoint):
    """q = q0 에서의 정확한 유리수 값. 분모가 사라지면 PoleError."""
    if isinstance(f, QQ.dtype):
        return f
    if not isinstance(f, Scalar):
        return QQ.convert(f)
    den = _eval_poly(f.denom, pt.q0)
    if den == 0:
        raise PoleError(f"{scalar_to_str(f)} 의 분모가 q0 = {pt.q0} 에서 0 입니다.")
    return _eval_poly(f.numer, pt.q0) / den


# --- 4. 백엔드 ---
@dataclass(frozen=True)
class Backend:
    """정확(Q(q)) 또는 평가(Q at q0) 선형대수 백엔드."""

    name: str
    point: Optional[EvalPoint] = None

    @property
    def domain(self):
        return K if self.point is None else QQ

    @property
    def exact(self) -> bool:
        return self.point is None

    def convert(self, f: Any):
        if self.point is None:
            return scalar(f)
        return eval_at(f if isinstance(f, QQ.dtype) else scalar(f), self.point)

    def describe(self) -> str:
        return "exact" if self.point is None else f"evaluated@{self.point.q0}"


EXACT = Backend("exact")


def evaluated(point: Optional[EvalPoint] = None) -> Backend:
    return Backend("evaluated", point or EvalPoint.default())


# --- 5. 직렬화 ---
def _poly_to_str(poly) -> str:
    terms = sorted(poly.terms(), key=lambda t: -t[0][0])
    if not terms:
        return "0"
    return " + ".join(f"{int(c)}*q^{k}" for (k,), c in terms)


def _poly_from_str(text: str):
    text = text.strip()
    poly = RING.zero
    if text == "0":
        return poly
    gen = RING.gens[0]
    for term in text.split(" + "):
        if "*q^" not in term:
            poly += RING(int(term))
            continue
        coeff, power = term.split("*q^")
        poly += RING(int(coeff)) * gen ** int(power)
    return poly


def scalar_to_str(f: Scalar) -> str:
    """"num/den", 각 다항식은 "c*q^k" 항을 내림차순으로 " + " 연결."""
    return f"{_poly_to_str(f.numer)}/{_poly_to_str(f.denom)}"


def scalar_from_str(text: str) -> Scalar:
    num, den = text.split("/")
    return FIELD.new(_poly_from_str(num), _poly_from_str(den))


def format_scalar(value: Any) -> str:
    if isinstance(value, Scalar):
        return scalar_to_str(value)
    return str(value)
