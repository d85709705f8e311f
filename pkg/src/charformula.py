"""지표(character)의 기호 계산: x1, x2, x3, y 의 Laurent 다항식, Schur 함수,
닫힌 꼴 지표 공식과 교차 곱셈을 이용한 정확한 비교.

무게 (a1, a2, a3 | b) 는 단항식 x1^a1 x2^a2 x3^a3 y^b 에 대응합니다 (부호 없는 차원 규약).
"""
import logging
from functools import lru_cache
from itertools import permutations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ, ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

from src import config
from src.errors import CharacterOverflowError, InexactDivisionError, NonDominantWeightError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, int, int, int]
VARS = ("x1", "x2", "x3", "y")
POLY_RING, *_GENS = ring(",".join(VARS), ZZ)


# --- 1. Laurent 다항식 ---
class LaurentChar:
    """지수 벡터 → 정수 계수. 0 계수는 저장하지 않습니다."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Sequence[int], int]] = None):
        clean: Dict[Exponent, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != 4:
                raise ValueError(f"지수 벡터는 길이 4 여야 합니다: {e}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        clean = {e: c for e, c in clean.items() if c}
        bound = config.EXPONENT_BOUND
        for e in clean:
            if any(abs(a) > bound for a in e):
                raise CharacterOverflowError(f"지수 {e} 가 상한 {bound} 를 넘습니다.")
        self._terms = clean

    # -- 생성 --
    @classmethod
    def monomial(cls, a1: int = 0, a2: int = 0, a3: int = 0, b: int = 0, coeff: int = 1) -> "LaurentChar":
        return cls({(a1, a2, a3, b): coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentChar":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def from_weight_counts(cls, counts: Dict[Sequence[int], int]) -> "LaurentChar":
        """무게 → 차원 사전 (weight_components 의 출력)에서."""
        return cls({tuple(w): c for w, c in counts.items() if c})

    # -- 조회 --
    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_dim(self) -> int:
        return sum(self._terms.values())

    def evaluate(self, x1, x2, x3, y):
        vals = [QQ.convert(v) for v in (x1, x2, x3, y)]
        total = QQ.zero
        for e, c in self._terms.items():
            term = QQ(c)
            for v, a in zip(vals, e):
                term *= v**a
            total += term
        return total

    # -- 연산 --
    def __add__(self, other: "LaurentChar") -> "LaurentChar":
        other = _as_char(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentChar(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentChar":
        return LaurentChar({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentChar") -> "LaurentChar":
        return self + (-_as_char(other))

    def __rsub__(self, other) -> "LaurentChar":
        return _as_char(other) - self

    def __mul__(self, other: Union["LaurentChar", int]) -> "LaurentChar":
        other = _as_char(other)
        out: Dict[Exponent, int] = {}
        for e, c in self._terms.items():
            for f, k in other._terms.items():
                g = (e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3])
                out[g] = out.get(g, 0) + c * k
        return LaurentChar(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentChar":
        if n < 0:
            if len(self._terms) != 1 or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("음의 거듭제곱은 단항식에만 정의됩니다.")
            (e, c), = self._terms.items()
            return LaurentChar({tuple(n * a for a in e): c ** (-n)})
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentChar.constant(other)
        return isinstance(other, LaurentChar) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def dual(self) -> "LaurentChar":
        """x_i → x_i^{-1}, y → y^{-1}."""
        return LaurentChar({tuple(-a for a in e): c for e, c in self._terms.items()})

    def flip_y(self) -> "LaurentChar":
        """y → -y (부호 있는 초차원 규약)."""
        return LaurentChar({e: c * (-1) ** (e[3] % 2) for e, c in self._terms.items()})

    def permute_x(self, perm: Sequence[int]) -> "LaurentChar":
        """x 변수 치환 (perm[i] 번째 변수 자리로)."""
        out = {}
        for e, c in self._terms.items():
            f = [0, 0, 0, e[3]]
            for i in range(3):
                f[perm[i]] = e[i]
            out[tuple(f)] = c
        return LaurentChar(out)

    # -- 직렬화 --
    def to_terms(self) -> List[str]:
        return [_format_term(e, c) for e, c in sorted(self._terms.items(), reverse=True)]

    @classmethod
    def from_terms(cls, terms: Iterable[str]) -> "LaurentChar":
        out: Dict[Exponent, int] = {}
        for t in terms:
            e, c = _parse_term(t)
            out[e] = out.get(e, 0) + c
        return cls(out)

    def to_json(self) -> List[str]:
        return self.to_terms()

    def __str__(self):
        return " + ".join(self.to_terms()) if self._terms else "0"

    def __repr__(self):
        return f"LaurentChar({self})"


def _as_char(value: Any) -> LaurentChar:
    if isinstance(value, LaurentChar):
        return value
    if isinstance(value, int):
        return LaurentChar.constant(value)
    raise TypeError(f"LaurentChar 로 바꿀 수 없습니다: {value!r}")


def _format_term(e: Exponent, c: int) -> str:
    factors = []
    for name, a in zip(VARS, e):
        if a == 1:
            factors.append(name)
        elif a:
            factors.append(f"{name}^{a}")
    if not factors:
        return str(c)
    mono = "*".join(factors)
    if c == 1:
        return mono
    if c == -1:
        return f"-{mono}"
    return f"{c}*{mono}"


def _parse_term(text: str) -> Tuple[Exponent, int]:
    text = text.strip()
    coeff = 1
    if text.startswith("-") and not text[1:2].isdigit():
        coeff, text = -1, text[1:]
    parts = text.split("*")
    exps = dict.fromkeys(VARS, 0)
    for part in parts:
        if part.lstrip("-").isdigit():
            coeff *= int(part)
            continue
        name, _, power = part.partition("^")
        exps[name] += int(power) if power else 1
    return tuple(exps[v] for v in VARS), coeff


ZERO = LaurentChar()
ONE = LaurentChar.constant(1)
X1 = LaurentChar.monomial(1, 0, 0, 0)
X2 = LaurentChar.monomial(0, 1, 0, 0)
X3 = LaurentChar.monomial(0, 0, 1, 0)
Y = LaurentChar.monomial(0, 0, 0, 1)
XS = (X1, X2, X3)
BER = LaurentChar.monomial(1, 1, 1, -1)
CH_V = X1 + X2 + X3 + Y


# --- 2. 정확한 나눗셈 ---
def _to_poly(c: LaurentChar):
    """(다항식, 이동 지수). c = x^shift · poly."""
    if c.is_zero():
        return POLY_RING.zero, (0, 0, 0, 0)
    shift = tuple(min(e[i] for e in c.terms) for i in range(4))
    poly = POLY_RING.from_dict({tuple(a - s for a, s in zip(e, shift)): k for e, k in c.terms.items()})
    return poly, shift


def _from_poly(poly, shift) -> LaurentChar:
    return LaurentChar({tuple(int(a) + s for a, s in zip(e, shift)): int(k) for e, k in poly.terms()})


def exact_divide(a: LaurentChar, b: LaurentChar) -> LaurentChar:
    """a / b, 나누어떨어지지 않으면 InexactDivisionError."""
    if b.is_zero():
        raise ZeroDivisionError("0 인 지표로 나눌 수 없습니다.")
    pa, sa = _to_poly(a)
    pb, sb = _to_poly(b)
    try:
        quotient = pa.exquo(pb)
    except ExactQuotientFailed as exc:
        raise InexactDivisionError(f"나누어떨어지지 않습니다: ({a}) / ({b})") from exc
    return _from_poly(quotient, tuple(x - y for x, y in zip(sa, sb)))


class RationalCharExpr:
    """numerator / denominator. 비교는 교차 곱셈으로만."""

    def __init__(self, numerator: LaurentChar, denominator: LaurentChar):
        if denominator.is_zero():
            raise ZeroDivisionError("분모가 0 입니다.")
        self.numerator = numerator
        self.denominator = denominator

    def value(self) -> LaurentChar:
        return exact_divide(self.numerator, self.denominator)

    def to_json(self) -> Dict[str, List[str]]:
        return {"numerator": self.numerator.to_terms(), "denominator": self.denominator.to_terms()}


CharLike = Union[LaurentChar, RationalCharExpr]


def _fraction(c: CharLike) -> Tuple[LaurentChar, LaurentChar]:
    if isinstance(c, RationalCharExpr):
        return c.numerator, c.denominator
    return c, ONE


def char_equal(a: CharLike, b: CharLike) -> Tuple[bool, Optional[str]]:
    """교차 곱셈 비교. 다르면 첫 차이 단항식을 함께 돌려줍니다."""
    na, da = _fraction(a)
    nb, db = _fraction(b)
    diff = na * db - nb * da
    if diff.is_zero():
        return True, None
    return False, diff.to_terms()[0]


# --- 3. Schur 함수 ---
VANDERMONDE = (X1 - X2) * (X2 - X3) * (X1 - X3)


def _sign(perm: Sequence[int]) -> int:
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


def alternant(exps: Sequence[int]) -> LaurentChar:
    """det(x_i^{exps_j})."""
    out = ZERO
    for perm in permutations(range(3)):
        e = [0, 0, 0, 0]
        for i in range(3):
            e[i] = exps[perm[i]]
        out = out + LaurentChar.monomial(*e, coeff=_sign(perm))
    return out


def _check_dominant(m: int, n: int, p: int):
    if not m >= n >= p:
        raise NonDominantWeightError(f"지배적이지 않은 세 쌍 ({m}, {n}, {p})")


@lru_cache(maxsize=None)
def schur3(m: int, n: int, p: int) -> LaurentChar:
    """S(m,n,p)(x1,x2,x3), 쌍교대식 / Vandermonde. 음수는 (x1x2x3)^p 로 이동."""
    _check_dominant(m, n, p)
    base = exact_divide(alternant((m - p + 2, n - p + 1, 0)), VANDERMONDE)
    return base * LaurentChar.monomial(p, p, p, 0)


def complete_h(n: int) -> LaurentChar:
    if n < 0:
        return ZERO
    return LaurentChar({(a, b, n - a - b, 0): 1 for a in range(n + 1) for b in range(n + 1 - a)})


def elementary_e(j: int) -> LaurentChar:
    if j < 0 or j > 3:
        return ZERO
    out = ZERO
    for mask in range(8):
        if bin(mask).count("1") == j:
            out = out + LaurentChar.monomial(*(1 if mask >> i & 1 else 0 for i in range(3)), 0)
    return out


def ch_sym(n: int) -> LaurentChar:
    """S_n: h_n(x) + y h_{n-1}(x)."""
    if n < 0:
        return ZERO
    return complete_h(n) + Y * complete_h(n - 1)


def ch_ext(n: int) -> LaurentChar:
    """Λ_n: Σ_j e_j(x) y^{n-j}."""
    if n < 0:
        return ZERO
    return sum((elementary_e(j) * LaurentChar.monomial(0, 0, 0, n - j) for j in range(0, min(n, 3) + 1)), ZERO)


# --- 4. 훅 Schur 함수 (초타블로 열거) ---
@lru_cache(maxsize=None)
def hook_schur(parts: Tuple[int, ...]) -> LaurentChar:
    """(3|1) 반표준 초타블로의 합. 1,2,3 짝, 4 홀.

    행: 증가, 같은 값은 짝 글자만. 열: 증가, 같은 값은 홀 글자만."""
    parts = tuple(x for x in parts if x)
    boxes = [(r, c) for r, length in enumerate(parts) for c in range(length)]
    filling: Dict[Tuple[int, int], int] = {}
    counts: Dict[Exponent, int] = {}

    def ok(r: int, c: int, v: int) -> bool:
        left = filling.get((r, c - 1))
        if left is not None and not (left < v or (left == v and v <= 3)):
            return False
        up = filling.get((r - 1, c))
        if up is not None and not (up < v or (up == v and v == 4)):
            return False
        return True

    def rec(pos: int):
        if pos == len(boxes):
            e = [0, 0, 0, 0]
            for v in filling.values():
                e[v - 1] += 1
            key = tuple(e)
            counts[key] = counts.get(key, 0) + 1
            return
        r, c = boxes[pos]
        for v in range(1, 5):
            if ok(r, c, v):
                filling[(r, c)] = v
                rec(pos + 1)
                del filling[(r, c)]

    rec(0)
    return LaurentChar(counts)


# --- 5. 닫힌 꼴 지표 ---
PROD_XY = (X1 + Y) * (X2 + Y) * (X3 + Y)


def _mono(a1=0, a2=0, a3=0, b=0) -> LaurentChar:
    return LaurentChar.monomial(a1, a2, a3, b)


def _cyclic_sum(term) -> LaurentChar:
    """Σ over (i,j,k) ∈ {(1,2,3), (2,3,1), (3,1,2)} of term(i, j, k) (0-기반)."""
    return sum((term(i, j, k) for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))), ZERO)


def _xpow(i: int, a: int) -> LaurentChar:
    e = [0, 0, 0, 0]
    e[i] = a
    return LaurentChar.monomial(*e)


def hook_char(m: int, n: int, p: int) -> LaurentChar:
    """m ≥ n ≥ p ≥ 1: (x1x2x3)^{p-1} Π(x_i+y) S(m-p, n-p, 0)."""
    _check_dominant(m, n, p)
    if p < 1:
        raise ValueError("훅 공식은 p ≥ 1 에서만 씁니다.")
    return _mono(p - 1, p - 1, p - 1) * PROD_XY * schur3(m - p, n - p, 0)


def two_row_expr(m: int, n: int) -> RationalCharExpr:
    """I(m,n,0|0), m ≥ n ≥ 0 (n = 0 이면 한 줄 공식과 같습니다)."""
    _check_dominant(m, n, 0)
    # Π(x+y)·Σ(...)/(x_i+y) 에서 (x_i+y) 를 약분한 분자
    num = _cyclic_sum(
        lambda i, j, k: (XS[j] + Y) * (XS[k] + Y)
        * (_xpow(j, m + 1) * _xpow(k, n) - _xpow(j, n) * _xpow(k, m + 1))
    )
    return RationalCharExpr(num, VANDERMONDE)


def two_row_char(m: int, n: int) -> LaurentChar:
    return two_row_expr(m, n).value()


def im_d_closed(k: int, l: int) -> LaurentChar:
    """k - l ≠ 2, k ≥ 2: Π(x_i+y) y^{k-3} / (x1x2x3)^l · S(l,l,0)."""
    if k - l == 2 or k < 2 or l < 0:
        raise ValueError(f"Im d 닫힌 꼴은 k-l≠2, k≥2, l≥0 에서만: ({k}, {l})")
    return PROD_XY * _mono(-l, -l, -l, k - 3) * schur3(l, l, 0)


def mmp_char(m: int, p: int) -> LaurentChar:
    """I(m,m,p|0), m ≥ 0 > p: Π(x_i+y) (x1x2x3)^{p-1} S(m-p, m-p, 0)."""
    if not m >= 0 > p:
        raise ValueError(f"(m,m,p) 공식은 m ≥ 0 > p 에서만: ({m}, {p})")
    return PROD_XY * _mono(p - 1, p - 1, p - 1) * schur3(m - p, m - p, 0)


def x_expr(i: int, a: int) -> RationalCharExpr:
    """X_{i,a}, i ≥ 0, a + i ≥ 0."""
    if i < 0 or a + i < 0:
        raise ValueError(f"X_(i,a) 범위 밖: ({i}, {a})")
    lo, hi = -a - i - 1, i + 2
    num = _cyclic_sum(
        lambda s, t, u: XS[s] * (XS[t] + Y) * (XS[u] + Y) * (_xpow(t, lo) * _xpow(u, hi) - _xpow(t, hi) * _xpow(u, lo))
    )
    return RationalCharExpr(num, VANDERMONDE * Y)


def x_char(i: int, a: int) -> LaurentChar:
    return x_expr(i, a).value()


def y_closed(i: int, k: int, a: int) -> LaurentChar:
    """Y_{i,k,a}, a+i+3 ≠ 0: Π(x_i+y) y^{k-3} / (x1x2x3)^{a+i+k+1} · S(a+2i+k+2, a+i+k+1, 0)."""
    if i < 0 or k < 2 or a + i + k < 0:
        raise ValueError(f"Y_(i,k,a) 범위 밖: ({i}, {k}, {a})")
    if a + i + 3 == 0:
        raise ValueError("a+i+3 = 0 인 경우는 분해열로 계산합니다.")
    e = a + i + k + 1
    return PROD_XY * _mono(-e, -e, -e, k - 3) * schur3(a + 2 * i + k + 2, e, 0)


# --- 6. 완전열에서 얻는 지표 ---
def ch_K(k: int, l: int) -> LaurentChar:
    return ch_ext(k) * ch_sym(l).dual()


def ch_L(p: int, r: int) -> LaurentChar:
    return ch_sym(p) * ch_ext(r)


@lru_cache(maxsize=None)
def im_d_char(k: int, l: int) -> LaurentChar:
    """ch Im d_{k,l} = ch K_{k,l} - ch Im d_{k-1,l-1} (K_{3,1} 에서는 Ber 도 뺌)."""
    if k < 0 or l < 0:
        return ZERO
    ch = ch_K(k, l) - im_d_char(k - 1, l - 1)
    if (k, l) == (3, 1):
        ch = ch - BER
    return ch


@lru_cache(maxsize=None)
def ker_p_char(i: int, j: int) -> LaurentChar:
    """ch Ker P_{i,j} = Σ_{t=0}^{j-1} (-1)^t ch S_{i+1+t} ch Λ_{j-1-t}."""
    return sum((((-1) ** t) * ch_sym(i + 1 + t) * ch_ext(j - 1 - t) for t in range(j)), ZERO)


def y_char(i: int, k: int, a: int) -> LaurentChar:
    """a+i+3 ≠ 0 이면 닫힌 꼴, 아니면 S_{i+1}·Im d 에서 Ker P·S* 를 뺀 값."""
    if a + i + 3 != 0:
        return y_closed(i, k, a)
    return y_char_from_split(i, k, a)


def y_char_from_split(i: int, k: int, a: int) -> LaurentChar:
    l = a + i + k + 1
    return ch_sym(i + 1) * im_d_char(k, l) - ker_p_char(i, k + 1) * ch_sym(l).dual()


def x_char_from_split(i: int, a: int) -> LaurentChar:
    return ch_sym(i + 1) * ch_sym(a + i + 1).dual() - ch_sym(i) * ch_sym(a + i).dual()


FAMILIES = {
    "hook": hook_char,
    "two_row": two_row_char,
    "one_row": lambda m: two_row_char(m, 0),
    "ber": lambda: BER,
    "im_d": im_d_closed,
    "mmp": mmp_char,
    "X": x_char,
    "Y": y_char,
}


def formula_char(family: str, *params: int) -> LaurentChar:
    """닫힌 꼴 지표 (family ∈ hook, two_row, one_row, ber, im_d, mmp, X, Y)."""
    try:
        fn = FAMILIES[family]
    except KeyError as exc:
        raise ValueError(f"알 수 없는 공식 {family}") from exc
    logger.info("[Char] %s%s", family, params)
    return fn(*params)
