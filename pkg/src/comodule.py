"""지배적 무게 (m,n,p|t) 의 기약 코모듈 I(m,n,p|t) 조립: 경우 나누기, 구성 계획,
지표의 곱셈적 조립과 (예산 안이면) 명시적 부분공간의 지표와의 대조.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import pandas as pd

from src.charformula import (
    BER,
    CH_V,
    LaurentChar,
    char_equal,
    hook_char,
    hook_schur,
    im_d_char,
    im_d_closed,
    two_row_char,
    x_char,
    y_char,
)
from src.doublecx import extract_X, extract_Y, loop_ker_degree, loop_s_degree
from src.errors import BudgetExceededError, NonDominantWeightError, NonStandardSymmetryError
from src.hecke import HeckeSymmetry, young_module
from src.koszul import berezinian_line, image_of_d
from src.tensorspace import Subspace, weight_components

logger = logging.getLogger(__name__)

# 경우 표시: 무게를 I(·|0) 로 줄인 뒤의 분류
YOUNG = "young"  # m ≥ n ≥ p ≥ 0
IM_D = "im_d"  # m = n ≥ 0 > p
Y_CASE = "Y"  # m > n ≥ 0 > p
X_CASE = "X"  # m ≥ 0 > n = -1
DUAL_3B = "dual_3b"  # m ≥ 0, n ≤ -2
DUAL_4A = "dual_4a"  # m = n = -1
DUAL_4B = "dual_4b"  # m = -1 > n
DUAL_4C = "dual_4c"  # m = -2
DUAL_4D = "dual_4d"  # m < -2
BEREZINIAN = "berezinian"
CASES = (YOUNG, IM_D, Y_CASE, X_CASE, DUAL_3B, DUAL_4A, DUAL_4B, DUAL_4C, DUAL_4D)

BERE_DEGREE = 6


# --- 1. 무게와 계획 ---
@dataclass(frozen=True)
class WeightLabel:
    m: int
    n: int
    p: int
    t: int = 0

    def __post_init__(self):
        if not self.m >= self.n >= self.p:
            raise NonDominantWeightError(f"지배적이지 않은 무게 {self}")

    @classmethod
    def parse(cls, text: str) -> "WeightLabel":
        parts = [int(x) for x in text.replace("|", ",").split(",") if x.strip()]
        if len(parts) == 3:
            parts.append(0)
        if len(parts) != 4:
            raise ValueError(f"무게는 m,n,p,t 형식이어야 합니다: {text!r}")
        return cls(*parts)

    @property
    def reduced(self) -> Tuple[int, int, int]:
        return self.m - self.t, self.n - self.t, self.p - self.t

    def __str__(self):
        return f"({self.m},{self.n},{self.p}|{self.t})"


@dataclass
class ConstructionPlan:
    case: str
    weight: WeightLabel
    base: Optional[str]
    params: Dict[str, Any] = field(default_factory=dict)
    dual_count: int = 0
    twist: int = 0
    child: Optional["ConstructionPlan"] = None

    def to_json(self) -> Dict[str, Any]:
        out = {
            "case": self.case,
            "weight": str(self.weight),
            "base": self.base,
            "params": self.params,
            "dual_count": self.dual_count,
            "twist": self.twist,
        }
        if self.child is not None:
            out["child"] = self.child.to_json()
        return out


def classify(m: int, n: int, p: int) -> str:
    """I(m,n,p|0) 의 경우. 네 가지 큰 경우 (m ≥ 0, m = -1, m = -2, m < -2) 를 차례로."""
    if not m >= n >= p:
        raise NonDominantWeightError(f"지배적이지 않은 세 쌍 ({m}, {n}, {p})")
    if m >= 0:
        if p >= 0:
            return YOUNG
        if n >= 0:
            return IM_D if m == n else Y_CASE
        return X_CASE if n == -1 else DUAL_3B
    if m == -1:
        return DUAL_4A if n == -1 else DUAL_4B
    if m == -2:
        return DUAL_4C
    return DUAL_4D


def plan_for(w: WeightLabel) -> ConstructionPlan:
    m, n, p = w.reduced
    t = w.t
    if (m, n, p) == (0, 0, 0) and t != 0:
        return ConstructionPlan(BEREZINIAN, w, BEREZINIAN, {}, 0, t)
    case = classify(m, n, p)
    if case == YOUNG:
        return ConstructionPlan(case, w, "young_module", {"parts": [m, n, p]}, 0, t)
    if case == IM_D:
        return ConstructionPlan(case, w, "image_splitting", {"k": m + 2, "l": m - p}, 0, m - 1 + t)
    if case == Y_CASE:
        params = {"i": m - n - 1, "k": n + 2, "a": n - m - p - 2}
        return ConstructionPlan(case, w, "extract_Y", params, 0, -(n - 1) + t)
    if case == X_CASE:
        return ConstructionPlan(case, w, "extract_X", {"i": m, "a": -m - p - 1}, 0, -1 + t)
    if case == DUAL_4A:
        child, twist = WeightLabel(-p, 0, 0), -1
    elif case == DUAL_4C:
        child, twist = WeightLabel(-p - 1, -n - 1, 0), -2
    else:
        child, twist = WeightLabel(-2 - p, -2 - n, -2 - m), -3
    return ConstructionPlan(case, w, None, {}, 1, twist + t, plan_for(child))


def dispatch_table(box: int, t_values: Tuple[int, ...] = (0,)) -> Iterator[Tuple[WeightLabel, str]]:
    """성분이 [-box, box] 인 모든 지배적 무게와 그 경우."""
    for m in range(-box, box + 1):
        for n in range(-box, m + 1):
            for p in range(-box, n + 1):
                for t in t_values:
                    w = WeightLabel(m, n, p, t)
                    yield w, plan_for(w).case


# --- 2. 지표 ---
def _require_standard(H: HeckeSymmetry):
    if not H.standard or (H.dims.r, H.dims.s) != (3, 1):
        raise NonStandardSymmetryError("지표는 표준 R^(3|1) 에서만 정의됩니다.")


def character_of(H: HeckeSymmetry, W: Subspace) -> LaurentChar:
    """Σ_μ dim(W_μ) x^μ, e^{ε_i} ↦ x_i (i ≤ 3), e^{ε_4} ↦ y."""
    _require_standard(H)
    return LaurentChar.from_weight_counts(weight_components(W))


def dual_char(c: LaurentChar) -> LaurentChar:
    return c.dual()


def berezinian(H: HeckeSymmetry) -> Subspace:
    _require_standard(H)
    return berezinian_line(H)


def _base_char(plan: ConstructionPlan) -> LaurentChar:
    params = plan.params
    if plan.base == "young_module":
        m, n, p = params["parts"]
        return hook_char(m, n, p) if p >= 1 else two_row_char(m, n)
    if plan.base == "image_splitting":
        return im_d_closed(params["k"], params["l"])
    if plan.base == "extract_X":
        return x_char(params["i"], params["a"])
    if plan.base == "extract_Y":
        return y_char(params["i"], params["k"], params["a"])
    return LaurentChar.constant(1)


def plan_character(plan: ConstructionPlan) -> LaurentChar:
    """텐서 ↦ 곱, 쌍대 ↦ 변수 역수, Berezinian 꼬임 ↦ (x1x2x3/y)^{±1} 곱."""
    if plan.child is not None:
        ch = plan_character(plan.child).dual()
    else:
        ch = _base_char(plan)
    return ch * BER**plan.twist


def plan_degree(plan: ConstructionPlan) -> int:
    """명시적 실현에 필요한 가장 큰 텐서 차수."""
    if plan.child is not None:
        return plan_degree(plan.child)
    params = plan.params
    if plan.base == "young_module":
        return sum(params["parts"])
    if plan.base == "image_splitting":
        return params["k"] + params["l"] + 2
    if plan.base == "extract_X":
        return loop_s_degree(params["i"], params["a"])
    if plan.base == "extract_Y":
        return loop_ker_degree(params["i"], params["k"], params["a"])
    return BERE_DEGREE


def _realize(H: HeckeSymmetry, plan: ConstructionPlan) -> Tuple[Subspace, LaurentChar]:
    """명시적 부분공간과, 계획대로 꼬고 쌍대를 취한 그 지표."""
    if plan.child is not None:
        W, ch = _realize(H, plan.child)
        return W, ch.dual() * BER**plan.twist
    params = plan.params
    if plan.base == BEREZINIAN:
        W = berezinian(H)
        return W, character_of(H, W) ** plan.twist
    if plan.base == "young_module":
        W = young_module(H, params["parts"])
    elif plan.base == "image_splitting":
        W = image_of_d(H, params["k"], params["l"])
    elif plan.base == "extract_X":
        W = extract_X(H, params["i"], params["a"]).summand
    else:
        W = extract_Y(H, params["i"], params["k"], params["a"]).summand
    return W, character_of(H, W) * BER**plan.twist


@dataclass
class IrrepResult:
    weight: WeightLabel
    plan: ConstructionPlan
    character: LaurentChar
    backend: Optional[str] = None
    explicit_character: Optional[LaurentChar] = None
    verified: Optional[bool] = None
    budget_exceeded: bool = False
    subspace: Optional[Subspace] = field(default=None, repr=False)

    def to_json(self) -> Dict[str, Any]:
        by_weight = {",".join(str(a) for a in e): c for e, c in sorted(self.character.terms.items())}
        out = {
            "weight": str(self.weight),
            "case": self.plan.case,
            "plan": self.plan.to_json(),
            "character": self.character.to_terms(),
            "dims": {"total": self.character.total_dim(), "by_weight": by_weight},
            "backend": self.backend,
            "verified": self.verified,
            "budget_exceeded": self.budget_exceeded,
        }
        if self.subspace is not None:
            out["subspace_dim"] = self.subspace.dim
        return out


def build_irrep(w: WeightLabel, H: Optional[HeckeSymmetry] = None, budget: Optional[int] = None) -> IrrepResult:
    """계획과 조립된 지표. H 가 주어지고 예산 안이면 명시적 부분공간으로 대조합니다."""
    plan = plan_for(w)
    character = plan_character(plan)
    result = IrrepResult(w, plan, character)
    if H is None:
        return result
    result.backend = H.backend.describe()
    degree = plan_degree(plan)
    if budget is not None and degree > budget:
        result.budget_exceeded = True
        logger.info("[Irrep] %s: 차수 %d 가 예산 %d 를 넘어 지표만 돌려줍니다.", w, degree, budget)
        return result
    try:
        W, explicit = _realize(H, plan)
    except BudgetExceededError as exc:
        result.budget_exceeded = True
        logger.info("[Irrep] %s: %s", w, exc)
        return result
    result.subspace = W
    result.explicit_character = explicit
    result.verified = explicit == character
    if not result.verified:
        logger.warning("[Irrep] %s: 명시적 지표와 조립된 지표가 다릅니다.", w)
    return result


# --- 3. 보조 검사 ---
def sign_convention_check() -> Dict[str, Any]:
    """한 줄 공식 (1,0,0|0) 을 ch(V) 와 y, -y 두 규약으로 비교."""
    formula = two_row_char(1, 0)
    plain, _ = char_equal(formula, CH_V)
    signed, _ = char_equal(formula, CH_V.flip_y())
    if plain and not signed:
        convention = "y"
    elif signed and not plain:
        convention = "-y"
    else:
        convention = None
    return {
        "formula": formula.to_terms(),
        "plain": plain,
        "signed": signed,
        "convention": convention,
        "decisive": convention is not None,
        "value_at_1231": str(formula.evaluate(1, 2, 3, 1)),
    }


def decomposition_series(k: int) -> Dict[str, Any]:
    """ch Im d_{k,k-2} = ch I(1,1,2-k|2-k) + ch I(1,1,3-k|3-k) (k ≥ 3), k = 2 이면 Λ_2."""
    lhs = im_d_char(k, k - 2)
    if k == 2:
        rhs = hook_schur((1, 1))
    else:
        parts = [WeightLabel(1, 1, 2 - k, 2 - k), WeightLabel(1, 1, 3 - k, 3 - k)]
        rhs = sum((plan_character(plan_for(w)) for w in parts), LaurentChar())
    ok, witness = char_equal(lhs, rhs)
    return {"k": k, "ok": ok, "witness": witness, "character": lhs}


def char_table(box: int) -> List[Dict[str, Any]]:
    rows = []
    for w, case in dispatch_table(box):
        ch = plan_character(plan_for(w))
        rows.append({"weight": str(w), "case": case, "dim": ch.total_dim(), "character": ch})
    return rows


def char_table_frame(rows: List[Dict[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(
        [{**row, "character": " + ".join(row["character"].to_terms())} for row in rows],
        columns=["weight", "case", "dim", "character"],
    )


def dispatch_frame(box: int, t_values: Tuple[int, ...] = (0,)) -> pd.DataFrame:
    """경우 나누기 표: 무게, 경우, 쌍대 횟수, 최종 꼬임."""
    rows = []
    for w, case in dispatch_table(box, t_values):
        plan = plan_for(w)
        rows.append({"weight": str(w), "case": case, "dual_count": plan.dual_count, "twist": plan.twist})
    return pd.DataFrame(rows, columns=["weight", "case", "dual_count", "twist"])
