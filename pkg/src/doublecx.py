"""이중 Koszul 복합체의 고리 사상 ∂PQd, P∂dQ 의 고유값 검증과
사영자를 이용한 직합 성분 X_{i,a}, Y_{i,k,a} 의 추출.

연산자 기호는 오른쪽부터 읽습니다 (∂PQd 는 d 가 먼저).
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from sympy.polys.domains import QQ

from src import config
from src.charformula import LaurentChar
from src.errors import BudgetExceededError, NonInvertibleLoopError
from src.hecke import HeckeSymmetry, check_budget, degree_budget
from src.koszul import (
    T_space,
    factor_space,
    image_of_d,
    lift_subspace,
    p_map,
    t_d,
    t_p,
    t_partial,
    t_q,
)
from src.scalar import EvalPoint, format_scalar, q_int
from src.tensorspace import LinMap, Subspace, image_kernel, restrict, weight_components

logger = logging.getLogger(__name__)

LOOP_S = "loop_S"
LOOP_KER = "loop_ker"


# --- 1. 고리 사상 ---
def _check_loop_s(i: int, a: int):
    if i < 0 or a + i < 0:
        raise ValueError(f"loop_S 범위 밖: i={i}, a={a}")


def _check_loop_ker(i: int, k: int, a: int):
    if i < 0 or k < 1 or a + i + k + 1 < 0:
        raise ValueError(f"loop_ker 범위 밖: i={i}, k={k}, a={a}")


def loop_s_degree(i: int, a: int) -> int:
    return 2 * i + a + 2


def loop_ker_degree(i: int, k: int, a: int) -> int:
    return 2 * i + 2 * k + a + 4


def _s_legs(H: HeckeSymmetry, i: int, a: int) -> Tuple[LinMap, LinMap]:
    """(Qd: S_i·S_{a+i}* → S_{i+1}·S_{a+i+1}*, ∂P: 그 반대 방향)."""
    l = a + i
    Qd = t_q(H, i + 1, 0, l + 1) @ t_d(H, i, 0, l)
    dP = t_partial(H, i, 0, l) @ t_p(H, i + 1, 0, l + 1)
    return Qd, dP


def loop_S(H: HeckeSymmetry, i: int, a: int) -> LinMap:
    """∂PQd on S_i⊗S_{a+i}*."""
    _check_loop_s(i, a)
    check_budget(H, loop_s_degree(i, a), what=f"loop_S({i},{a})")
    Qd, dP = _s_legs(H, i, a)
    return dP @ Qd


def ker_P(H: HeckeSymmetry, i: int, k: int) -> Subspace:
    """Ker P_{i,k} ⊆ S_i⊗Λ_k. Im P_{i+1,k-1} 과 같은지 서로 포함으로 확인합니다."""
    key = ("kerP", i, k)
    if key in H._cache:
        return H._cache[key]
    _, kernel = image_kernel(p_map(H, i, k))
    kernel.label = f"Ker P_({i},{k})"
    if not ker_equals_image(H, i, k, kernel):
        logger.warning("[DoubleCx] Ker P_(%d,%d) 가 Im P_(%d,%d) 와 다릅니다.", i, k, i + 1, k - 1)
    H._cache[key] = kernel
    return kernel


def ker_equals_image(H: HeckeSymmetry, i: int, k: int, kernel: Optional[Subspace] = None) -> bool:
    if kernel is None:
        kernel = image_kernel(p_map(H, i, k))[1]
    if k == 0:
        return kernel.dim == 0
    image = image_kernel(p_map(H, i + 1, k - 1))[0]
    return (
        image.dim == kernel.dim
        and all(kernel.contains(v) for v in image.vectors)
        and all(image.contains(v) for v in kernel.vectors)
    )


def _ker_tensor(H: HeckeSymmetry, i: int, k: int, a: int) -> Subspace:
    """Ker P_{i,k+1} ⊗ S_{a+i+k+1}* ⊆ T_{i,k+1,a+i+k+1}."""
    l = a + i + k + 1
    W = lift_subspace(H, ker_P(H, i, k + 1), 1, factor_space(H, "S*", l).dim, T_space(H, i, k + 1, l))
    W.label = f"Ker P_({i},{k + 1})·S_{l}*"
    return W


def _ker_legs(H: HeckeSymmetry, i: int, k: int, a: int) -> Tuple[LinMap, LinMap]:
    """(dQ: T_{i,k+1,l} → T_{i+1,k+1,l+1}, P∂: 그 반대 방향), l = a+i+k+1."""
    l = a + i + k + 1
    dQ = t_d(H, i + 1, k, l) @ t_q(H, i + 1, k, l)
    Pd = t_p(H, i + 1, k, l) @ t_partial(H, i + 1, k, l)
    return dQ, Pd


def loop_ker(H: HeckeSymmetry, i: int, k: int, a: int) -> LinMap:
    """P∂dQ 를 Ker P_{i,k+1}⊗S_{a+i+k+1}* 에 제한한 행렬."""
    _check_loop_ker(i, k, a)
    check_budget(H, loop_ker_degree(i, k, a), what=f"loop_ker({i},{k},{a})")
    dQ, Pd = _ker_legs(H, i, k, a)
    W = _ker_tensor(H, i, k, a)
    return restrict(Pd @ dQ, W, W)


# --- 2. 주장된 고유값 ---
def claimed_s(H: HeckeSymmetry, i: int, a: int) -> List[Any]:
    """([a+2i+1-j] - [-2])[j] / ([i+1][a+i+1]), j = 1..i+1."""
    p = H.hecke_param
    qi = lambda n: q_int(n, p)
    values = [(qi(a + 2 * i + 1 - j) - qi(-2)) * qi(j) / (qi(i + 1) * qi(a + i + 1)) for j in range(1, i + 2)]
    return _distinct(values)


def claimed_ker(H: HeckeSymmetry, i: int, k: int, a: int) -> List[Any]:
    """p^k([a+k+2i-j+2] - [-2])[j] / ([i+1][k+1]²[a+i+k+2]), j ∈ {1..i+1, i+k+1}."""
    p = H.hecke_param
    qi = lambda n: q_int(n, p)
    den = qi(i + 1) * qi(k + 1) ** 2 * qi(a + i + k + 2)
    js = list(range(1, i + 2)) + [i + k + 1]
    values = [p**k * (qi(a + k + 2 * i - j + 2) - qi(-2)) * qi(j) / den for j in js]
    return _distinct(values)


def _distinct(values: List[Any]) -> List[Any]:
    out = []
    for v in values:
        if v not in out:
            out.append(v)
    return out


# --- 3. 고유값 인증 ---
@dataclass
class LoopReport:
    operator: str
    params: Dict[str, int]
    dim: int
    claimed: List[Any]
    annihilation: bool
    attained: List[Any]
    invertible: bool
    certification: str
    backend: str
    matrix: Optional[LinMap] = field(default=None, repr=False)
    # 소멸이 실패하면 평가점에서 특성다항식을 인수분해한 결과
    empirical: Optional[List[Dict[str, Any]]] = None
    empirical_point: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.annihilation and self.invertible

    @property
    def all_attained(self) -> bool:
        return len(self.attained) == len(self.claimed)

    def to_json(self) -> Dict[str, Any]:
        return {
            "operator": self.operator,
            "params": self.params,
            "dim": self.dim,
            "claimed": [format_scalar(x) for x in self.claimed],
            "annihilation": self.annihilation,
            "attained": [format_scalar(x) for x in self.attained],
            "invertible": self.invertible,
            "certification": self.certification,
            "backend": self.backend,
            "empirical": self.empirical,
            "empirical_point": self.empirical_point,
        }


def annihilates(M: LinMap, values: List[Any]) -> bool:
    """Π (M - λ) = 0."""
    prod = LinMap.identity(M.dom, M.field)
    for lam in values:
        prod = prod @ M.shift(lam)
    return prod.is_zero()


def attained_values(M: LinMap, values: List[Any]) -> List[int]:
    """rank(M - λ) < dim 인 λ 의 위치."""
    return [n for n, lam in enumerate(values) if M.shift(lam).rank() < M.dom.dim]


def empirical_eigenvalues(M: LinMap) -> List[Dict[str, Any]]:
    """QQ 위 행렬의 특성다항식 인수분해. 일차 인수는 유리 고유값, 나머지는 기약 인수 그대로."""
    out = []
    for f, mult in M.charpoly().factor_list()[1]:
        if f.degree() == 1:
            c1, c0 = f.all_coeffs()
            out.append({"value": format_scalar(QQ.convert(-c0 / c1)), "multiplicity": mult})
        else:
            out.append({"factor": str(f.as_expr()), "multiplicity": mult})
    return sorted(out, key=lambda e: (e.get("value", ""), e.get("factor", "")))


def _loop_setup(which: str, params: Dict[str, int]) -> Tuple[Callable, Callable, int]:
    if which == LOOP_S:
        i, a = params["i"], params["a"]
        return (lambda H: loop_S(H, i, a)), (lambda H: claimed_s(H, i, a)), loop_s_degree(i, a)
    if which == LOOP_KER:
        i, k, a = params["i"], params["k"], params["a"]
        return (lambda H: loop_ker(H, i, k, a)), (lambda H: claimed_ker(H, i, k, a)), loop_ker_degree(i, k, a)
    raise ValueError(f"알 수 없는 고리 {which}")


def evaluation_points(point: Optional[EvalPoint]) -> Tuple[EvalPoint, EvalPoint]:
    """두 점 인증에 쓰는 (첫 점, 두 번째 점). 두 점은 항상 서로 다릅니다."""
    first = point or EvalPoint(config.DEFAULT_Q0)
    second = EvalPoint(config.SECOND_Q0)
    if second == first:
        second = EvalPoint(config.DEFAULT_Q0)
    return first, second


def eigen_check(H: HeckeSymmetry, which: str, params: Dict[str, int], point: Optional[EvalPoint] = None) -> LoopReport:
    """소멸(Π(M-λ)=0) + 도달(rank(M-λ) < dim) + 가역성.

    정확 예산 안이면 Q(q) 위에서, 아니면 서로 다른 두 평가점 (point 와 두 번째 점) 에서 확인합니다.
    소멸이 실패하면 평가점에서 실제 고유값을 함께 기록합니다."""
    build, claim, degree = _loop_setup(which, params)
    first_point, second_point = evaluation_points(point)
    if not H.backend.exact or degree <= degree_budget(H):
        targets = [H]
        certification = "exact" if H.backend.exact else H.backend.describe()
    else:
        targets = [H.evaluate(first_point), H.evaluate(second_point)]
        certification = "two-point"
    claimed = claim(H)
    annihilation, invertible = True, True
    attained = set(range(len(claimed)))
    first = None
    for T in targets:
        M = build(T)
        values = claim(T)
        if first is None:
            first = M
        annihilation = annihilation and annihilates(M, values)
        attained &= set(attained_values(M, values))
        invertible = invertible and M.is_invertible()
    report = LoopReport(
        which,
        dict(params),
        first.dom.dim,
        claimed,
        annihilation,
        [claimed[n] for n in sorted(attained)],
        invertible,
        certification,
        H.backend.describe(),
        first,
    )
    if not annihilation:
        _record_empirical(report, H, build, first, first_point)
    logger.info(
        "[DoubleCx] %s%s dim=%d 소멸=%s 도달=%d/%d 가역=%s (%s)",
        which, tuple(params.values()), report.dim, annihilation, len(report.attained), len(claimed), invertible, certification,
    )
    return report


def _record_empirical(report: LoopReport, H: HeckeSymmetry, build: Callable, M: LinMap, point: EvalPoint):
    """M 이 Q(q) 위에 있으면 point 에서 다시 만들어 QQ 위에서 인수분해합니다."""
    where = H.backend.describe() if not H.backend.exact else f"evaluated@{point.q0}"
    if M.field != QQ:
        try:
            M = build(H.evaluate(point))
        except BudgetExceededError as exc:
            logger.warning("[DoubleCx] 실제 고유값을 구하지 못했습니다: %s", exc)
            return
    report.empirical = empirical_eigenvalues(M)
    report.empirical_point = where
    logger.warning("[DoubleCx] %s 주장된 고유값이 소멸시키지 못합니다. 실제: %s", report.operator, report.empirical)


# --- 4. 직합 성분 추출 ---
@dataclass
class Splitting:
    """ambient = split ⊕ summand, projector e 의 상이 split."""

    name: str
    params: Dict[str, int]
    ambient: Subspace
    split: Subspace
    summand: Subspace
    projector: LinMap = field(repr=False)


def _subspace_from_images(M: LinMap, source: Subspace, label: str) -> Subspace:
    return Subspace.span(M.cod, [M.apply(v) for v in source.vectors], M.field, label)


def extract_X(H: HeckeSymmetry, i: int, a: int) -> Splitting:
    """X_{i,a} = Im(id - Qd(∂PQd)^{-1}∂P) ⊆ S_{i+1}⊗S_{a+i+1}*."""
    _check_loop_s(i, a)
    check_budget(H, loop_s_degree(i, a), what=f"X_({i},{a})")
    l = a + i
    Qd, dP = _s_legs(H, i, a)
    loop = dP @ Qd
    inverse = loop.inverse()
    e = Qd @ (inverse @ dP)
    big = T_space(H, i + 1, 0, l + 1)
    I = LinMap.identity(big, H.domain)
    summand = image_kernel(I - e)[0]
    summand.label = f"X_({i},{a})"
    split = image_kernel(e)[0]
    split.label = f"Qd(S_{i}·S_{l}*)"
    logger.info("[DoubleCx] X_(%d,%d) dim=%d (전체 %d)", i, a, summand.dim, big.dim)
    return Splitting("X", {"i": i, "a": a}, big, split, summand, e)


def extract_Y(H: HeckeSymmetry, i: int, k: int, a: int) -> Splitting:
    """S_{i+1}⊗Im d_{k,l} = dQ(Ker P_{i,k+1}⊗S_l*) ⊕ Y_{i,k,a}, l = a+i+k+1."""
    _check_loop_ker(i, k, a)
    check_budget(H, loop_ker_degree(i, k, a), what=f"Y_({i},{k},{a})")
    l = a + i + k + 1
    dQ, Pd = _ker_legs(H, i, k, a)
    W = _ker_tensor(H, i, k, a)
    loop = restrict(Pd @ dQ, W, W)
    try:
        inverse = loop.inverse()
    except NonInvertibleLoopError:
        logger.error("[DoubleCx] P∂dQ 가 (%d,%d,%d) 에서 가역이 아닙니다.", i, k, a)
        raise
    big = T_space(H, i + 1, k + 1, l + 1)
    e = dQ @ W.inclusion() @ inverse @ restrict(Pd, big, W)
    ambient = lift_subspace(H, image_of_d(H, k, l), factor_space(H, "S", i + 1).dim, 1, big)
    ambient.label = f"S_{i + 1}·Im d_({k},{l})"
    I = LinMap.identity(big, H.domain)
    summand = _subspace_from_images(I - e, ambient, f"Y_({i},{k},{a})")
    split = _subspace_from_images(e, ambient, f"dQ(Ker P_({i},{k + 1})·S_{l}*)")
    logger.info("[DoubleCx] Y_(%d,%d,%d) dim=%d (전체 %d)", i, k, a, summand.dim, ambient.dim)
    return Splitting("Y", {"i": i, "k": k, "a": a}, ambient, split, summand, e)


def subspace_char(W: Subspace) -> Optional[LaurentChar]:
    """무게가 4성분일 때만 (표준 (3|1)) 지표를 돌려줍니다."""
    counts = weight_components(W)
    if counts and len(next(iter(counts))) != 4:
        return None
    return LaurentChar.from_weight_counts(counts)


def verify_splitting(H: HeckeSymmetry, kind: str, params: Dict[str, int]) -> Dict[str, Any]:
    """e² = e, rank e = dim split, 차원 덧셈, (가능하면) 지표 덧셈."""
    if kind == "X":
        sp = extract_X(H, params["i"], params["a"])
        i, a = params["i"], params["a"]
        expected_rank = T_space(H, i, 0, a + i).dim
    elif kind == "Y":
        i, k, a = params["i"], params["k"], params["a"]
        sp = extract_Y(H, i, k, a)
        expected_rank = _ker_tensor(H, i, k, a).dim
    else:
        raise ValueError(f"알 수 없는 성분 {kind}")
    e = sp.projector
    report: Dict[str, Any] = {
        "kind": kind,
        "params": dict(params),
        "ambient_dim": sp.ambient.dim,
        "split_dim": sp.split.dim,
        "summand_dim": sp.summand.dim,
        "idempotent": (e @ e).equals(e),
        "rank_ok": sp.split.dim == expected_rank,
        "dims_additive": sp.split.dim + sp.summand.dim == sp.ambient.dim,
        "backend": H.backend.describe(),
    }
    chars = [subspace_char(W) for W in (sp.ambient, sp.split, sp.summand)]
    if all(c is not None for c in chars):
        report["chars_additive"] = chars[0] == chars[1] + chars[2]
        report["character"] = chars[2]
    report["ok"] = all(v for key, v in report.items() if key in ("idempotent", "rank_ok", "dims_additive", "chars_additive"))
    return report
