"""Koszul 복합체 K (항 Λ_k⊗S_l*, 미분 d, ∂) 와 L (항 S_p⊗Λ_r, 미분 P, Q).

모든 사상은 부분공간 좌표로 쓴 행렬입니다. 각 인자 사상(한 다리를 붙이거나 떼고
대칭화로 사영)을 먼저 만들고, 항 사이의 사상은 그것들의 크로네커 합으로 조립합니다.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from src.charformula import LaurentChar
from src.errors import ContainmentError, DirectSumError
from src.hecke import (
    EXT,
    SYM,
    HeckeSymmetry,
    birank,
    check_budget,
    compute_p_matrix,
    power_space,
)
from src.scalar import format_scalar, q_int
from src.tensorspace import (
    LinMap,
    ProductSpace,
    Subspace,
    image_kernel,
    kron,
    kron_sum,
)

logger = logging.getLogger(__name__)

RIGHT = "right"
LEFT = "left"
FAMILY_SPACES = {"S": (SYM, False), "L": (EXT, False), "S*": (SYM, True)}
MAPS = ("d", "∂", "P", "Q")


# --- 1. 첨자 ---
@dataclass(frozen=True)
class KoszulIndex:
    """K 의 (k, l) 또는 L 의 (p, r)."""

    family: str
    first: int
    second: int

    def __post_init__(self):
        if self.family not in ("K", "L"):
            raise ValueError(f"알 수 없는 복합체 {self.family}")
        if self.first < 0 or self.second < 0:
            raise ValueError(f"음수 차수 ({self.first}, {self.second})")

    @property
    def a(self) -> int:
        """K_a 에서 a = k - l, L_a 에서 a = p + r."""
        if self.family == "K":
            return self.first - self.second
        return self.first + self.second

    def __str__(self):
        return f"{self.family}_({self.first},{self.second})"


# --- 2. 구조 사상 db, ev, R_{V,V*} ---
@dataclass(frozen=True)
class StructureMaps:
    db: LinMap
    ev: LinMap
    rvv: LinMap

    def contraction(self) -> Dict[Tuple[int, int], Any]:
        """(i, j) → (ev∘R_{V,V*})(x_i⊗ξ^j). 0 인 값은 뺍니다."""
        row = (self.ev @ self.rvv).entries.get(0, {})
        d = self.rvv.dom.dims.d
        return {divmod(col, d): x for col, x in row.items()}


def _p_and_c(H: HeckeSymmetry) -> Tuple[LinMap, LinMap]:
    if H.P is not None:
        return H.P, H.C
    if "pc" not in H._cache:
        H._cache["pc"] = compute_p_matrix(H)
    return H._cache["pc"]


def structure_maps(H: HeckeSymmetry) -> StructureMaps:
    """db: 𝕜 → V⊗V*, ev: V*⊗V → 𝕜, R_{V,V*}(x_i⊗ξ^j) = Σ P^{jl}_{ik} ξ^k⊗x_l."""
    if "structure" in H._cache:
        return H._cache["structure"]
    d = H.d
    dom = H.domain
    unit = H.basis(0, 0)
    VVs = H.basis(1, 1)
    VsV = ProductSpace(H.basis(0, 1), H.basis(1, 0))
    db = LinMap(unit, VVs, {i * d + i: {0: dom.one} for i in range(d)}, dom)
    ev = LinMap(VsV, unit, {0: {i * d + i: dom.one for i in range(d)}}, dom)
    P, _ = _p_and_c(H)
    rvv: Dict[int, Dict[int, Any]] = {}
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    x = P.entries.get(j * d + l, {}).get(i * d + k)
                    if x:
                        row = rvv.setdefault(k * d + l, {})
                        row[i * d + j] = row.get(i * d + j, dom.zero) + x
    maps = StructureMaps(db, ev, LinMap(VVs, VsV, rvv, dom))
    H._cache["structure"] = maps
    return maps


def contraction_values(H: HeckeSymmetry) -> Dict[Tuple[int, int], Any]:
    key = "contraction"
    if key not in H._cache:
        H._cache[key] = structure_maps(H).contraction()
    return H._cache[key]


# --- 3. 인자 사상 ---
def factor_space(H: HeckeSymmetry, family: str, n: int) -> Subspace:
    kind, dual = FAMILY_SPACES[family]
    return power_space(H, n, kind, dual)


def grow(H: HeckeSymmetry, family: str, n: int, j: int, side: str) -> LinMap:
    """F_n → F_{n+1}: 기저 j 인 다리를 오른쪽(또는 왼쪽)에 붙이고 F_{n+1} 로 사영."""
    key = ("grow", family, n, j, side)
    if key in H._cache:
        return H._cache[key]
    src = factor_space(H, family, n)
    dst = factor_space(H, family, n + 1)
    if src.dim == 0 or dst.dim == 0:
        M = LinMap.zero(src, dst, H.domain)
    else:
        d = H.d
        top = d**n
        if side == RIGHT:
            moved = ({i * d + j: x for i, x in b.items()} for b in src.vectors)
        else:
            moved = ({j * top + i: x for i, x in b.items()} for b in src.vectors)
        M = LinMap.from_columns(src, dst, [dst.project(v) for v in moved], H.domain)
    H._cache[key] = M
    return M


def shrink(H: HeckeSymmetry, family: str, n: int, j: int, side: str) -> LinMap:
    """F_{n+1} → F_n: 마지막(또는 첫) 다리의 ξ^j/x_j 성분을 떼고 F_n 으로 사영."""
    key = ("shrink", family, n, j, side)
    if key in H._cache:
        return H._cache[key]
    src = factor_space(H, family, n + 1)
    dst = factor_space(H, family, n)
    if src.dim == 0 or dst.dim == 0:
        M = LinMap.zero(src, dst, H.domain)
    else:
        d = H.d
        top = d**n
        columns = []
        for b in src.vectors:
            if side == RIGHT:
                stripped = {i // d: x for i, x in b.items() if i % d == j}
            else:
                stripped = {i % top: x for i, x in b.items() if i // top == j}
            columns.append(dst.project(stripped))
        M = LinMap.from_columns(src, dst, columns, H.domain)
    H._cache[key] = M
    return M


# --- 4. 항 ---
def _product_space(H: HeckeSymmetry, key: Tuple, parts: List[Subspace], label: str) -> Subspace:
    """인자 부분공간 좌표의 텐서곱. 좌표 공간 자체이므로 전체 공간으로 둡니다."""
    if key in H._cache:
        return H._cache[key]
    ambient = ProductSpace(*parts)
    W = Subspace.full(ambient, H.domain, label)
    H._cache[key] = W
    return W


def K_space(H: HeckeSymmetry, k: int, l: int) -> Subspace:
    """K_{k,l} = Λ_k ⊗ S_l* (인자 좌표)."""
    return _product_space(
        H, ("K", k, l), [factor_space(H, "L", k), factor_space(H, "S*", l)], f"Λ_{k}·S_{l}*"
    )


def L_space(H: HeckeSymmetry, p: int, r: int) -> Subspace:
    """L_{p,r} = S_p ⊗ Λ_r."""
    return _product_space(H, ("L", p, r), [factor_space(H, "S", p), factor_space(H, "L", r)], f"S_{p}·Λ_{r}")


def T_space(H: HeckeSymmetry, i: int, k: int, l: int) -> Subspace:
    """이중 복합체의 항 S_i ⊗ Λ_k ⊗ S_l*."""
    return _product_space(
        H,
        ("T", i, k, l),
        [factor_space(H, "S", i), factor_space(H, "L", k), factor_space(H, "S*", l)],
        f"S_{i}·Λ_{k}·S_{l}*",
    )


# --- 5. 미분 ---
def d_map(H: HeckeSymmetry, k: int, l: int) -> LinMap:
    """d_{k,l}: K_{k,l} → K_{k+1,l+1}, 가운데에 db(1) = Σ x_i⊗ξ^i 를 넣고 사영."""
    key = ("d", k, l)
    check_budget(H, k + l + 2, what=f"d_({k},{l})")
    if key not in H._cache:
        one = H.domain.one
        terms = [(one, grow(H, "L", k, i, RIGHT), grow(H, "S*", l, i, LEFT)) for i in range(H.d)]
        M = kron_sum(terms, K_space(H, k, l), K_space(H, k + 1, l + 1), H.domain)
        logger.info("[Koszul] d_(%d,%d) %s", k, l, M.shape)
        H._cache[key] = M
    return H._cache[key]


def partial_map(H: HeckeSymmetry, k: int, l: int) -> LinMap:
    """∂_{k,l}: K_{k+1,l+1} → K_{k,l}, 안쪽 두 다리를 ev∘R_{V,V*} 로 축약."""
    key = ("∂", k, l)
    check_budget(H, k + l + 2, what=f"∂_({k},{l})")
    if key not in H._cache:
        terms = [
            (c, shrink(H, "L", k, i, RIGHT), shrink(H, "S*", l, j, LEFT))
            for (i, j), c in sorted(contraction_values(H).items())
        ]
        M = kron_sum(terms, K_space(H, k + 1, l + 1), K_space(H, k, l), H.domain)
        logger.info("[Koszul] ∂_(%d,%d) %s", k, l, M.shape)
        H._cache[key] = M
    return H._cache[key]


def p_map(H: HeckeSymmetry, p: int, r: int) -> LinMap:
    """P_{p,r}: S_p⊗Λ_r → S_{p-1}⊗Λ_{r+1}."""
    key = ("P", p, r)
    check_budget(H, p + r, what=f"P_({p},{r})")
    if key not in H._cache:
        one = H.domain.one
        terms = [(one, shrink(H, "S", p - 1, j, RIGHT), grow(H, "L", r, j, LEFT)) for j in range(H.d)]
        H._cache[key] = kron_sum(terms, L_space(H, p, r), L_space(H, p - 1, r + 1), H.domain)
    return H._cache[key]


def q_map(H: HeckeSymmetry, p: int, r: int) -> LinMap:
    """Q_{p,r}: S_{p-1}⊗Λ_{r+1} → S_p⊗Λ_r."""
    key = ("Q", p, r)
    check_budget(H, p + r, what=f"Q_({p},{r})")
    if key not in H._cache:
        one = H.domain.one
        terms = [(one, grow(H, "S", p - 1, j, RIGHT), shrink(H, "L", r, j, LEFT)) for j in range(H.d)]
        H._cache[key] = kron_sum(terms, L_space(H, p - 1, r + 1), L_space(H, p, r), H.domain)
    return H._cache[key]


def koszul_map(H: HeckeSymmetry, which: str, idx: KoszulIndex) -> LinMap:
    if which not in MAPS:
        raise ValueError(f"알 수 없는 사상 {which}")
    expected = "K" if which in ("d", "∂") else "L"
    if idx.family != expected:
        raise ValueError(f"{which} 는 {expected} 첨자가 필요합니다: {idx}")
    builder = {"d": d_map, "∂": partial_map, "P": p_map, "Q": q_map}[which]
    return builder(H, idx.first, idx.second)


# --- 6. 이중 복합체 위의 사상 ---
def _identity(H: HeckeSymmetry, W: Subspace) -> LinMap:
    return LinMap.identity(W, H.domain)


def _on_triple(M: LinMap, dom: Subspace, cod: Subspace) -> LinMap:
    return LinMap(dom, cod, M.entries, M.field)


def t_d(H: HeckeSymmetry, i: int, k: int, l: int) -> LinMap:
    """id ⊗ d_{k,l}: T_{i,k,l} → T_{i,k+1,l+1}."""
    M = kron(_identity(H, factor_space(H, "S", i)), d_map(H, k, l))
    return _on_triple(M, T_space(H, i, k, l), T_space(H, i, k + 1, l + 1))


def t_partial(H: HeckeSymmetry, i: int, k: int, l: int) -> LinMap:
    """id ⊗ ∂_{k,l}: T_{i,k+1,l+1} → T_{i,k,l}."""
    M = kron(_identity(H, factor_space(H, "S", i)), partial_map(H, k, l))
    return _on_triple(M, T_space(H, i, k + 1, l + 1), T_space(H, i, k, l))


def t_p(H: HeckeSymmetry, i: int, k: int, l: int) -> LinMap:
    """P_{i,k} ⊗ id: T_{i,k,l} → T_{i-1,k+1,l}."""
    M = kron(p_map(H, i, k), _identity(H, factor_space(H, "S*", l)))
    return _on_triple(M, T_space(H, i, k, l), T_space(H, i - 1, k + 1, l))


def t_q(H: HeckeSymmetry, i: int, k: int, l: int) -> LinMap:
    """Q_{i,k} ⊗ id: T_{i-1,k+1,l} → T_{i,k,l}."""
    M = kron(q_map(H, i, k), _identity(H, factor_space(H, "S*", l)))
    return _on_triple(M, T_space(H, i - 1, k + 1, l), T_space(H, i, k, l))


# --- 7. 항등식 검증 ---
@dataclass
class IdentityReport:
    identity: str
    indices: Dict[str, int]
    residual_zero: bool
    witness: Optional[Dict[str, Any]] = None
    extra: Dict[str, Any] = field(default_factory=dict)
    residual: Optional[LinMap] = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.residual_zero

    def to_json(self) -> Dict[str, Any]:
        out = {"identity": self.identity, "indices": self.indices, "residual_zero": self.residual_zero}
        if self.witness is not None:
            out["witness"] = self.witness
        out.update(self.extra)
        return out


def _witness(M: LinMap) -> Optional[Dict[str, Any]]:
    first = M.first_nonzero()
    if first is None:
        return None
    i, j, x = first
    return {"row": i, "col": j, "value": format_scalar(x)}


def _report(identity: str, indices: Dict[str, int], residual: LinMap, **extra) -> IdentityReport:
    return IdentityReport(identity, indices, residual.is_zero(), _witness(residual), extra, residual)


def symmetry_birank(H: HeckeSymmetry) -> Tuple[int, int]:
    """표준 대칭은 (r, s) 그대로, 아니면 Poincaré 차원에서 읽습니다."""
    if H.standard:
        return H.dims.r, H.dims.s
    found = birank(H)
    return found if found is not None else (H.dims.r, H.dims.s)


def ct3_lhs(H: HeckeSymmetry, k: int, l: int) -> LinMap:
    """p[l][k]·d∂ + [l+1][k+1]·∂d on K_{k,l}."""
    p = H.hecke_param
    qi = lambda n: q_int(n, p)
    W = K_space(H, k, l)
    lhs = (partial_map(H, k, l) @ d_map(H, k, l)).scale(qi(l + 1) * qi(k + 1))
    if k > 0 and l > 0:
        lhs = lhs + (d_map(H, k - 1, l - 1) @ partial_map(H, k - 1, l - 1)).scale(p * qi(l) * qi(k))
    return LinMap(W, W, lhs.entries, H.domain)


def verify_ct3(H: HeckeSymmetry, k: int, l: int) -> IdentityReport:
    """p[l][k]d∂ + [l+1][k+1]∂d = p^k([l-k] - [s-r]) id. [r-s] 쪽 잔차도 함께 기록."""
    p = H.hecke_param
    r, s = symmetry_birank(H)
    lhs = ct3_lhs(H, k, l)
    I = _identity(H, K_space(H, k, l))
    res_sr = lhs - I.scale(p**k * (q_int(l - k, p) - q_int(s - r, p)))
    res_rs = lhs - I.scale(p**k * (q_int(l - k, p) - q_int(r - s, p)))
    passing = [name for name, M in (("s-r", res_sr), ("r-s", res_rs)) if M.is_zero()]
    logger.info("[Koszul] ct3 (%d,%d) 통과 부호=%s", k, l, passing)
    return _report(
        "ct3",
        {"k": k, "l": l},
        res_sr,
        sign="s-r",
        passing_signs=passing,
        residual_zero_r_minus_s=res_rs.is_zero(),
    )


def verify_ct60(H: HeckeSymmetry, p_deg: int, r_deg: int) -> IdentityReport:
    """[r][p+1]·PQ + [p][r+1]·QP = [p+r] id on L_{p,r}."""
    p = H.hecke_param
    qi = lambda n: q_int(n, p)
    W = L_space(H, p_deg, r_deg)
    lhs = LinMap.zero(W, W, H.domain)
    if r_deg > 0:
        PQ = p_map(H, p_deg + 1, r_deg - 1) @ q_map(H, p_deg + 1, r_deg - 1)
        lhs = lhs + LinMap(W, W, PQ.entries, H.domain).scale(qi(r_deg) * qi(p_deg + 1))
    if p_deg > 0:
        QP = q_map(H, p_deg, r_deg) @ p_map(H, p_deg, r_deg)
        lhs = lhs + LinMap(W, W, QP.entries, H.domain).scale(qi(p_deg) * qi(r_deg + 1))
    residual = lhs - _identity(H, W).scale(qi(p_deg + r_deg))
    return _report("ct60", {"p": p_deg, "r": r_deg}, residual)


def verify_bicomplex(H: HeckeSymmetry, total: int) -> Dict[str, Any]:
    """d²=0, ∂²=0, Pd=dP, ∂Q=Q∂. 관련된 가장 큰 항의 차수가 total 이하인 것만."""
    checks: List[IdentityReport] = []
    for k in range(total + 1):
        for l in range(total + 1 - k):
            if k + l + 4 <= total:
                checks.append(_report("d²", {"k": k, "l": l}, d_map(H, k + 1, l + 1) @ d_map(H, k, l)))
                checks.append(_report("∂²", {"k": k, "l": l}, partial_map(H, k, l) @ partial_map(H, k + 1, l + 1)))
    for i in range(1, total + 1):
        for k in range(total + 1 - i):
            for l in range(total + 1 - i - k):
                # Pd = dP: T_{i,k,l} → T_{i-1,k+2,l+1}
                if i + k + l + 2 <= total:
                    lhs = t_d(H, i - 1, k + 1, l) @ t_p(H, i, k, l)
                    rhs = t_p(H, i, k + 1, l + 1) @ t_d(H, i, k, l)
                    checks.append(_report("Pd=dP", {"i": i, "k": k, "l": l}, lhs - rhs))
                # ∂Q = Q∂: T_{i-1,k+1,l+1} → T_{i,k-1,l}
                if k >= 1 and i + k + l + 1 <= total:
                    lhs = t_partial(H, i, k - 1, l) @ t_q(H, i, k, l + 1)
                    rhs = t_q(H, i, k - 1, l) @ t_partial(H, i - 1, k, l)
                    checks.append(_report("∂Q=Q∂", {"i": i, "k": k, "l": l}, lhs - rhs))
    failed = [c for c in checks if not c.residual_zero]
    logger.info("[Koszul] 이중 복합체 검사 %d건, 실패 %d건", len(checks), len(failed))
    return {"total": total, "checked": len(checks), "ok": not failed, "failures": failed}


# --- 8. 호몰로지 ---
@dataclass
class HomologySlot:
    a: int
    position: Tuple[int, int]
    dim: int
    character: Optional[LaurentChar] = None

    def to_json(self) -> Dict[str, Any]:
        out = {"a": self.a, "position": list(self.position), "dim": self.dim}
        if self.character is not None:
            out["character"] = self.character.to_terms()
        return out


def _rank_by_weight(M: Optional[LinMap]) -> Dict[Any, int]:
    return {} if M is None else M.block_ranks()


def homology_K(H: HeckeSymmetry, a: int, window: int) -> List[HomologySlot]:
    """K_a (k - l = a) 의 각 항 (k+l ≤ window) 에서 dim Ker d_{k,l} - dim Im d_{k-1,l-1}."""
    slots = []
    for l in range(0, window + 1):
        k = l + a
        if k < 0 or k + l > window:
            continue
        W = K_space(H, k, l)
        out_ranks = _rank_by_weight(d_map(H, k, l))
        in_ranks = _rank_by_weight(d_map(H, k - 1, l - 1)) if k > 0 and l > 0 else {}
        weighted = None not in out_ranks and None not in in_ranks and W.graded
        if weighted:
            counts = {w: len(idx) - out_ranks.get(w, 0) - in_ranks.get(w, 0) for w, idx in W.blocks.items()}
            dim = sum(counts.values())
            character = LaurentChar.from_weight_counts(counts) if dim and len(next(iter(counts))) == 4 else None
        else:
            dim = W.dim - sum(out_ranks.values()) - sum(in_ranks.values())
            character = None
        slots.append(HomologySlot(a, (k, l), dim, character))
        logger.info("[Koszul] K_%d 의 (%d,%d) 호몰로지 차원 %d", a, k, l, dim)
    return slots


def scan_homology(H: HeckeSymmetry, amax: int, window: int) -> Dict[str, Any]:
    """K_a 와 K_{-a} (0 ≤ a ≤ amax) 를 훑고 0 이 아닌 자리를 모읍니다."""
    scanned = {}
    for a in sorted({s * b for b in range(amax + 1) for s in (1, -1)}):
        scanned[a] = homology_K(H, a, window)
    nontrivial = [slot for slots in scanned.values() for slot in slots if slot.dim]
    return {"window": window, "scanned": scanned, "nontrivial": nontrivial}


def homology_L(H: HeckeSymmetry, a: int) -> List[HomologySlot]:
    """L_a (p + r = a) 의 각 항에서 dim Ker P_{p,r} - dim Im P_{p+1,r-1}."""
    slots = []
    for p in range(a, -1, -1):
        r = a - p
        W = L_space(H, p, r)
        out_rank = p_map(H, p, r).rank() if p > 0 else 0
        in_rank = p_map(H, p + 1, r - 1).rank() if r > 0 else 0
        slots.append(HomologySlot(a, (p, r), W.dim - out_rank - in_rank))
    return slots


def homology_representative(H: HeckeSymmetry, k: int, l: int) -> Subspace:
    """Ker d_{k,l} 안에서 Im d_{k-1,l-1} 을 탐욕적으로 넓혀 보충 공간을 얻습니다."""
    W = K_space(H, k, l)
    _, kernel = image_kernel(d_map(H, k, l))
    image = image_kernel(d_map(H, k - 1, l - 1))[0] if k > 0 and l > 0 else Subspace.zero(W, H.domain)
    span = list(image.vectors)
    chosen = []
    for v in kernel.vectors:
        current = Subspace.span(W, span, H.domain)
        if not current.contains(v):
            chosen.append(v)
            span.append(v)
    return Subspace.span(W, chosen, H.domain, f"H({k},{l})")


def berezinian_line(H: HeckeSymmetry) -> Subspace:
    """K_2 의 (3,1) 자리에 있는 1차원 호몰로지 대표."""
    B = homology_representative(H, 3, 1)
    B.label = "Ber"
    return B


# --- 9. 상의 분해 ---
def image_splitting(H: HeckeSymmetry, k: int, l: int) -> Tuple[Subspace, Subspace]:
    """K_{k,l} = Im d_{k-1,l-1} ⊕ Im ∂_{k,l} (둘째 성분은 Im d_{k,l} 과 동형)."""
    r, s = symmetry_birank(H)
    if k - l == r - s:
        raise ValueError(f"호몰로지가 있는 복합체 K_{r - s} 의 항 ({k},{l}) 은 제외합니다.")
    W = K_space(H, k, l)
    if k > 0 and l > 0:
        incoming = image_kernel(d_map(H, k - 1, l - 1), ("Im d", "Ker d"))[0]
    else:
        incoming = Subspace.zero(W, H.domain)
    outgoing = image_kernel(partial_map(H, k, l), ("Im ∂", "Ker ∂"))[0]
    incoming.label = f"Im d_({k - 1},{l - 1})"
    outgoing.label = f"Im ∂_({k},{l})"
    joint = Subspace.span(W, incoming.vectors + outgoing.vectors, H.domain)
    if joint.dim != incoming.dim + outgoing.dim or joint.dim != W.dim:
        raise DirectSumError(
            f"K_({k},{l}): {incoming.dim} + {outgoing.dim} 이 직합 {W.dim} 을 이루지 않습니다 (합 {joint.dim})."
        )
    logger.info("[Koszul] K_(%d,%d) = %d ⊕ %d", k, l, incoming.dim, outgoing.dim)
    return incoming, outgoing


def image_of_d(H: HeckeSymmetry, k: int, l: int) -> Subspace:
    """Im d_{k,l} ⊆ K_{k+1,l+1}."""
    image = image_kernel(d_map(H, k, l))[0]
    image.label = f"Im d_({k},{l})"
    return image


def lift_subspace(H: HeckeSymmetry, inner: Subspace, left: int, right: int, ambient: Subspace) -> Subspace:
    """inner ⊆ X 를 (left 차원) ⊗ X ⊗ (right 차원) 안으로 올립니다.

    ambient 의 좌표가 (왼쪽, X, 오른쪽) 순서의 혼합 진법이어야 합니다."""
    n = inner.ambient.dim
    if left * n * right != ambient.dim:
        raise ContainmentError(f"{inner.label} 을 {ambient.label} 로 올릴 수 없습니다.")
    vectors, pivots = [], []
    for a in range(left):
        for v, pv in zip(inner.vectors, inner.pivots):
            for b in range(right):
                vectors.append({(a * n + i) * right + b: x for i, x in v.items()})
                pivots.append((a * n + pv) * right + b)
    return Subspace(ambient, vectors, pivots, H.domain, inner.label)
