"""Hecke 대칭 R, 텐서 거듭제곱 위의 Hecke 대수 작용, q-대칭화 X_n / Y_n,
부분공간 S_n = Im X_n, Λ_n = Im Y_n 과 훅 분할의 단순 코모듈 M_λ.

첨자 규약: R(x_i ⊗ x_j) = Σ R^{kl}_{ij} x_k ⊗ x_l, 즉 LinMap 의 행이 (k,l), 열이 (i,j).
생성원 R_j 는 1-기반 다리 j, j+1 에 작용합니다.
"""
import json
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from math import comb
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from src import config
from src.errors import (
    BudgetExceededError,
    GeneratorIndexError,
    NonReducedWordError,
    SingularSystemError,
)
from src.scalar import EXACT, Backend, EvalPoint, evaluated, format_scalar, q, q_factorial, scalar
from src.tensorspace import BasisIndex, LinMap, Subspace, SuperDim, Vector, _kernel_local

logger = logging.getLogger(__name__)

SYM = "sym"
EXT = "ext"
MAX_SYMMETRIZER_DEGREE = 8

PairTable = Dict[Tuple[int, int], List[Tuple[Tuple[int, int], Any]]]


# --- 1. Hecke 대칭 ---
@dataclass(frozen=True)
class HeckeSymmetry:
    dims: SuperDim
    R: LinMap
    hecke_param: Any
    backend: Backend = EXACT
    P: Optional[LinMap] = None
    C: Optional[LinMap] = None
    graded: bool = True
    standard: bool = False
    _cache: Dict[Any, Any] = field(default_factory=dict, compare=False, repr=False)

    @property
    def d(self) -> int:
        return self.dims.d

    @property
    def domain(self):
        return self.backend.domain

    def basis(self, k: int, l: int) -> BasisIndex:
        key = ("basis", k, l)
        if key not in self._cache:
            self._cache[key] = BasisIndex(self.dims, k, l, self.graded)
        return self._cache[key]

    @cached_property
    def col_table(self) -> PairTable:
        """(a,b) → [((c,e), R^{ce}_{ab})]: R 을 벡터에 적용할 때."""
        d = self.d
        table: PairTable = {}
        for row, cols in self.R.entries.items():
            for col, x in cols.items():
                table.setdefault(divmod(col, d), []).append((divmod(row, d), x))
        return table

    @cached_property
    def row_table(self) -> PairTable:
        """(c,e) → [((a,b), R^{ce}_{ab})]: 행벡터에 오른쪽에서 R 을 곱할 때."""
        d = self.d
        table: PairTable = {}
        for row, cols in self.R.entries.items():
            for col, x in cols.items():
                table.setdefault(divmod(row, d), []).append((divmod(col, d), x))
        return table

    @cached_property
    def symmetric(self) -> bool:
        return self.R.equals(self.R.transpose())

    def transposed(self) -> "HeckeSymmetry":
        """R^T 로 만든 대칭. 쌍대 대칭화 X_l* = ρ X_l(R^T) ρ 에 씁니다."""
        if self.symmetric:
            return self
        if "transposed" not in self._cache:
            Rt = LinMap(self.R.cod, self.R.dom, self.R.transpose().entries, self.domain)
            self._cache["transposed"] = HeckeSymmetry(
                self.dims, Rt, self.hecke_param, self.backend, graded=self.graded, standard=self.standard
            )
        return self._cache["transposed"]

    def evaluate(self, point: Optional[EvalPoint] = None) -> "HeckeSymmetry":
        """q = q0 로 특수화한 대칭 (평가 백엔드)."""
        if not self.backend.exact:
            raise ValueError("이미 평가된 대칭입니다.")
        bk = evaluated(point)

        def conv(M: Optional[LinMap]) -> Optional[LinMap]:
            if M is None:
                return None
            entries = {i: {j: bk.convert(x) for j, x in row.items()} for i, row in M.entries.items()}
            return LinMap(M.dom, M.cod, entries, bk.domain)

        return HeckeSymmetry(
            self.dims,
            conv(self.R),
            bk.convert(self.hecke_param),
            bk,
            conv(self.P),
            conv(self.C),
            self.graded,
            self.standard,
        )

    def describe(self) -> Dict[str, Any]:
        return {
            "dims": [self.dims.r, self.dims.s],
            "hecke_param": format_scalar(self.hecke_param),
            "backend": self.backend.describe(),
            "standard": self.standard,
        }


def degree_budget(H: HeckeSymmetry, budget: Optional[int] = None) -> int:
    if budget is not None:
        return budget
    return config.EXACT_BUDGET if H.backend.exact else config.EVAL_BUDGET


def check_budget(H: HeckeSymmetry, degree: int, budget: Optional[int] = None, what: str = ""):
    allowed = degree_budget(H, budget)
    if degree > allowed:
        raise BudgetExceededError(
            f"{what}: 필요한 텐서 차수 {degree} 가 예산 {allowed} ({H.backend.describe()}) 를 넘습니다.",
            required=degree,
            allowed=allowed,
        )


# --- 2. 생성과 불러오기 ---
def _is_weight_preserving(R: LinMap, d: int) -> bool:
    for row, cols in R.entries.items():
        for col in cols:
            if sorted(divmod(row, d)) != sorted(divmod(col, d)):
                return False
    return True


def build_standard_r(r: int, s: int, qv: Any = None, backend: Optional[Backend] = None) -> HeckeSymmetry:
    """Manin 의 표준 R^(r|s). qv 를 주면 q 대신 그 값(예: 1 → 초치환)을 씁니다."""
    dims = SuperDim(r, s)
    d = dims.d
    qv = q if qv is None else scalar(qv)
    one = scalar(1)
    VV = BasisIndex(dims, 2, 0)
    entries: Dict[int, Dict[int, Any]] = {}
    for i in range(d):
        for j in range(d):
            col = i * d + j
            if i == j:
                entries.setdefault(col, {})[col] = qv**2 if dims.parity(i) == 0 else -one
                continue
            sign = -one if dims.parity(i) * dims.parity(j) else one
            entries.setdefault(j * d + i, {})[col] = sign * qv
            if i < j:
                entries.setdefault(col, {})[col] = qv**2 - 1
    R = LinMap(VV, VV, entries, EXACT.domain)
    H = HeckeSymmetry(dims, R, qv**2, EXACT, graded=True, standard=True)
    P, C = compute_p_matrix(H)
    H = replace(H, P=P, C=C)
    logger.info("[Hecke] 표준 R^(%d|%d) 생성", r, s)
    if backend is not None and not backend.exact:
        return H.evaluate(backend.point)
    return H


def infer_hecke_param(R: LinMap, field_) -> Any:
    """(R-p)(R+1) = 0 을 만족하는 p 를 R^2 + R = p(R + 1) 에서 읽습니다."""
    one = LinMap.identity(R.dom, field_)
    N = R + one
    first = N.first_nonzero()
    if first is None:
        raise ValueError("R = -1 이면 Hecke 매개변수를 정할 수 없습니다.")
    i, j, x = first
    M = (R @ R) + R
    return M.entries.get(i, {}).get(j, field_.zero) / x


def load_symmetry_json(source: Any, backend: Optional[Backend] = None) -> HeckeSymmetry:
    """{dims: [r,s], hecke_param?: "num/den", entries: [{i,j,k,l,value}]} (1-기반) 에서 대칭을 만듭니다."""
    if isinstance(source, str):
        with open(source, encoding="utf-8") as f:
            data = json.load(f)
    else:
        data = source
    dims = SuperDim(*data["dims"])
    d = dims.d
    entries: Dict[int, Dict[int, Any]] = {}
    for e in data["entries"]:
        i, j, k, l = (int(e[key]) - 1 for key in ("i", "j", "k", "l"))
        if not all(0 <= t < d for t in (i, j, k, l)):
            raise GeneratorIndexError(f"첨자 범위 밖: {e}")
        value = scalar(e["value"] if isinstance(e["value"], str) else int(e["value"]))
        if value:
            entries.setdefault(k * d + l, {})[i * d + j] = value
    VV = BasisIndex(dims, 2, 0, graded=True)
    R = LinMap(VV, VV, entries, EXACT.domain)
    graded = _is_weight_preserving(R, d)
    if not graded:
        VV = BasisIndex(dims, 2, 0, graded=False)
        R = LinMap(VV, VV, entries, EXACT.domain)
    if data.get("hecke_param") is not None:
        p = scalar(str(data["hecke_param"]))
    else:
        p = infer_hecke_param(R, EXACT.domain)
    H = HeckeSymmetry(dims, R, p, EXACT, graded=graded, standard=False)
    try:
        P, C = compute_p_matrix(H)
        H = replace(H, P=P, C=C)
    except SingularSystemError:
        logger.warning("[Hecke] 불러온 R 에 대해 P 행렬을 풀 수 없습니다.")
    logger.info("[Hecke] JSON 대칭 불러옴 dims=(%d|%d) graded=%s", dims.r, dims.s, graded)
    if backend is not None and not backend.exact:
        return H.evaluate(backend.point)
    return H


def dump_symmetry_json(H: HeckeSymmetry) -> Dict[str, Any]:
    d = H.d
    entries = []
    for row, cols in sorted(H.R.entries.items()):
        k, l = divmod(row, d)
        for col, x in sorted(cols.items()):
            i, j = divmod(col, d)
            entries.append({"i": i + 1, "j": j + 1, "k": k + 1, "l": l + 1, "value": format_scalar(x)})
    return {"dims": [H.dims.r, H.dims.s], "hecke_param": format_scalar(H.hecke_param), "entries": entries}


# --- 3. P 행렬과 C ---
def compute_p_matrix(H: HeckeSymmetry) -> Tuple[LinMap, LinMap]:
    """P^{im}_{jn} R^{nk}_{ml} = δ^i_l δ^k_j 를 풀어 (P, C) 를 돌려줍니다. C^i_j = P^{il}_{jl}."""
    d = H.d
    dom = H.domain
    A: Dict[int, Dict[int, Any]] = {}
    for k in range(d):
        for l in range(d):
            for m in range(d):
                for n in range(d):
                    x = H.R.entries.get(n * d + k, {}).get(m * d + l)
                    if x:
                        A.setdefault(k * d + l, {})[m * d + n] = x
    try:
        inv = DomainMatrix.from_dod(A, (d * d, d * d), dom).inv().to_sparse().to_dod()
    except (DMNonInvertibleMatrixError, ZeroDivisionError) as exc:
        raise SingularSystemError("P 행렬 연립방정식이 특이합니다.") from exc
    # x_{ij} = A^{-1} e_{(j,i)}, 성분 (m,n) 이 P^{im}_{jn}
    P_entries: Dict[int, Dict[int, Any]] = {}
    for r, row in inv.items():
        m, n = divmod(r, d)
        for c, x in row.items():
            j, i = divmod(c, d)
            P_entries.setdefault(i * d + m, {})[j * d + n] = x
    VV = H.basis(2, 0)
    V = H.basis(1, 0)
    P = LinMap(VV, VV, P_entries, dom)
    C_entries: Dict[int, Dict[int, Any]] = {}
    for i in range(d):
        for j in range(d):
            total = dom.zero
            for l in range(d):
                total += P.entries.get(i * d + l, {}).get(j * d + l, dom.zero)
            if total:
                C_entries.setdefault(i, {})[j] = total
    return P, LinMap(V, V, C_entries, dom)


def closure_residual(H: HeckeSymmetry, P: LinMap) -> Optional[Tuple[Tuple[int, int, int, int], Any]]:
    """P^{im}_{jn} R^{nk}_{ml} - δ^i_l δ^k_j 의 첫 0 아닌 성분 (없으면 None)."""
    d = H.d
    dom = H.domain
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    total = dom.zero
                    for m in range(d):
                        for n in range(d):
                            a = P.entries.get(i * d + m, {}).get(j * d + n)
                            b = H.R.entries.get(n * d + k, {}).get(m * d + l)
                            if a and b:
                                total += a * b
                    if i == l and k == j:
                        total -= dom.one
                    if total:
                        return (i + 1, j + 1, k + 1, l + 1), total
    return None


def quantum_dimension(H: HeckeSymmetry):
    """tr C."""
    return H.C.trace()


# --- 4. Hecke 대수 작용 ---
def _apply_pair(table: PairTable, vec: Vector, n: int, j: int, d: int) -> Vector:
    """다리 j, j+1 에 표를 적용 (벡터든 행벡터든 같은 모양)."""
    hi = d ** (n - j)
    lo = hi // d
    out: Vector = {}
    for idx, x in vec.items():
        a = (idx // hi) % d
        b = (idx // lo) % d
        base = idx - a * hi - b * lo
        for (c, e), coeff in table.get((a, b), ()):
            t = base + c * hi + e * lo
            out[t] = out[t] + coeff * x if t in out else coeff * x
    return {t: y for t, y in out.items() if y}


def _axpy(acc: Vector, vec: Vector, c=None) -> Vector:
    out = dict(acc)
    for i, x in vec.items():
        y = x if c is None else c * x
        out[i] = out[i] + y if i in out else y
    return {i: x for i, x in out.items() if x}


def apply_generator(H: HeckeSymmetry, vec: Vector, n: int, j: int) -> Vector:
    if not 1 <= j < n:
        raise GeneratorIndexError(f"생성원 첨자 {j} 는 1..{n - 1} 범위여야 합니다.")
    return _apply_pair(H.col_table, vec, n, j, H.d)


def word_permutation(word: Sequence[int], n: int) -> List[int]:
    """s_{i1} ∘ ... ∘ s_{im} 을 1-기반 상(image) 목록으로."""
    img = list(range(1, n + 1))
    for i in word:
        if not 1 <= i < n:
            raise GeneratorIndexError(f"생성원 첨자 {i} 는 1..{n - 1} 범위여야 합니다.")
        img[i - 1], img[i] = img[i], img[i - 1]
    return img


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


def is_reduced(word: Sequence[int], n: int) -> bool:
    return inversions(word_permutation(word, n)) == len(word)


def reduced_word(perm: Sequence[int]) -> List[int]:
    """perm = s_{i1} ∘ ... ∘ s_{im} 인 기약 단어 (버블 정렬)."""
    img = list(perm)
    recorded = []
    changed = True
    while changed:
        changed = False
        for i in range(len(img) - 1):
            if img[i] > img[i + 1]:
                img[i], img[i + 1] = img[i + 1], img[i]
                recorded.append(i + 1)
                changed = True
                break
    return list(reversed(recorded))


def apply_word(H: HeckeSymmetry, vec: Vector, n: int, word: Sequence[int]) -> Vector:
    """R_{i1}···R_{im} vec (오른쪽 생성원부터)."""
    for j in reversed(word):
        vec = apply_generator(H, vec, n, j)
    return vec


def hecke_action(H: HeckeSymmetry, n: int, word: Sequence[int], check_reduced: bool = True) -> LinMap:
    """ρ_n(T_w) = R_{i1}···R_{im} on V^⊗n."""
    if check_reduced and not is_reduced(word, n):
        raise NonReducedWordError(f"기약 단어가 아닙니다: {list(word)}")
    Vn = H.basis(n, 0)
    one = H.domain.one
    columns = [apply_word(H, {m: one}, n, word) for m in range(Vn.dim)]
    return LinMap.from_columns(Vn, Vn, columns, H.domain)


# --- 5. 대칭화 ---
def _coset_row(H: HeckeSymmetry, kind: str, r: Vector, n: int) -> Vector:
    """행벡터 r 에 잉여류 대표 합 C_n (sym) 또는 D_n (ext) 을 오른쪽에서 곱합니다."""
    p = H.hecke_param
    if kind == SYM:
        result, cur = dict(r), r
        for j in range(n - 1, 0, -1):
            cur = _apply_pair(H.row_table, cur, n, j, H.d)
            result = _axpy(result, cur)
        return result
    result, cur, sign = {i: p ** (n - 1) * x for i, x in r.items()}, r, -1
    for j in range(n - 1, 0, -1):
        cur = _apply_pair(H.row_table, cur, n, j, H.d)
        result = _axpy(result, cur, sign * p ** (j - 1))
        sign = -sign
    return result


def _unnormalized_row(H: HeckeSymmetry, kind: str, n: int, idx: int) -> Vector:
    """[n]! X_n (또는 [n]! Y_n) 의 idx 행. N_n = (N_{n-1} ⊗ 1) C_n 재귀."""
    memo = H._cache.setdefault(("row", kind, n), {})
    if idx in memo:
        return memo[idx]
    if n <= 1:
        row = {idx: H.domain.one}
    else:
        prev = _unnormalized_row(H, kind, n - 1, idx // H.d)
        last = idx % H.d
        row = _coset_row(H, kind, {i * H.d + last: x for i, x in prev.items()}, n)
    memo[idx] = row
    return row


def symmetrizer_row(H: HeckeSymmetry, n: int, kind: str, idx: int) -> Vector:
    fact = q_factorial(n, H.hecke_param)
    return {i: x / fact for i, x in _unnormalized_row(H, kind, n, idx).items()}


def symmetrizer(H: HeckeSymmetry, n: int, kind: str) -> LinMap:
    """X_n (kind=sym) 또는 Y_n (kind=ext) 전체 행렬."""
    if kind not in (SYM, EXT):
        raise ValueError(f"알 수 없는 종류 {kind}")
    if not 1 <= n <= MAX_SYMMETRIZER_DEGREE:
        raise ValueError(f"대칭화 차수 {n} 는 1..{MAX_SYMMETRIZER_DEGREE} 범위여야 합니다.")
    Vn = H.basis(n, 0)
    logger.info("[Hecke] symmetrizer n=%d kind=%s", n, kind)
    return LinMap(Vn, Vn, {i: symmetrizer_row(H, n, kind, i) for i in range(Vn.dim)}, H.domain)


def _apply_symmetrizer_legs(H: HeckeSymmetry, kind: str, vec: Vector, n: int, offset: int, c: int) -> Vector:
    """다리 offset+1..offset+c 에 비정규화 대칭화 [c]!X_c (또는 [c]!Y_c) 를 작용."""
    if c <= 1:
        return vec
    p = H.hecke_param
    acc = dict(vec)
    for j in range(1, c):
        moved = _apply_pair(H.col_table, acc, n, offset + j, H.d)
        if kind == SYM:
            acc = _axpy(vec, moved)
        else:
            acc = _axpy({i: p**j * x for i, x in vec.items()}, moved, -H.domain.one)
    return _apply_symmetrizer_legs(H, kind, acc, n, offset, c - 1)


# --- 6. S_n, Λ_n 과 쌍대 ---
def _space_label(kind: str, n: int, dual: bool) -> str:
    return ("S" if kind == SYM else "Λ") + f"_{n}" + ("*" if dual else "")


def _reverse_legs(idx: int, n: int, d: int) -> int:
    out = 0
    for _ in range(n):
        idx, digit = divmod(idx, d)
        out = out * d + digit
    return out


def power_space(H: HeckeSymmetry, n: int, kind: str, dual: bool = False) -> Subspace:
    """S_n / Λ_n (dual 이면 V*^⊗n 안의 S_n* / Λ_n*). 좌표 행은 대칭화의 피벗 행."""
    key = ("space", kind, n, dual)
    if key in H._cache:
        return H._cache[key]
    label = _space_label(kind, n, dual)
    dom = H.domain
    if n < 0:
        W = Subspace.zero(H.basis(0, 0), dom, label)
    elif n <= 1:
        W = Subspace.full(H.basis(0, n) if dual else H.basis(n, 0), dom, label)
    elif dual:
        base = power_space(H.transposed(), n, kind)
        d = H.d
        flip = lambda v: {_reverse_legs(i, n, d): x for i, x in v.items()}
        W = Subspace(
            H.basis(0, n),
            [flip(v) for v in base.vectors],
            [_reverse_legs(p, n, d) for p in base.pivots],
            dom,
            label,
            coordinate_rows=[flip(r) for r in base.coordinate_rows],
        )
    else:
        W = _eigen_intersection(H, n, kind, label)
    H._cache[key] = W
    logger.info("[Hecke] %s dim=%d", label, W.dim)
    return W


def _eigen_intersection(H: HeckeSymmetry, n: int, kind: str, label: str) -> Subspace:
    """∩_j Ker(R_j - λ) (sym: λ = p, ext: λ = -1) = Im X_n / Im Y_n, 무게 블록별로."""
    Vn = H.basis(n, 0)
    dom = H.domain
    lam = H.hecke_param if kind == SYM else -dom.one
    blocks = list(Vn.blocks.values()) if H.graded else [list(range(Vn.dim))]
    vectors, pivots = [], []
    for idxs in blocks:
        b = len(idxs)
        local = {g: c for c, g in enumerate(idxs)}
        dod: Dict[int, Dict[int, Any]] = {}
        for j in range(1, n):
            for c, g in enumerate(idxs):
                col = _apply_pair(H.col_table, {g: dom.one}, n, j, H.d)
                col[g] = col.get(g, dom.zero) - lam
                for t, x in col.items():
                    if x:
                        dod.setdefault((j - 1) * b + local[t], {})[c] = x
        ker, free = _kernel_local(dod, (n - 1) * b, b, dom)
        for v, f in zip(ker, free):
            vectors.append({idxs[c]: x for c, x in v.items()})
            pivots.append(idxs[f])
    rows = [symmetrizer_row(H, n, kind, p) for p in pivots]
    return Subspace(Vn, vectors, pivots, dom, label, coordinate_rows=rows)


def sym_space(H: HeckeSymmetry, n: int) -> Subspace:
    return power_space(H, n, SYM)


def ext_space(H: HeckeSymmetry, n: int) -> Subspace:
    return power_space(H, n, EXT)


def dual_sym_space(H: HeckeSymmetry, n: int) -> Subspace:
    return power_space(H, n, SYM, dual=True)


def poincare_dims(H: HeckeSymmetry, N: int) -> List[int]:
    """dim Λ_n, n = 0..N."""
    return [ext_space(H, n).dim for n in range(N + 1)]


def birank(H: HeckeSymmetry, N: int = 6) -> Optional[Tuple[int, int]]:
    """Poincaré 차원열을 (1+t)^r/(1-t)^s 의 계수와 맞춰 (r, s) 를 읽습니다."""
    dims = poincare_dims(H, N)
    for total in range(0, H.d + 1):
        for s in range(0, total + 1):
            r = total - s
            coeffs = [
                sum(comb(r, j) * (comb(n - j + s - 1, s - 1) if s else int(n == j)) for j in range(0, min(r, n) + 1))
                for n in range(N + 1)
            ]
            if coeffs == dims:
                return (r, s)
    return None


# --- 7. 훅 분할과 M_λ ---
def partitions(n: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def is_hook(parts: Sequence[int], r: int, s: int) -> bool:
    return len(parts) <= r or parts[r] <= s


def hook_partitions(n: int, r: int = 3, s: int = 1) -> List[Tuple[int, ...]]:
    """λ ⊢ n 중 λ_{r+1} ≤ s 인 것들."""
    return [lam for lam in partitions(n) if is_hook(lam, r, s)]


def conjugate(parts: Sequence[int]) -> Tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x > c) for c in range(parts[0]))


def _normalize_partition(parts: Sequence[int]) -> Tuple[int, ...]:
    parts = tuple(int(x) for x in parts if int(x) != 0)
    if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"분할이 아닙니다: {parts}")
    return parts


def tableau_permutation(parts: Sequence[int]) -> List[int]:
    """π(T'(b)) = T(b). T 는 행 읽기, T' 는 열 읽기 표준 타블로 (1-기반 위치)."""
    conj = conjugate(parts)
    n = sum(parts)
    row_start = [sum(parts[:r]) for r in range(len(parts))]
    col_start = [sum(conj[:c]) for c in range(len(conj))]
    perm = [0] * n
    for r, length in enumerate(parts):
        for c in range(length):
            perm[col_start[c] + r] = row_start[r] + c + 1
    return perm


def young_module(H: HeckeSymmetry, parts: Sequence[int], budget: Optional[int] = None) -> Subspace:
    """z_λ = X_λ · R_π · Y_{λ'} 의 상. X_λ, Y_{λ'} 는 연속된 다리 묶음 위의 대칭화."""
    lam = _normalize_partition(parts)
    n = sum(lam)
    check_budget(H, n, budget, f"young_module{lam}")
    label = f"M_{lam}"
    dom = H.domain
    Vn = H.basis(n, 0)
    if n == 0:
        return Subspace.full(Vn, dom, label)
    conj = conjugate(lam)
    word = reduced_word(tableau_permutation(lam))

    def z(vec: Vector) -> Vector:
        offset = 0
        for c in conj:
            vec = _apply_symmetrizer_legs(H, EXT, vec, n, offset, c)
            offset += c
        vec = apply_word(H, vec, n, word)
        offset = 0
        for r in lam:
            vec = _apply_symmetrizer_legs(H, SYM, vec, n, offset, r)
            offset += r
        return vec

    W = Subspace.span(Vn, [z({m: dom.one}) for m in range(Vn.dim)], dom, label)
    logger.info("[Hecke] %s dim=%d (단어 길이 %d)", label, W.dim, len(word))
    return W


# --- 8. 공리 검증 ---
def _residual_report(M: LinMap) -> Dict[str, Any]:
    first = M.first_nonzero()
    if first is None:
        return {"ok": True}
    i, j, x = first
    return {"ok": False, "witness": {"row": i, "col": j, "value": format_scalar(x)}}


def check_hecke_symmetry(H: HeckeSymmetry) -> Dict[str, Any]:
    """짝성, Yang-Baxter, Hecke 방정식, P 닫힘 조건. 실패해도 예외 없이 리포트."""
    d = H.d
    dom = H.domain
    p = H.hecke_param

    even = {"ok": True}
    for row, cols in H.R.entries.items():
        k, l = divmod(row, d)
        for col in cols:
            i, j = divmod(col, d)
            par = H.dims.parity
            if (par(i) + par(j) - par(k) - par(l)) % 2:
                even = {"ok": False, "witness": {"ij": [i + 1, j + 1], "kl": [k + 1, l + 1]}}
                break
        if not even["ok"]:
            break

    ybe = _residual_report(hecke_action(H, 3, [1, 2, 1]) - hecke_action(H, 3, [2, 1, 2]))

    I2 = LinMap.identity(H.R.dom, dom)
    hecke = _residual_report((H.R - I2.scale(p)) @ (H.R + I2))

    report: Dict[str, Any] = {
        "dims": [H.dims.r, H.dims.s],
        "hecke_param": format_scalar(p),
        "backend": H.backend.describe(),
        "even": even,
        "yang_baxter": ybe,
        "hecke": hecke,
    }
    try:
        P, C = (H.P, H.C) if H.P is not None else compute_p_matrix(H)
        bad = closure_residual(H, P)
        if bad is None:
            report["closure"] = {"ok": True}
        else:
            report["closure"] = {"ok": False, "witness": {"ijkl": list(bad[0]), "value": format_scalar(bad[1])}}
        report["C"] = [[format_scalar(C.entries.get(i, {}).get(j, 0)) for j in range(d)] for i in range(d)]
    except SingularSystemError as exc:
        report["closure"] = {"ok": False, "error": str(exc)}
    report["ok"] = all(report[key]["ok"] for key in ("even", "yang_baxter", "hecke", "closure"))
    logger.info("[Hecke] 공리 검증 ok=%s", report["ok"])
    return report
