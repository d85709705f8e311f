"""차수 붙은 텐서 공간 V^⊗k ⊗ V*^⊗l, 부분공간, 선형사상과 정확한 선형대수.

모든 공간은 기저 인덱스 0..dim-1 과 기저 벡터별 무게(weight)를 가집니다.
사상은 dict-of-dict 희소 행렬(행 = 공역 인덱스)이고, 사다리꼴/역행렬/계수는
sympy DomainMatrix 로 무게 블록마다 계산합니다.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import pandas as pd
from sympy import Poly, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from src.errors import ContainmentError, NonGradedError, NonInvertibleLoopError
from src.scalar import format_scalar

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]
Vector = Dict[int, Any]
Entries = Dict[int, Dict[int, Any]]
EIGEN_VAR = Symbol("t")


# --- 1. 초벡터 공간 ---
@dataclass(frozen=True)
class SuperDim:
    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0 or self.r + self.s < 1:
            raise ValueError(f"잘못된 초차원 ({self.r}|{self.s})")

    @property
    def d(self) -> int:
        return self.r + self.s

    def parity(self, i: int) -> int:
        """0-기반 인덱스 i의 홀짝 (앞의 r개가 짝)."""
        return 0 if i < self.r else 1


# --- 2. 공간 ---
class GradedSpace:
    """기저 인덱스 0..dim-1 과 무게를 가진 공간의 공통 부분."""

    dim: int
    label: str = "?"

    def weight(self, index: int) -> Weight:
        return self.weights[index]

    @cached_property
    def weights(self) -> List[Weight]:
        raise NotImplementedError

    @cached_property
    def blocks(self) -> Dict[Weight, List[int]]:
        grouped: Dict[Weight, List[int]] = {}
        for i, w in enumerate(self.weights):
            grouped.setdefault(w, []).append(i)
        return dict(sorted(grouped.items()))

    @property
    def graded(self) -> bool:
        return all(w is not None for w in self.weights)

    def __repr__(self):
        return f"<{type(self).__name__} {self.label} dim={self.dim}>"


class BasisIndex(GradedSpace):
    """V^⊗k ⊗ V*^⊗l 의 사전식 단항식 기저.

    인덱스 i 의 단항식은 밑 d 자릿수 (첫 다리가 최상위 자리)."""

    def __init__(self, dims: SuperDim, k: int, l: int, graded: bool = True):
        if k < 0 or l < 0:
            raise ValueError(f"음수 차수 ({k}, {l})")
        self.dims = dims
        self.k = k
        self.l = l
        self.is_graded = graded
        self.dim = dims.d ** (k + l)
        self.label = f"V^{k}⊗V*^{l}"

    def monomial(self, index: int) -> Tuple[int, ...]:
        d = self.dims.d
        digits = []
        for _ in range(self.k + self.l):
            index, digit = divmod(index, d)
            digits.append(digit)
        return tuple(reversed(digits))

    def index(self, monomial: Sequence[int]) -> int:
        value = 0
        for digit in monomial:
            value = value * self.dims.d + digit
        return value

    def parity(self, index: int) -> int:
        return sum(self.dims.parity(i) for i in self.monomial(index)) % 2

    def monomial_weight(self, monomial: Sequence[int]) -> Weight:
        if not self.is_graded:
            return ()
        w = [0] * self.dims.d
        for pos, i in enumerate(monomial):
            w[i] += 1 if pos < self.k else -1
        return tuple(w)

    @cached_property
    def weights(self) -> List[Weight]:
        return [self.monomial_weight(self.monomial(i)) for i in range(self.dim)]

    def entries(self) -> Iterator[Tuple[Tuple[int, ...], int, Weight]]:
        for i in range(self.dim):
            yield self.monomial(i), self.parity(i), self.weights[i]

    def __eq__(self, other):
        return (
            isinstance(other, BasisIndex)
            and (self.dims, self.k, self.l, self.is_graded) == (other.dims, other.k, other.l, other.is_graded)
        )

    def __hash__(self):
        return hash((self.dims, self.k, self.l, self.is_graded))


def tensor_basis(dims: SuperDim, k: int, l: int, graded: bool = True) -> BasisIndex:
    return BasisIndex(dims, k, l, graded)


def _add_weights(ws: Iterable[Weight]) -> Weight:
    ws = list(ws)
    if any(w is None for w in ws):
        return None
    if any(len(w) == 0 for w in ws):
        return ()
    return tuple(sum(parts) for parts in zip(*ws))


class ProductSpace(GradedSpace):
    """인자 공간들의 텐서곱. 첫 인자가 최상위 자리인 혼합 진법 인덱스."""

    def __init__(self, *factors: GradedSpace):
        flat: List[GradedSpace] = []
        for f in factors:
            if isinstance(f, ProductSpace):
                flat.extend(f.factors)
            else:
                flat.append(f)
        self.factors = tuple(flat)
        self.dim = 1
        for f in self.factors:
            self.dim *= f.dim
        self.label = "·".join(f.label for f in self.factors)

    def split(self, index: int) -> Tuple[int, ...]:
        parts = []
        for f in reversed(self.factors):
            index, r = divmod(index, f.dim)
            parts.append(r)
        return tuple(reversed(parts))

    def join(self, parts: Sequence[int]) -> int:
        value = 0
        for f, p in zip(self.factors, parts):
            value = value * f.dim + p
        return value

    @cached_property
    def weights(self) -> List[Weight]:
        return [_add_weights(ws) for ws in product(*(f.weights for f in self.factors))]

    def __eq__(self, other):
        return (
            isinstance(other, ProductSpace)
            and len(self.factors) == len(other.factors)
            and all(a is b or a == b for a, b in zip(self.factors, other.factors))
        )

    def __hash__(self):
        return hash(tuple(id(f) for f in self.factors))


class DualSpace(GradedSpace):
    """쌍대 기저를 가진 쌍대 공간. 무게는 부호가 바뀝니다."""

    def __init__(self, base: GradedSpace):
        self.base = base
        self.dim = base.dim
        self.label = f"({base.label})*"

    @cached_property
    def weights(self) -> List[Weight]:
        return [None if w is None else tuple(-a for a in w) for w in self.base.weights]


def same_space(a: GradedSpace, b: GradedSpace) -> bool:
    return a is b or (a.dim == b.dim and a == b)


# --- 3. 사다리꼴 도우미 ---
def echelon(vectors: Sequence[Vector], field) -> Tuple[List[Vector], List[int]]:
    """벡터 목록을 RREF 로 줄입니다. (기저, 피벗) 을 돌려주고, 피벗 위치는 단위행렬입니다."""
    support = sorted({i for v in vectors for i, c in v.items() if c})
    if not support:
        return [], []
    local = {g: j for j, g in enumerate(support)}
    dod = {}
    for r, v in enumerate(vectors):
        row = {local[g]: c for g, c in v.items() if c}
        if row:
            dod[r] = row
    M = DomainMatrix.from_dod(dod, (len(vectors), len(support)), field)
    R, pivots = M.rref()
    rows = R.to_sparse().to_dod()
    basis = [{support[j]: c for j, c in rows.get(i, {}).items()} for i in range(len(pivots))]
    return basis, [support[pc] for pc in pivots]


def _kernel_local(dod: Entries, nrows: int, ncols: int, field) -> Tuple[List[Vector], List[int]]:
    """행렬의 영공간 (지역 열 인덱스). 자유 열마다 벡터 하나, 자유 열 목록도 같이."""
    if ncols == 0:
        return [], []
    if nrows == 0 or not dod:
        return [{j: field.one} for j in range(ncols)], list(range(ncols))
    M = DomainMatrix.from_dod(dod, (nrows, ncols), field)
    R, pivots = M.rref()
    rows = R.to_sparse().to_dod()
    pivset = set(pivots)
    basis, free = [], []
    for f in range(ncols):
        if f in pivset:
            continue
        free.append(f)
        v = {f: field.one}
        for i, pc in enumerate(pivots):
            c = rows.get(i, {}).get(f)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis, free


# --- 4. 부분공간 ---
class Subspace(GradedSpace):
    """주변 공간의 부분공간. 기저는 피벗 위치에서 단위행렬인 사다리꼴 형태.

    좌표는 피벗 성분을 읽으면 됩니다. coordinate_rows 는 주변 공간에서 이 공간으로의
    사영 e 의 피벗 행들이고, e 의 상이 곧 이 공간입니다."""

    def __init__(
        self,
        ambient: GradedSpace,
        vectors: List[Vector],
        pivots: List[int],
        field,
        label: str = "W",
        coordinate_rows: Optional[List[Vector]] = None,
    ):
        self.ambient = ambient
        self.vectors = vectors
        self.pivots = pivots
        self.field = field
        self.label = label
        self.coordinate_rows = coordinate_rows
        self.dim = len(vectors)

    # -- 생성 --
    @classmethod
    def span(cls, ambient: GradedSpace, vectors: Sequence[Vector], field, label: str = "W") -> "Subspace":
        """주어진 벡터들의 생성 공간. 모두 한 무게 블록에 있으면 블록별로 줄입니다."""
        vectors = [v for v in vectors if any(c for c in v.values())]
        homogeneous = ambient.graded and all(_vector_weight(ambient, v) is not None for v in vectors)
        if not homogeneous:
            basis, pivots = echelon(vectors, field)
            return cls(ambient, basis, pivots, field, label)
        grouped: Dict[Weight, List[Vector]] = {}
        for v in vectors:
            grouped.setdefault(_vector_weight(ambient, v), []).append(v)
        basis, pivots = [], []
        for w in sorted(grouped):
            b, p = echelon(grouped[w], field)
            basis.extend(b)
            pivots.extend(p)
        return cls(ambient, basis, pivots, field, label)

    @classmethod
    def full(cls, space: GradedSpace, field, label: Optional[str] = None) -> "Subspace":
        unit = [{i: field.one} for i in range(space.dim)]
        return cls(space, unit, list(range(space.dim)), field, label or space.label, coordinate_rows=unit)

    @classmethod
    def zero(cls, space: GradedSpace, field, label: str = "0") -> "Subspace":
        return cls(space, [], [], field, label, coordinate_rows=[])

    # -- 좌표 --
    def coords(self, vec: Vector, check: bool = True) -> List[Any]:
        c = [vec.get(p, self.field.zero) for p in self.pivots]
        if check:
            residual = dict(vec)
            for cj, b in zip(c, self.vectors):
                if not cj:
                    continue
                for i, x in b.items():
                    residual[i] = residual.get(i, self.field.zero) - cj * x
            bad = [i for i, x in residual.items() if x]
            if bad:
                raise ContainmentError(f"{self.label} 에 속하지 않는 벡터 (성분 {min(bad)})", witness=min(bad))
        return c

    def contains(self, vec: Vector) -> bool:
        try:
            self.coords(vec)
        except ContainmentError:
            return False
        return True

    def embed(self, coords: Sequence[Any]) -> Vector:
        out: Vector = {}
        for cj, b in zip(coords, self.vectors):
            if not cj:
                continue
            for i, x in b.items():
                out[i] = out.get(i, self.field.zero) + cj * x
        return {i: x for i, x in out.items() if x}

    # -- 무게 --
    @cached_property
    def weights(self) -> List[Weight]:
        return [_vector_weight(self.ambient, v) for v in self.vectors]

    def graded_basis(self) -> "Subspace":
        """각 기저 벡터의 무게 성분이 다시 이 공간에 들어있는지 확인하고 동차 기저로."""
        if self.graded:
            return self
        if not self.ambient.graded:
            raise NonGradedError(f"{self.label}: 주변 공간에 무게가 없습니다.")
        pieces = []
        for j, v in enumerate(self.vectors):
            parts: Dict[Weight, Vector] = {}
            for i, x in v.items():
                parts.setdefault(self.ambient.weight(i), {})[i] = x
            for w, part in parts.items():
                if not self.contains(part):
                    raise NonGradedError(f"{self.label}: 기저 {j} 의 무게 {w} 성분이 공간 밖에 있습니다.", witness=(j, w))
                pieces.append(part)
        return Subspace.span(self.ambient, pieces, self.field, self.label)

    # -- 사영 --
    @cached_property
    def coordinate_map(self) -> "LinMap":
        """주변 공간 → 이 공간 (사영 후 좌표)."""
        if self.coordinate_rows is None:
            raise ValueError(f"{self.label}: 사영 정보가 없습니다.")
        return LinMap(self.ambient, self, dict(enumerate(self.coordinate_rows)), self.field)

    def inclusion(self) -> "LinMap":
        return LinMap.from_columns(self, self.ambient, self.vectors, self.field)

    def projector(self) -> "LinMap":
        """주변 공간 위의 멱등원 e (상 = 이 공간)."""
        return self.inclusion() @ self.coordinate_map

    def project(self, vec: Vector) -> Vector:
        return self.coordinate_map.apply(vec)

    def describe(self) -> Dict[str, Any]:
        return {"label": self.label, "ambient": self.ambient.label, "ambient_dim": self.ambient.dim, "dim": self.dim}

    def to_json(self) -> Dict[str, Any]:
        return self.describe()

    def to_frame(self) -> pd.DataFrame:
        data = [[format_scalar(v.get(i, 0)) for v in self.vectors] for i in range(self.ambient.dim)]
        return pd.DataFrame(data, columns=[f"b{j}" for j in range(self.dim)])

    def to_csv(self, path: str):
        self.to_frame().to_csv(path, index_label=self.ambient.label)


def _vector_weight(ambient: GradedSpace, v: Vector) -> Optional[Weight]:
    """벡터가 한 무게 공간에 들어 있으면 그 무게, 아니면 None."""
    ws = {ambient.weight(i) for i, c in v.items() if c}
    return ws.pop() if len(ws) == 1 else None


def tensor_subspaces(*parts: GradedSpace, label: Optional[str] = None) -> Subspace:
    """부분공간(또는 전체 공간)들의 텐서곱을 주변 공간들의 곱 안의 부분공간으로."""
    subs = [p if isinstance(p, Subspace) else None for p in parts]
    field = next(s.field for s in subs if s is not None)
    subs = [s if s is not None else Subspace.full(p, field) for s, p in zip(subs, parts)]
    ambient = ProductSpace(*(s.ambient for s in subs))
    vectors: List[Vector] = [{}]
    pivots: List[Tuple[int, ...]] = [()]
    for s in subs:
        new_vectors, new_pivots = [], []
        for v, pv in zip(vectors, pivots):
            for b, pb in zip(s.vectors, s.pivots):
                if not v and pv == ():
                    new_vectors.append({(i,): x for i, x in b.items()})
                else:
                    new_vectors.append({key + (i,): x * y for key, x in v.items() for i, y in b.items()})
                new_pivots.append(pv + (pb,))
        vectors, pivots = new_vectors, new_pivots
    flat_vectors = [{ambient.join(key): x for key, x in v.items()} for v in vectors]
    flat_pivots = [ambient.join(p) for p in pivots]
    return Subspace(ambient, flat_vectors, flat_pivots, field, label or "·".join(s.label for s in subs))


# --- 5. 선형사상 ---
def _matmul(A: Entries, B: Entries) -> Entries:
    out: Entries = {}
    for i, arow in A.items():
        acc: Dict[int, Any] = {}
        for k, a in arow.items():
            brow = B.get(k)
            if not brow:
                continue
            for j, b in brow.items():
                if j in acc:
                    acc[j] = acc[j] + a * b
                else:
                    acc[j] = a * b
        acc = {j: x for j, x in acc.items() if x}
        if acc:
            out[i] = acc
    return out


def _combine(A: Entries, B: Entries, sign: int) -> Entries:
    out = {i: dict(row) for i, row in A.items()}
    for i, brow in B.items():
        row = out.setdefault(i, {})
        for j, b in brow.items():
            value = row[j] + sign * b if j in row else sign * b
            if value:
                row[j] = value
            else:
                row.pop(j, None)
        if not row:
            del out[i]
    return out


class LinMap:
    """dom → cod 선형사상. entries[행][열], 행은 공역 인덱스."""

    def __init__(self, dom: GradedSpace, cod: GradedSpace, entries: Entries, field):
        self.dom = dom
        self.cod = cod
        self.field = field
        self.entries = {i: {j: x for j, x in row.items() if x} for i, row in entries.items()}
        self.entries = {i: row for i, row in self.entries.items() if row}

    # -- 생성 --
    @classmethod
    def zero(cls, dom, cod, field) -> "LinMap":
        return cls(dom, cod, {}, field)

    @classmethod
    def identity(cls, space, field) -> "LinMap":
        return cls(space, space, {i: {i: field.one} for i in range(space.dim)}, field)

    @classmethod
    def from_columns(cls, dom, cod, columns: Sequence[Vector], field) -> "LinMap":
        entries: Entries = {}
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x:
                    entries.setdefault(i, {})[j] = x
        return cls(dom, cod, entries, field)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.cod.dim, self.dom.dim)

    # -- 적용 --
    @cached_property
    def _columns(self) -> Dict[int, Vector]:
        cols: Dict[int, Vector] = {}
        for i, row in self.entries.items():
            for j, x in row.items():
                cols.setdefault(j, {})[i] = x
        return cols

    def column(self, j: int) -> Vector:
        return self._columns.get(j, {})

    def apply(self, vec: Vector) -> Vector:
        out: Vector = {}
        for j, x in vec.items():
            if not x:
                continue
            for i, a in self.column(j).items():
                out[i] = out[i] + a * x if i in out else a * x
        return {i: y for i, y in out.items() if y}

    # -- 대수 연산 --
    def __matmul__(self, other: "LinMap") -> "LinMap":
        """self ∘ other (other 가 먼저)."""
        if not same_space(self.dom, other.cod):
            raise ValueError(f"합성 불가: {other.cod.label} → {self.dom.label}")
        return LinMap(other.dom, self.cod, _matmul(self.entries, other.entries), self.field)

    def __add__(self, other: "LinMap") -> "LinMap":
        self._check_same(other)
        return LinMap(self.dom, self.cod, _combine(self.entries, other.entries, 1), self.field)

    def __sub__(self, other: "LinMap") -> "LinMap":
        self._check_same(other)
        return LinMap(self.dom, self.cod, _combine(self.entries, other.entries, -1), self.field)

    def __neg__(self) -> "LinMap":
        return self.scale(-self.field.one)

    def scale(self, c) -> "LinMap":
        return LinMap(self.dom, self.cod, {i: {j: c * x for j, x in row.items()} for i, row in self.entries.items()}, self.field)

    def shift(self, c) -> "LinMap":
        """self - c·id."""
        return self - LinMap.identity(self.dom, self.field).scale(c)

    def _check_same(self, other: "LinMap"):
        if not (same_space(self.dom, other.dom) and same_space(self.cod, other.cod)):
            raise ValueError(f"모양 불일치: {self.shape} vs {other.shape}")

    def transpose(self) -> "LinMap":
        return LinMap(self.cod, self.dom, self._columns, self.field)

    # -- 판정 --
    def is_zero(self) -> bool:
        return not self.entries

    def first_nonzero(self) -> Optional[Tuple[int, int, Any]]:
        if not self.entries:
            return None
        i = min(self.entries)
        j = min(self.entries[i])
        return (i, j, self.entries[i][j])

    def equals(self, other: "LinMap") -> bool:
        return (self - other).is_zero()

    @cached_property
    def weight_preserving(self) -> bool:
        if not (self.dom.graded and self.cod.graded):
            return False
        return all(self.cod.weight(i) == self.dom.weight(j) for i, row in self.entries.items() for j in row)

    def blocks(self) -> List[Tuple[List[int], List[int]]]:
        """(행 인덱스, 열 인덱스) 블록 목록. 무게를 보존하지 않으면 통째로 한 블록."""
        if not self.weight_preserving:
            return [(list(range(self.cod.dim)), list(range(self.dom.dim)))]
        rows, cols = self.cod.blocks, self.dom.blocks
        return [(rows.get(w, []), cols.get(w, [])) for w in sorted(set(rows) | set(cols))]

    def _block_dod(self, rows: List[int], cols: List[int]) -> Entries:
        col_pos = {j: c for c, j in enumerate(cols)}
        dod: Entries = {}
        for r, i in enumerate(rows):
            row = self.entries.get(i)
            if not row:
                continue
            local = {col_pos[j]: x for j, x in row.items() if j in col_pos}
            if local:
                dod[r] = local
        return dod

    def block_ranks(self) -> Dict[Optional[Weight], int]:
        """무게별 계수. 무게를 보존하지 않으면 {None: 전체 계수}."""
        if not self.weight_preserving:
            keyed = [(None, list(range(self.cod.dim)), list(range(self.dom.dim)))]
        else:
            rows, cols = self.cod.blocks, self.dom.blocks
            keyed = [(w, rows.get(w, []), cols.get(w, [])) for w in sorted(set(rows) | set(cols))]
        out: Dict[Optional[Weight], int] = {}
        for w, r, c in keyed:
            dod = self._block_dod(r, c)
            out[w] = DomainMatrix.from_dod(dod, (len(r), len(c)), self.field).rank() if dod else 0
        return out

    def rank(self) -> int:
        return sum(self.block_ranks().values())

    def is_invertible(self) -> bool:
        return self.dom.dim == self.cod.dim and self.rank() == self.dom.dim

    def inverse(self) -> "LinMap":
        entries: Entries = {}
        for rows, cols in self.blocks():
            if len(rows) != len(cols):
                raise NonInvertibleLoopError(f"정사각이 아닌 블록 {len(rows)}x{len(cols)}")
            if not rows:
                continue
            M = DomainMatrix.from_dod(self._block_dod(rows, cols), (len(rows), len(cols)), self.field)
            try:
                inv = M.inv().to_sparse().to_dod()
            except (DMNonInvertibleMatrixError, ZeroDivisionError) as exc:
                raise NonInvertibleLoopError(f"역행렬 없음 ({self.dom.label})") from exc
            for r, row in inv.items():
                entries[cols[r]] = {rows[c]: x for c, x in row.items()}
        return LinMap(self.cod, self.dom, entries, self.field)

    def trace(self):
        total = self.field.zero
        for i, row in self.entries.items():
            if i in row:
                total += row[i]
        return total

    def charpoly(self) -> Poly:
        """특성다항식 det(t - M). 무게 블록마다 구해서 곱합니다."""
        if self.dom.dim != self.cod.dim:
            raise ValueError(f"정사각 행렬이 아닙니다: {self.shape}")
        result = Poly(1, EIGEN_VAR, domain=self.field)
        for rows, cols in self.blocks():
            if len(rows) != len(cols):
                raise ValueError(f"정사각이 아닌 블록 {len(rows)}x{len(cols)}")
            if not rows:
                continue
            M = DomainMatrix.from_dod(self._block_dod(rows, cols), (len(rows), len(cols)), self.field)
            result = result * Poly(M.charpoly(), EIGEN_VAR, domain=self.field)
        return result

    # -- 출력 --
    def to_frame(self) -> pd.DataFrame:
        data = [[format_scalar(self.entries.get(i, {}).get(j, 0)) for j in range(self.dom.dim)] for i in range(self.cod.dim)]
        return pd.DataFrame(data, index=[f"r{i}" for i in range(self.cod.dim)], columns=[f"c{j}" for j in range(self.dom.dim)])

    def to_csv(self, path: str):
        self.to_frame().to_csv(path)

    def to_json(self) -> Dict[str, Any]:
        return {"dom": self.dom.label, "cod": self.cod.label, "shape": list(self.shape), "nonzero": sum(len(r) for r in self.entries.values())}

    def __repr__(self):
        return f"<LinMap {self.dom.label} → {self.cod.label} {self.shape}>"


def kron(A: LinMap, B: LinMap) -> LinMap:
    """A ⊗ B. 정의역/공역은 인자 공간들의 곱."""
    dom = ProductSpace(A.dom, B.dom)
    cod = ProductSpace(A.cod, B.cod)
    nr, nc = B.cod.dim, B.dom.dim
    entries: Entries = {}
    for i, arow in A.entries.items():
        for k, brow in B.entries.items():
            row = entries.setdefault(i * nr + k, {})
            for j, a in arow.items():
                for l, b in brow.items():
                    row[j * nc + l] = a * b
    return LinMap(dom, cod, entries, A.field)


def kron_sum(terms: Sequence[Tuple[Any, LinMap, LinMap]], dom: GradedSpace, cod: GradedSpace, field) -> LinMap:
    """Σ c·(A ⊗ B) 를 dom → cod 사상으로 모읍니다."""
    acc: Entries = {}
    for c, A, B in terms:
        if not c or A.is_zero() or B.is_zero():
            continue
        K = kron(A, B)
        acc = _combine(acc, {i: {j: c * x for j, x in row.items()} for i, row in K.entries.items()}, 1)
    return LinMap(dom, cod, acc, field)


# --- 6. 상/핵/제한 ---
def image_kernel(M: LinMap, labels: Tuple[str, str] = ("Im", "Ker")) -> Tuple[Subspace, Subspace]:
    """(Im M ⊆ cod, Ker M ⊆ dom). 무게 블록별로 사다리꼴을 구합니다."""
    image_vectors, image_pivots = [], []
    kernel_vectors, kernel_pivots = [], []
    for rows, cols in M.blocks():
        dod = M._block_dod(rows, cols)
        # 상: 열들을 행으로 놓고 줄인다
        cols_as_rows: Dict[int, Vector] = {}
        for r, row in dod.items():
            for c, x in row.items():
                cols_as_rows.setdefault(c, {})[rows[r]] = x
        b, p = echelon(list(cols_as_rows.values()), M.field)
        image_vectors.extend(b)
        image_pivots.extend(p)
        ker, free = _kernel_local(dod, len(rows), len(cols), M.field)
        for v, f in zip(ker, free):
            kernel_vectors.append({cols[c]: x for c, x in v.items()})
            kernel_pivots.append(cols[f])
    image = Subspace(M.cod, image_vectors, image_pivots, M.field, f"{labels[0]}({M.cod.label})")
    kernel = Subspace(M.dom, kernel_vectors, kernel_pivots, M.field, f"{labels[1]}({M.dom.label})")
    logger.info("[LinAlg] %s: rank=%d nullity=%d", M, image.dim, kernel.dim)
    return image, kernel


def restrict(M: LinMap, dom: GradedSpace, cod: GradedSpace) -> LinMap:
    """부분공간 기저로 쓴 M 의 행렬. M(dom) ⊆ cod 를 정확히 검사합니다."""
    dom_vectors = dom.vectors if isinstance(dom, Subspace) and same_space(dom.ambient, M.dom) else None
    if dom_vectors is None:
        if not same_space(dom, M.dom):
            raise ValueError(f"정의역 불일치: {dom.label} vs {M.dom.label}")
        dom_vectors = [{i: M.field.one} for i in range(dom.dim)]
    columns = []
    for j, b in enumerate(dom_vectors):
        image = M.apply(b)
        if isinstance(cod, Subspace) and same_space(cod.ambient, M.cod):
            try:
                c = cod.coords(image)
            except ContainmentError as exc:
                raise ContainmentError(f"제한 실패: {dom.label} 의 기저 {j} 가 {cod.label} 밖으로 갑니다.", witness=j) from exc
            columns.append({t: x for t, x in enumerate(c) if x})
        elif same_space(cod, M.cod):
            columns.append(image)
        else:
            raise ValueError(f"공역 불일치: {cod.label} vs {M.cod.label}")
    return LinMap.from_columns(dom, cod, columns, M.field)


def weight_components(W: Subspace) -> Dict[Weight, int]:
    """무게 블록별 차원. 주변 공간의 모든 무게를 키로 (0 포함)."""
    graded = W.graded_basis()
    counts = Counter(graded.weights)
    return {w: counts.get(w, 0) for w in W.ambient.blocks}
