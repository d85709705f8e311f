import pytest
from sympy import Poly
from sympy.polys.domains import QQ

from src.errors import ContainmentError, NonGradedError
from src.hecke import EXT, ext_space, sym_space, symmetrizer
from src.tensorspace import (
    EIGEN_VAR,
    BasisIndex,
    LinMap,
    ProductSpace,
    SuperDim,
    Subspace,
    image_kernel,
    kron,
    restrict,
    weight_components,
)

D31 = SuperDim(3, 1)
EPS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


def test_superdim_rejects_empty():
    with pytest.raises(ValueError):
        SuperDim(0, 0)


def test_vector_weights_and_parity():
    V = BasisIndex(D31, 1, 0)
    assert V.weights == EPS
    assert [V.parity(i) for i in range(V.dim)] == [0, 0, 0, 1]


def test_dual_weights_are_negated():
    Vs = BasisIndex(D31, 0, 1)
    assert Vs.weights == [tuple(-a for a in e) for e in EPS]


def test_square_basis():
    VV = BasisIndex(D31, 2, 0)
    assert VV.dim == 16
    idx = VV.index((3, 3))
    assert VV.monomial(idx) == (3, 3)
    assert VV.weight(idx) == (0, 0, 0, 2)
    assert VV.parity(idx) == 0
    assert VV.parity(VV.index((0, 3))) == 1


def test_product_space_split_join():
    W = ProductSpace(BasisIndex(D31, 1, 0), BasisIndex(D31, 0, 1))
    assert W.dim == 16
    assert W.join(W.split(11)) == 11
    assert W.weight(W.join((2, 2))) == (0, 0, 0, 0)


def test_image_kernel_identity_and_zero():
    V = BasisIndex(D31, 1, 0)
    image, kernel = image_kernel(LinMap.identity(V, QQ))
    assert (image.dim, kernel.dim) == (4, 0)
    image, kernel = image_kernel(LinMap.zero(V, V, QQ))
    assert (image.dim, kernel.dim) == (0, 4)


def test_ext_square_has_rank_seven(H_exact):
    image, kernel = image_kernel(symmetrizer(H_exact, 2, EXT))
    assert image.dim == 7
    assert kernel.dim == 9


def test_restrict_identity():
    V = BasisIndex(D31, 1, 0)
    W = Subspace.span(V, [{0: QQ(1)}, {3: QQ(2)}], QQ, "W")
    M = restrict(LinMap.identity(V, QQ), W, W)
    assert M.equals(LinMap.identity(W, QQ))


def test_restrict_reports_escape():
    V = BasisIndex(D31, 1, 0)
    src = Subspace.span(V, [{3: QQ(1)}], QQ, "src")
    dst = Subspace.span(V, [{0: QQ(1)}], QQ, "dst")
    with pytest.raises(ContainmentError):
        restrict(LinMap.identity(V, QQ), src, dst)


def test_inverse_roundtrip():
    V = BasisIndex(D31, 1, 0)
    M = LinMap(V, V, {0: {0: QQ(2)}, 1: {1: QQ(3)}, 2: {2: QQ(1)}, 3: {3: QQ(-1)}}, QQ)
    assert (M @ M.inverse()).equals(LinMap.identity(V, QQ))
    assert M.is_invertible()
    assert M.shift(QQ(2)).rank() == 3


def test_kron_shape():
    V = BasisIndex(D31, 1, 0)
    K = kron(LinMap.identity(V, QQ), LinMap.identity(V, QQ))
    assert K.shape == (16, 16)
    assert K.trace() == 16


def test_weight_components_of_ext1(H_exact):
    counts = weight_components(ext_space(H_exact, 1))
    assert counts == {e: 1 for e in EPS}


def test_weight_components_of_sym2(H_exact):
    counts = weight_components(sym_space(H_exact, 2))
    assert sum(counts.values()) == 9
    assert counts[(0, 0, 0, 2)] == 0
    assert counts[(1, 0, 0, 1)] == 1
    assert counts[(2, 0, 0, 0)] == 1


def test_mixed_weight_span_is_rejected():
    V = BasisIndex(D31, 1, 0)
    W = Subspace.span(V, [{0: QQ(1), 1: QQ(1)}], QQ, "mixed")
    with pytest.raises(NonGradedError):
        weight_components(W)


def test_projector_trace_is_dimension(H_exact):
    S2 = sym_space(H_exact, 2)
    e = S2.projector()
    assert e.trace() == 9
    assert (e @ e).equals(e)


def test_frame_export():
    V = BasisIndex(D31, 1, 0)
    frame = LinMap.identity(V, QQ).to_frame()
    assert frame.shape == (4, 4)
    assert frame.loc["r0", "c0"] == "1"


def test_charpoly_multiplies_weight_blocks():
    V = BasisIndex(D31, 1, 0)
    M = LinMap(V, V, {0: {0: QQ(2)}, 1: {1: QQ(2)}, 2: {2: QQ(3)}, 3: {3: QQ(-1)}}, QQ)
    t = EIGEN_VAR
    assert M.charpoly() == Poly((t - 2) ** 2 * (t - 3) * (t + 1), t, domain=QQ)


def test_charpoly_needs_square_map():
    V, VV = BasisIndex(D31, 1, 0), BasisIndex(D31, 2, 0)
    with pytest.raises(ValueError):
        LinMap.zero(V, VV, QQ).charpoly()
