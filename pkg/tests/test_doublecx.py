import pytest
from sympy.polys.domains import QQ

from src import doublecx
from src.charformula import x_char, y_char
from src.doublecx import (
    LOOP_KER,
    LOOP_S,
    annihilates,
    claimed_s,
    eigen_check,
    empirical_eigenvalues,
    evaluation_points,
    extract_X,
    ker_equals_image,
    ker_P,
    loop_ker_degree,
    loop_S,
    loop_s_degree,
    subspace_char,
    verify_splitting,
)
from src.koszul import L_space, T_space, p_map
from src.scalar import EvalPoint, q_int
from src.tensorspace import BasisIndex, LinMap, SuperDim


def test_loop_degrees():
    assert loop_s_degree(0, 0) == 2
    assert loop_s_degree(2, 0) == 6
    assert loop_ker_degree(0, 1, 0) == 6


def test_loop_range_checks(H_exact):
    with pytest.raises(ValueError):
        loop_S(H_exact, -1, 0)
    with pytest.raises(ValueError):
        loop_S(H_exact, 0, -1)


def test_loop_s_at_origin_is_scalar(H_exact):
    M = loop_S(H_exact, 0, 0)
    assert M.shape == (1, 1)
    assert annihilates(M, claimed_s(H_exact, 0, 0))


def test_claimed_eigenvalue_at_origin(H_exact):
    p = H_exact.hecke_param
    (value,) = claimed_s(H_exact, 0, 0)
    assert value == -q_int(-2, p)


@pytest.mark.parametrize("i, a", [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)])
def test_loop_s_eigenvalues_exact(H_exact, i, a):
    report = eigen_check(H_exact, LOOP_S, {"i": i, "a": a})
    assert report.certification == "exact"
    assert report.annihilation
    assert report.invertible
    assert report.all_attained
    assert report.dim == T_space(H_exact, i, 0, a + i).dim


@pytest.mark.slow
def test_loop_s_two_point_certification(H_exact):
    report = eigen_check(H_exact, LOOP_S, {"i": 2, "a": 0})
    assert report.certification == "two-point"
    assert report.ok


@pytest.mark.slow
def test_loop_ker_eigenvalues(H_exact):
    report = eigen_check(H_exact, LOOP_KER, {"i": 0, "k": 1, "a": 0})
    assert report.certification == "two-point"
    assert report.invertible
    assert report.annihilation
    assert report.to_json()["operator"] == LOOP_KER


@pytest.mark.slow
@pytest.mark.parametrize("i, k, a", [(0, 1, 1), (0, 2, 0), (1, 1, 0)])
def test_loop_ker_eigenvalues_beyond_origin(H_exact, i, k, a):
    report = eigen_check(H_exact, LOOP_KER, {"i": i, "k": k, "a": a})
    assert report.certification == "two-point"
    assert report.ok
    assert report.all_attained


def test_eigen_check_rejects_unknown_loop(H_exact):
    with pytest.raises(ValueError):
        eigen_check(H_exact, "loop_T", {"i": 0, "a": 0})


@pytest.mark.parametrize("i, k", [(1, 1), (2, 1), (1, 2)])
def test_ker_p_equals_image(H_exact, i, k):
    assert ker_equals_image(H_exact, i, k)
    assert ker_P(H_exact, i, k).dim + p_map(H_exact, i, k).rank() == L_space(H_exact, i, k).dim


def test_x_summand_at_origin(H_exact):
    sp = extract_X(H_exact, 0, 0)
    assert sp.summand.dim == 15
    assert sp.split.dim == 1
    e = sp.projector
    assert (e @ e).equals(e)
    identity = LinMap.identity(sp.ambient, H_exact.domain)
    assert ((identity - e) @ e).is_zero()


@pytest.mark.parametrize("i, a", [(0, 0), (0, 1), (1, 0)])
def test_x_splitting_and_character(H_exact, i, a):
    report = verify_splitting(H_exact, "X", {"i": i, "a": a})
    assert report["ok"]
    assert report["chars_additive"]
    assert report["character"] == x_char(i, a)


def test_x_character_matches_weight_count(H_exact):
    sp = extract_X(H_exact, 0, 0)
    assert subspace_char(sp.summand) == x_char(0, 0)


@pytest.mark.slow
def test_y_splitting(H_eval):
    report = verify_splitting(H_eval, "Y", {"i": 0, "k": 1, "a": 0})
    assert report["idempotent"] and report["rank_ok"] and report["dims_additive"]
    assert report["chars_additive"]


@pytest.mark.slow
def test_y_character(H_eval):
    report = verify_splitting(H_eval, "Y", {"i": 0, "k": 2, "a": 0})
    assert report["ok"]
    assert report["character"] == y_char(0, 2, 0)


def test_unknown_summand_kind(H_exact):
    with pytest.raises(ValueError):
        verify_splitting(H_exact, "Z", {"i": 0, "a": 0})


# --- 주장이 틀렸을 때 실제 고유값 기록 ---
def _wrong_claim(monkeypatch):
    monkeypatch.setattr(doublecx, "claimed_s", lambda H, i, a: [H.domain.convert(5)])


def test_empirical_eigenvalues_of_diagonal_map():
    V = BasisIndex(SuperDim(3, 1), 1, 0)
    M = LinMap(V, V, {0: {0: QQ(2)}, 1: {1: QQ(2)}, 2: {2: QQ(1, 2)}, 3: {3: QQ(-1)}}, QQ)
    assert empirical_eigenvalues(M) == [
        {"value": "-1", "multiplicity": 1},
        {"value": "1/2", "multiplicity": 1},
        {"value": "2", "multiplicity": 2},
    ]


def test_failed_annihilation_records_actual_eigenvalues(H_exact, monkeypatch):
    _wrong_claim(monkeypatch)
    report = eigen_check(H_exact, LOOP_S, {"i": 0, "a": 0})
    assert not report.annihilation
    assert report.attained == []
    # -[-2] = (1+p)/p² at q = 7/5
    assert report.empirical == [{"value": "1850/2401", "multiplicity": 1}]
    assert report.empirical_point == "evaluated@7/5"
    assert report.to_json()["empirical"] == report.empirical


def test_successful_check_has_no_empirical_record(H_exact):
    report = eigen_check(H_exact, LOOP_S, {"i": 0, "a": 0})
    assert report.empirical is None
    assert report.to_json()["empirical_point"] is None


# --- 평가점 전달 ---
def test_configured_point_is_used(H_exact, monkeypatch):
    _wrong_claim(monkeypatch)
    report = eigen_check(H_exact, LOOP_S, {"i": 0, "a": 0}, EvalPoint("11/7"))
    assert report.empirical_point == "evaluated@11/7"
    assert report.empirical == [{"value": "8330/14641", "multiplicity": 1}]


def test_two_points_are_distinct():
    assert evaluation_points(EvalPoint("3/2")) == (EvalPoint("3/2"), EvalPoint("11/7"))
    assert evaluation_points(EvalPoint("11/7")) == (EvalPoint("11/7"), EvalPoint("7/5"))
    assert evaluation_points(None) == (EvalPoint("7/5"), EvalPoint("11/7"))
