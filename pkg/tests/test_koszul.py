import pytest

from src import config
from src.charformula import BER, PROD_XY
from src.comodule import character_of
from src.errors import BudgetExceededError
from src.koszul import (
    K_space,
    KoszulIndex,
    L_space,
    T_space,
    contraction_values,
    d_map,
    homology_K,
    homology_L,
    image_of_d,
    image_splitting,
    koszul_map,
    partial_map,
    scan_homology,
    symmetry_birank,
    verify_bicomplex,
    verify_ct3,
    verify_ct60,
)


def test_koszul_index():
    assert KoszulIndex("K", 3, 1).a == 2
    assert KoszulIndex("L", 2, 1).a == 3
    assert str(KoszulIndex("K", 3, 1)) == "K_(3,1)"
    with pytest.raises(ValueError):
        KoszulIndex("M", 0, 0)
    with pytest.raises(ValueError):
        KoszulIndex("K", -1, 0)


def test_term_dimensions(H_exact):
    assert K_space(H_exact, 2, 1).dim == 7 * 4
    assert L_space(H_exact, 2, 1).dim == 9 * 4
    assert T_space(H_exact, 1, 1, 1).dim == 4 * 4 * 4


def test_term_spaces_are_cached(H_exact):
    assert K_space(H_exact, 1, 1) is K_space(H_exact, 1, 1)
    assert d_map(H_exact, 0, 0).cod is K_space(H_exact, 1, 1)


def test_contraction_is_diagonal(H_exact):
    values = contraction_values(H_exact)
    assert all(i == j for i, j in values)
    assert len(values) == 4


def test_partial_after_d_at_origin(H_exact):
    M = partial_map(H_exact, 0, 0) @ d_map(H_exact, 0, 0)
    p = H_exact.hecke_param
    assert M.shape == (1, 1)
    assert M.entries[0][0] == (1 + p) / p**2


def test_koszul_map_checks_family(H_exact):
    assert koszul_map(H_exact, "d", KoszulIndex("K", 0, 0)) is d_map(H_exact, 0, 0)
    with pytest.raises(ValueError):
        koszul_map(H_exact, "P", KoszulIndex("K", 1, 0))
    with pytest.raises(ValueError):
        koszul_map(H_exact, "X", KoszulIndex("K", 1, 0))


def test_symmetry_birank(H_exact):
    assert symmetry_birank(H_exact) == (3, 1)


@pytest.mark.parametrize("k, l", [(k, l) for k in range(4) for l in range(4) if k + l <= 3])
def test_scalar_identity_on_K(H_exact, k, l):
    report = verify_ct3(H_exact, k, l)
    assert report.ok, report.witness
    assert report.extra["sign"] == "s-r"
    assert "s-r" in report.extra["passing_signs"]


@pytest.mark.slow
@pytest.mark.parametrize("k, l", [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)])
def test_scalar_identity_on_K_degree_four(H_exact, monkeypatch, k, l):
    # 정확 백엔드로 k+l = 4 까지 (필요한 차수 6)
    monkeypatch.setattr(config, "EXACT_BUDGET", 6)
    report = verify_ct3(H_exact, k, l)
    assert report.ok, report.witness
    assert report.extra["sign"] == "s-r"


def test_other_sign_fails_somewhere(H_exact):
    report = verify_ct3(H_exact, 0, 0)
    assert report.extra["residual_zero_r_minus_s"] is False


@pytest.mark.parametrize("p, r", [(p, r) for p in range(5) for r in range(5) if p + r <= 4])
def test_scalar_identity_on_L(H_exact, p, r):
    report = verify_ct60(H_exact, p, r)
    assert report.ok, report.witness


def test_bicomplex_relations(H_exact):
    report = verify_bicomplex(H_exact, 5)
    assert report["checked"] > 0
    assert report["ok"], [f.to_json() for f in report["failures"]]


def test_budget_is_enforced(H_exact):
    with pytest.raises(BudgetExceededError) as info:
        d_map(H_exact, 3, 1)
    assert info.value.required == 6
    assert info.value.allowed == 5


@pytest.mark.slow
def test_budget_is_enforced_on_cached_maps(H_exact, monkeypatch):
    monkeypatch.setattr(config, "EXACT_BUDGET", 6)
    d_map(H_exact, 3, 1)
    monkeypatch.setattr(config, "EXACT_BUDGET", 5)
    with pytest.raises(BudgetExceededError):
        d_map(H_exact, 3, 1)


def test_L_complexes_are_exact(H_exact):
    for a in (1, 2, 3):
        assert all(slot.dim == 0 for slot in homology_L(H_exact, a))


@pytest.mark.slow
def test_homology_sits_at_three_one(H_eval):
    slots = homology_K(H_eval, 2, 6)
    dims = {slot.position: slot.dim for slot in slots}
    assert dims == {(2, 0): 0, (3, 1): 1, (4, 2): 0}
    ber = next(slot for slot in slots if slot.position == (3, 1))
    assert ber.character == BER


@pytest.mark.slow
def test_scan_finds_single_nontrivial_slot(H_eval):
    result = scan_homology(H_eval, 3, 6)
    assert [(s.a, s.position, s.dim) for s in result["nontrivial"]] == [(2, (3, 1), 1)]


def test_image_splitting_dims(H_exact):
    incoming, outgoing = image_splitting(H_exact, 1, 1)
    assert incoming.dim + outgoing.dim == 16
    assert incoming.dim == 1


def test_image_splitting_skips_exceptional_complex(H_exact):
    with pytest.raises(ValueError):
        image_splitting(H_exact, 3, 1)


def test_image_of_d_is_injective_at_leading_term(H_exact):
    W = image_of_d(H_exact, 3, 0)
    assert W.dim == 8
    assert character_of(H_exact, W) == PROD_XY
