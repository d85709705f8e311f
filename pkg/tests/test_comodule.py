from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from src.charformula import BER, CH_V, PROD_XY, hook_schur, im_d_closed
from src.comodule import (
    BEREZINIAN,
    CASES,
    IM_D,
    WeightLabel,
    build_irrep,
    char_table,
    char_table_frame,
    character_of,
    classify,
    decomposition_series,
    dispatch_frame,
    dispatch_table,
    dual_char,
    plan_character,
    plan_degree,
    plan_for,
    sign_convention_check,
)
from src.errors import NonDominantWeightError, NonStandardSymmetryError
from src.hecke import build_standard_r, hook_partitions, young_module

GOLDEN = Path(__file__).parent / "golden"

weights = st.lists(st.integers(min_value=-10, max_value=10), min_size=3, max_size=3).map(
    lambda xs: sorted(xs, reverse=True)
)


# --- 경우 나누기 ---
@pytest.mark.parametrize(
    "triple, case",
    [
        ((1, 1, 1), "young"),
        ((0, 0, -1), "im_d"),
        ((1, 0, -1), "Y"),
        ((0, -1, -1), "X"),
        ((0, -2, -3), "dual_3b"),
        ((-1, -1, -2), "dual_4a"),
        ((-1, -2, -2), "dual_4b"),
        ((-2, -2, -2), "dual_4c"),
        ((-3, -3, -3), "dual_4d"),
    ],
)
def test_classify(triple, case):
    assert classify(*triple) == case


def test_non_dominant_rejected():
    with pytest.raises(NonDominantWeightError):
        classify(0, 1, 0)
    with pytest.raises(NonDominantWeightError):
        WeightLabel(0, 0, 1)


def test_weight_parse():
    assert WeightLabel.parse("1,1,1,1") == WeightLabel(1, 1, 1, 1)
    assert WeightLabel.parse("2,1,0") == WeightLabel(2, 1, 0, 0)
    assert WeightLabel.parse("0,0,-1|2") == WeightLabel(0, 0, -1, 2)
    assert str(WeightLabel(0, 0, -1, 2)) == "(0,0,-1|2)"
    with pytest.raises(ValueError):
        WeightLabel.parse("1,2")


def test_reduction_by_t():
    w = WeightLabel(3, 2, 2, 2)
    assert w.reduced == (1, 0, 0)
    assert plan_for(w).twist == 2


def test_im_d_plan():
    plan = plan_for(WeightLabel(0, 0, -1))
    assert plan.case == IM_D
    assert plan.base == "image_splitting"
    assert (plan.params["k"], plan.params["l"]) == (2, 1)
    assert plan.twist == -1
    assert plan_degree(plan) == 5


def test_berezinian_plan():
    plan = plan_for(WeightLabel(1, 1, 1, 1))
    assert plan.case == BEREZINIAN
    assert plan_character(plan) == BER


def test_dual_plan_has_child():
    plan = plan_for(WeightLabel(-3, -3, -3))
    assert plan.dual_count == 1
    assert plan.child is not None
    assert plan.to_json()["child"]["case"] == plan.child.case


@given(weights, st.integers(min_value=-10, max_value=10))
def test_dispatch_is_total(triple, t):
    plan = plan_for(WeightLabel(*triple, t))
    assert plan.case in CASES or plan.case == BEREZINIAN


def test_dispatch_table_covers_box():
    rows = list(dispatch_table(1, (0, 1)))
    assert len(rows) == 20
    assert all(case in CASES or case == BEREZINIAN for _, case in rows)


def test_dispatch_table_matches_golden():
    expected = (GOLDEN / "dispatch_box2.csv").read_text(encoding="utf-8")
    assert dispatch_frame(2).to_csv(index=False) == expected


def test_dispatch_is_total_on_box_ten():
    for t in range(-10, 11):
        for w, case in dispatch_table(10, (t,)):
            assert case in CASES or case == BEREZINIAN, w
            assert (case == BEREZINIAN) == (w.reduced == (0, 0, 0) and t != 0), w


# --- 지표 ---
def test_young_character_is_hook_schur():
    assert plan_character(plan_for(WeightLabel(2, 1, 0))) == hook_schur((2, 1))
    assert plan_character(plan_for(WeightLabel(1, 1, 1))) == PROD_XY


def test_im_d_character_is_twisted():
    ch = plan_character(plan_for(WeightLabel(0, 0, -1)))
    assert ch == im_d_closed(2, 1) * BER**-1
    assert ch.total_dim() == 24


def test_dual_char():
    assert dual_char(CH_V) == CH_V.dual()
    assert dual_char(BER) == BER**-1


# --- Young 코모듈: 선형대수 쪽 지표 ---
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_young_module_characters_exact(H_exact, n):
    for parts in hook_partitions(n):
        assert character_of(H_exact, young_module(H_exact, parts)) == hook_schur(parts), parts


@pytest.mark.slow
def test_young_module_characters_degree_five(H_eval):
    for parts in hook_partitions(5):
        assert character_of(H_eval, young_module(H_eval, parts)) == hook_schur(parts), parts


@pytest.mark.slow
def test_young_module_outside_hook_is_zero(H_eval):
    assert young_module(H_eval, (2, 2, 2, 2)).dim == 0


@pytest.mark.parametrize("triple", [(1, 0, 0), (2, 1, 0), (0, 0, -1), (0, -1, -1)])
def test_build_irrep_exact(H_exact, triple):
    result = build_irrep(WeightLabel(*triple), H_exact)
    assert result.verified is True
    assert not result.budget_exceeded
    assert result.subspace.dim == result.character.total_dim()
    out = result.to_json()
    assert out["verified"] is True
    assert out["subspace_dim"] == out["dims"]["total"]


def test_build_irrep_without_symmetry():
    result = build_irrep(WeightLabel(2, 1, 0))
    assert result.verified is None
    assert result.backend is None
    assert result.character.total_dim() == 20


def test_berezinian_exceeds_exact_budget(H_exact):
    result = build_irrep(WeightLabel(1, 1, 1, 1), H_exact)
    assert result.budget_exceeded
    assert result.verified is None
    assert result.character == BER


def test_explicit_budget_argument(H_exact):
    result = build_irrep(WeightLabel(0, 0, -1), H_exact, budget=4)
    assert result.budget_exceeded
    assert result.subspace is None


@pytest.mark.slow
def test_berezinian_line_on_evaluated_backend(H_eval):
    result = build_irrep(WeightLabel(1, 1, 1, 1), H_eval)
    assert result.verified is True
    assert result.subspace.dim == 1


def test_character_needs_standard_symmetry():
    with pytest.raises(NonStandardSymmetryError):
        build_irrep(WeightLabel(1, 0, 0), build_standard_r(2, 1))


def test_sign_convention_check():
    result = sign_convention_check()
    assert result["plain"] is True
    assert result["signed"] is False
    assert result["convention"] == "y"
    assert result["decisive"]
    assert result["value_at_1231"] == "7"


@pytest.mark.parametrize("k", [2, 3, 4])
def test_decomposition_series(k):
    report = decomposition_series(k)
    assert report["ok"], report["witness"]


def test_char_table():
    rows = char_table(1)
    assert len(rows) == 10
    frame = char_table_frame(rows)
    assert list(frame.columns) == ["weight", "case", "dim", "character"]
    origin = frame[frame["weight"] == "(0,0,0|0)"].iloc[0]
    assert origin["dim"] == 1
    assert origin["character"] == "1"
