import json
from dataclasses import fields
from pathlib import Path

import pandas as pd
import pytest

from src import cli, config, doublecx
from src.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, RunConfig, UsageError, run
from src.errors import NonInvertibleLoopError
from src.koszul import HomologySlot

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def restore_budgets(monkeypatch):
    # run() 이 전역 예산을 덮어쓰므로 테스트마다 되돌립니다
    monkeypatch.setattr(config, "EXACT_BUDGET", config.EXACT_BUDGET)
    monkeypatch.setattr(config, "EVAL_BUDGET", config.EVAL_BUDGET)


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_identity_report_to_file(tmp_path):
    out = tmp_path / "ct3.json"
    code = run(["--out", str(out), "identity", "ct3", "--k", "1", "--l", "1"])
    assert code == EXIT_OK
    report = read_json(out)
    assert report["ok"] is True
    assert report["command"] == "identity"
    assert report["result"]["residual_zero"] is True
    assert report["config"]["backend"] == "auto"


def test_output_is_deterministic(tmp_path):
    out = tmp_path / "ct60.json"
    argv = ["--out", str(out), "identity", "ct60", "--p", "1", "--r", "1"]
    run(argv)
    first = out.read_bytes()
    run(argv)
    assert out.read_bytes() == first


# --- 골든 파일: 고정된 실행 설정의 리포트를 바이트 단위로 비교 ---
@pytest.mark.parametrize(
    "argv, golden",
    [
        (["identity", "ct60", "--p", "1", "--r", "1"], "identity_ct60_p1_r1.json"),
        (["dims", "--n", "4"], "dims_n4.json"),
    ],
)
def test_report_matches_golden(capsys, argv, golden):
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_dispatch_csv_matches_golden(tmp_path):
    csv = tmp_path / "dispatch.csv"
    assert run(["--out", str(tmp_path / "table.json"), "char-table", "--box", "2", "--dispatch-csv", str(csv)]) == EXIT_OK
    assert csv.read_bytes() == (GOLDEN / "dispatch_box2.csv").read_bytes()


def test_dims_to_stdout(capsys):
    assert run(["dims", "--n", "3"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert [row["sym"] for row in report["result"]["dims"]] == [1, 4, 9, 16]
    assert [row["ext"] for row in report["result"]["dims"]] == [1, 4, 7, 8]


def test_unknown_command_is_usage_error(capsys):
    assert run(["bogus"]) == EXIT_USAGE
    report = json.loads(capsys.readouterr().out)
    assert report["usage"] is True


def test_bad_weight_is_usage_error(capsys):
    assert run(["irrep", "--weight", "0,1,0"]) == EXIT_USAGE


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "run.env"
    cfg.write_text("backend=exact\nspeed=fast\n", encoding="utf-8")
    assert run(["--config", str(cfg), "dims", "--n", "1"]) == EXIT_USAGE


def test_budget_exceeded_exit_code(tmp_path):
    cfg = tmp_path / "run.env"
    cfg.write_text("backend=exact\nexact_budget=3\n", encoding="utf-8")
    out = tmp_path / "report.json"
    code = run(["--config", str(cfg), "--out", str(out), "identity", "ct3", "--k", "1", "--l", "1"])
    assert code == EXIT_BUDGET
    report = read_json(out)
    assert report["required"] == 4
    assert report["allowed"] == 3


def test_flags_override_config_file(tmp_path):
    cfg = tmp_path / "run.env"
    cfg.write_text("backend=exact\nexact_budget=3\n", encoding="utf-8")
    out = tmp_path / "report.json"
    code = run(["--config", str(cfg), "--exact-budget", "5", "--out", str(out), "identity", "ct3", "--k", "1", "--l", "1"])
    assert code == EXIT_OK
    assert read_json(out)["config"]["exact_budget"] == 5


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(backend="gpu").validate()
    with pytest.raises(ValueError):
        RunConfig(q0="1").validate()


def test_char_table_csv(tmp_path):
    csv = tmp_path / "table.csv"
    out = tmp_path / "table.json"
    assert run(["--out", str(out), "char-table", "--box", "1", "--csv", str(csv)]) == EXIT_OK
    frame = pd.read_csv(csv)
    assert len(frame) == 10
    assert len(read_json(out)["result"]["rows"]) == 10


def test_irrep_within_exact_budget(tmp_path):
    out = tmp_path / "irrep.json"
    assert run(["--out", str(out), "irrep", "--weight", "2,1,0"]) == EXIT_OK
    result = read_json(out)["result"]
    assert result["case"] == "young"
    assert result["verified"] is True
    assert result["dims"]["total"] == 20


@pytest.mark.slow
def test_irrep_berezinian(tmp_path):
    out = tmp_path / "ber.json"
    assert run(["--out", str(out), "irrep", "--weight", "1,1,1,1"]) == EXIT_OK
    result = read_json(out)["result"]
    assert result["character"] == ["x1*x2*x3*y^-1"]
    assert result["backend"] == "evaluated@7/5"


@pytest.mark.slow
def test_homology_window(tmp_path):
    out = tmp_path / "homology.json"
    assert run(["--out", str(out), "homology", "--a", "2", "--window", "6"]) == EXIT_OK
    slots = read_json(out)["result"]["slots"]
    nontrivial = [s for s in slots if s["dim"]]
    assert [(s["position"], s["dim"]) for s in nontrivial] == [([3, 1], 1)]
    assert read_json(out)["result"]["expected"] == [{"position": [3, 1], "dim": 1}]


def test_homology_of_exact_complex_passes(capsys):
    assert run(["homology", "--a", "0", "--window", "2"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["result"]["expected"] == []
    assert all(slot["dim"] == 0 for slot in report["result"]["slots"])


def test_homology_in_wrong_slot_fails(capsys, monkeypatch):
    slots = [HomologySlot(2, (2, 0), 1), HomologySlot(2, (3, 1), 0)]
    monkeypatch.setattr(cli, "homology_K", lambda H, a, window: slots)
    assert run(["homology", "--a", "2", "--window", "4"]) == EXIT_FAIL
    assert json.loads(capsys.readouterr().out)["ok"] is False


# --- 계산 중 실패는 검사 실패 (종료 코드 1) ---
def test_non_invertible_loop_is_check_failure(capsys, monkeypatch):
    def singular(H, i, a):
        raise NonInvertibleLoopError(f"∂PQd 가 ({i},{a}) 에서 가역이 아닙니다.")

    monkeypatch.setattr(doublecx, "extract_X", singular)
    assert run(["summand", "x"]) == EXIT_FAIL
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is False
    assert report["command"] == "summand"
    assert report["error_type"] == "NonInvertibleLoopError"
    assert "usage" not in report


def test_bad_eval_point_is_usage_error(capsys):
    assert run(["--q0", "1", "dims", "--n", "1"]) == EXIT_USAGE


# --- 설정한 평가점이 고유값 검사까지 전달됨 ---
def test_eigen_uses_configured_point(capsys, monkeypatch):
    monkeypatch.setattr(doublecx, "claimed_s", lambda H, i, a: [H.domain.convert(5)])
    assert run(["--q0", "11/7", "eigen", "loop-s"]) == EXIT_FAIL
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["annihilation"] is False
    assert result["empirical_point"] == "evaluated@11/7"


def test_seed_is_not_a_run_setting(tmp_path):
    assert run(["--seed", "1", "dims", "--n", "1"]) == EXIT_USAGE
    cfg = tmp_path / "run.env"
    cfg.write_text("seed=0\n", encoding="utf-8")
    assert run(["--config", str(cfg), "dims", "--n", "1"]) == EXIT_USAGE
    assert "seed" not in {f.name for f in fields(RunConfig)}
