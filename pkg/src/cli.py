"""배치 실행용 명령행 드라이버. 모든 결과는 JSON 리포트로 stdout 또는 --out 에 씁니다.

종료 코드: 0 = 모든 검사 통과, 1 = 검사 실패, 2 = 사용법 오류, 3 = 예산 초과.
"""
import argparse
import logging
import sys
from dataclasses import asdict, dataclass, fields
from typing import Any, Callable, Dict, List, Optional, Tuple

from dotenv import dotenv_values

from src import config
from src.comodule import WeightLabel, build_irrep, char_table, char_table_frame, dispatch_frame, plan_degree, plan_for
from src.doublecx import LOOP_KER, LOOP_S, eigen_check, loop_ker_degree, loop_s_degree, verify_splitting
from src.errors import BudgetExceededError, EvalPointError, KoszulError, NonDominantWeightError
from src.hecke import (
    HeckeSymmetry,
    build_standard_r,
    check_hecke_symmetry,
    ext_space,
    load_symmetry_json,
    sym_space,
)
from src.koszul import homology_K, scan_homology, symmetry_birank, verify_bicomplex, verify_ct3, verify_ct60
from src.scalar import EvalPoint
from src.utils import dump_report

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
CLASSICAL_EXT_DIMS = (1, 4, 7, 8)


class UsageError(Exception):
    pass


# --- 1. 실행 설정 ---
@dataclass
class RunConfig:
    backend: str = config.BACKEND
    q0: str = config.DEFAULT_Q0
    exact_budget: int = config.EXACT_BUDGET
    eval_budget: int = config.EVAL_BUDGET
    out: Optional[str] = None

    def validate(self):
        if self.backend not in ("exact", "evaluated", "auto"):
            raise UsageError(f"backend 는 exact|evaluated|auto 중 하나여야 합니다: {self.backend}")
        if self.exact_budget < 1 or self.eval_budget < 1:
            raise UsageError("예산은 1 이상이어야 합니다.")
        EvalPoint(self.q0)

    def apply(self):
        """예산을 전역 설정에 반영합니다 (check_budget 이 읽는 값)."""
        config.EXACT_BUDGET = self.exact_budget
        config.EVAL_BUDGET = self.eval_budget


def load_run_config(args: argparse.Namespace) -> RunConfig:
    """기본값 → --config 파일 (key=value) → 명령행 플래그 순으로 덮어씁니다."""
    cfg = RunConfig()
    known = {f.name: f.type for f in fields(RunConfig)}
    if args.config:
        values = dotenv_values(args.config)
        unknown = sorted(set(values) - set(known))
        if unknown:
            raise UsageError(f"설정 파일의 알 수 없는 키: {', '.join(unknown)}")
        for key, value in values.items():
            setattr(cfg, key, int(value) if key in ("exact_budget", "eval_budget") else value)
    for key in known:
        flag = getattr(args, key, None)
        if flag is not None:
            setattr(cfg, key, flag)
    cfg.validate()
    return cfg


def make_symmetry(cfg: RunConfig, degree: int, source: Optional[str] = None) -> HeckeSymmetry:
    """auto 면 필요한 차수가 정확 예산 안일 때만 Q(q) 위에서 계산합니다."""
    use_exact = cfg.backend == "exact" or (cfg.backend == "auto" and degree <= cfg.exact_budget)
    H = load_symmetry_json(source) if source else build_standard_r(3, 1)
    if use_exact:
        return H
    return H.evaluate(EvalPoint(cfg.q0))


# --- 2. 명령 ---
def cmd_verify_hecke(args, cfg) -> Tuple[Dict[str, Any], bool]:
    H = make_symmetry(cfg, 3, args.symmetry)
    report = check_hecke_symmetry(H)
    return report, report["ok"]


def cmd_dims(args, cfg):
    H = make_symmetry(cfg, args.n)
    rows = []
    ok = True
    for n in range(args.n + 1):
        s_dim, l_dim = sym_space(H, n).dim, ext_space(H, n).dim
        oracle = ((n + 1) ** 2, CLASSICAL_EXT_DIMS[min(n, 3)])
        rows.append({"n": n, "sym": s_dim, "ext": l_dim, "oracle": list(oracle)})
        ok = ok and (s_dim, l_dim) == oracle
    return {"dims": rows, "backend": H.backend.describe()}, ok


def cmd_identity(args, cfg):
    if args.which == "ct3":
        H = make_symmetry(cfg, args.k + args.l + 2)
        report = verify_ct3(H, args.k, args.l)
        return {**report.to_json(), "backend": H.backend.describe()}, report.ok
    if args.which == "ct60":
        H = make_symmetry(cfg, args.p + args.r + 1)
        report = verify_ct60(H, args.p, args.r)
        return {**report.to_json(), "backend": H.backend.describe()}, report.ok
    H = make_symmetry(cfg, args.total)
    report = verify_bicomplex(H, args.total)
    return {**report, "backend": H.backend.describe()}, report["ok"]


def cmd_homology(args, cfg):
    H = make_symmetry(cfg, args.window + 2)
    if args.scan is not None:
        result = scan_homology(H, args.scan, args.window)
        nontrivial = result["nontrivial"]
        ok = len(nontrivial) == 1 and nontrivial[0].dim == 1
        return {**result, "backend": H.backend.describe()}, ok
    slots = homology_K(H, args.a, args.window)
    # K_{r-s} 의 (r,s) 자리에만 1차원, 나머지는 모두 0
    r, s = symmetry_birank(H)
    expected = {(r, s): 1} if args.a == r - s and r + s <= args.window else {}
    found = {slot.position: slot.dim for slot in slots if slot.dim}
    report = {
        "a": args.a,
        "window": args.window,
        "slots": slots,
        "expected": [{"position": list(pos), "dim": dim} for pos, dim in expected.items()],
        "backend": H.backend.describe(),
    }
    return report, found == expected


def cmd_eigen(args, cfg):
    if args.which == "loop-s":
        params, degree, which = {"i": args.i, "a": args.a}, loop_s_degree(args.i, args.a), LOOP_S
    else:
        params, degree, which = {"i": args.i, "k": args.k, "a": args.a}, loop_ker_degree(args.i, args.k, args.a), LOOP_KER
    # 정확 대칭이면 eigen_check 가 예산에 따라 두 점 평가로 넘어갑니다
    H = build_standard_r(3, 1) if cfg.backend != "evaluated" else make_symmetry(cfg, degree)
    report = eigen_check(H, which, params, EvalPoint(cfg.q0))
    return report, report.ok


def cmd_summand(args, cfg):
    if args.which == "x":
        params, degree = {"i": args.i, "a": args.a}, loop_s_degree(args.i, args.a)
    else:
        params, degree = {"i": args.i, "k": args.k, "a": args.a}, loop_ker_degree(args.i, args.k, args.a)
    H = make_symmetry(cfg, degree)
    report = verify_splitting(H, args.which.upper(), params)
    return report, report["ok"]


def cmd_irrep(args, cfg):
    w = WeightLabel.parse(args.weight)
    H = make_symmetry(cfg, plan_degree(plan_for(w)))
    result = build_irrep(w, H, args.budget)
    return result, result.verified is not False


def cmd_char_table(args, cfg):
    rows = char_table(args.box)
    if args.csv:
        char_table_frame(rows).to_csv(args.csv, index=False)
    if args.dispatch_csv:
        dispatch_frame(args.box).to_csv(args.dispatch_csv, index=False)
    return {"box": args.box, "rows": rows}, True


COMMANDS: Dict[str, Callable] = {
    "verify-hecke": cmd_verify_hecke,
    "dims": cmd_dims,
    "identity": cmd_identity,
    "homology": cmd_homology,
    "eigen": cmd_eigen,
    "summand": cmd_summand,
    "irrep": cmd_irrep,
    "char-table": cmd_char_table,
}


# --- 3. 파서 ---
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="koszul", description="GL_q(3|1) 이중 Koszul 구성 검증 도구")
    parser.add_argument("--backend", choices=["exact", "evaluated", "auto"])
    parser.add_argument("--q0", help="평가점 (유리수)")
    parser.add_argument("--exact-budget", dest="exact_budget", type=int)
    parser.add_argument("--eval-budget", dest="eval_budget", type=int)
    parser.add_argument("--out")
    parser.add_argument("--config", help="key=value 설정 파일")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-hecke")
    p.add_argument("--symmetry", help="대칭 JSON 파일")

    p = sub.add_parser("dims")
    p.add_argument("--n", type=int, default=4)

    p = sub.add_parser("identity")
    p.add_argument("which", choices=["ct3", "ct60", "bicomplex"])
    for flag in ("--k", "--l", "--p", "--r"):
        p.add_argument(flag, type=int, default=0)
    p.add_argument("--total", type=int, default=4)

    p = sub.add_parser("homology")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--scan", type=int, help="|a| ≤ SCAN 인 K_a 를 모두 훑습니다")

    p = sub.add_parser("eigen")
    p.add_argument("which", choices=["loop-s", "loop-ker"])
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--a", type=int, default=0)

    p = sub.add_parser("summand")
    p.add_argument("which", choices=["x", "y"])
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--a", type=int, default=0)

    p = sub.add_parser("irrep")
    p.add_argument("--weight", required=True, help="m,n,p,t")
    p.add_argument("--budget", type=int)

    p = sub.add_parser("char-table")
    p.add_argument("--box", type=int, default=2)
    p.add_argument("--csv")
    p.add_argument("--dispatch-csv", dest="dispatch_csv", help="경우 나누기 표 CSV")
    return parser


def _emit(report: Any, out: Optional[str]):
    text = dump_report(report)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


# --- 4. 진입점 ---
def run(argv: Optional[List[str]] = None) -> int:
    out, command = None, None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        config.set_verbose(args.verbose)
        cfg = load_run_config(args)
        cfg.apply()
        out = cfg.out
        report, ok = COMMANDS[args.command](args, cfg)
        _emit({"command": args.command, "config": asdict(cfg), "result": report, "ok": ok}, out)
        return EXIT_OK if ok else EXIT_FAIL
    except BudgetExceededError as exc:
        _emit({"error": str(exc), "required": exc.required, "allowed": exc.allowed}, out)
        return EXIT_BUDGET
    except (UsageError, EvalPointError, NonDominantWeightError) as exc:
        return _usage_error(exc, out)
    except KoszulError as exc:
        # 계산 도중에 난 실패는 사용법 오류가 아니라 검사 실패
        logger.error("[CLI] %s: %s", type(exc).__name__, exc)
        _emit({"command": command, "error": str(exc), "error_type": type(exc).__name__, "ok": False}, out)
        return EXIT_FAIL
    except ValueError as exc:
        return _usage_error(exc, out)


def _usage_error(exc: Exception, out: Optional[str]) -> int:
    logger.error("[CLI] %s", exc)
    _emit({"error": str(exc), "usage": True}, out)
    return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
