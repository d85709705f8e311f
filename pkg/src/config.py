import os
import logging
from dotenv import load_dotenv

# --- 1. 환경 변수 및 기본 설정 로드 ---
load_dotenv()

current_dir = os.path.dirname(os.path.abspath(__file__))
project_root = os.path.dirname(current_dir)

# 평가 백엔드에서 쓰는 기본 평가점 (q의 값)
DEFAULT_Q0 = os.getenv("KOSZUL_Q0", "7/5")
# 2점 평가 인증에 쓰는 두 번째 평가점
SECOND_Q0 = os.getenv("KOSZUL_SECOND_Q0", "11/7")

# exact | evaluated | auto
BACKEND = os.getenv("KOSZUL_BACKEND", "auto")

# 예산 단위: 가장 큰 중간 텐서 공간의 총 차수 (공변 + 반변 다리 수)
EXACT_BUDGET = int(os.getenv("KOSZUL_EXACT_BUDGET", "5"))
EVAL_BUDGET = int(os.getenv("KOSZUL_EVAL_BUDGET", "8"))

# q0가 1의 거듭제곱근이 아닌지 검사할 때의 최대 차수
ROOT_ORDER = int(os.getenv("KOSZUL_ROOT_ORDER", "24"))

# 지표(character)의 변수별 지수 상한
EXPONENT_BOUND = int(os.getenv("KOSZUL_EXPONENT_BOUND", "64"))

LOG_LEVEL = os.getenv("KOSZUL_LOG_LEVEL", "WARNING").upper()


# --- 2. 로깅 설정 ---
logging.basicConfig(format="%(name)s:%(levelname)s:%(message)s")
logging.getLogger("src").setLevel(getattr(logging, LOG_LEVEL, logging.WARNING))


def set_verbose(verbose: bool):
    """CLI --verbose 플래그용. 패키지 로거 레벨만 바꿉니다."""
    level = logging.INFO if verbose else getattr(logging, LOG_LEVEL, logging.WARNING)
    logging.getLogger("src").setLevel(level)
