"""패키지 공통 예외 계층.

검증 함수(check_*, verify_*, eigen_check)는 실패해도 예외를 던지지 않고
리포트를 돌려줍니다. 여기 있는 예외는 계약 위반과 계산 불가 상황용입니다.
"""


class KoszulError(Exception):
    """이 패키지의 모든 예외의 루트."""


class PoleError(KoszulError, ZeroDivisionError):
    """평가점에서 분모가 0이 되는 경우."""


class EvalPointError(KoszulError, ValueError):
    """q0가 0, ±1 이거나 1의 거듭제곱근인 경우."""


class ContainmentError(KoszulError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonGradedError(KoszulError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SingularSystemError(KoszulError):
    """P 행렬을 푸는 d²×d² 연립방정식이 특이한 경우."""


class NonReducedWordError(KoszulError, ValueError):
    pass


class GeneratorIndexError(KoszulError, IndexError):
    pass


class BudgetExceededError(KoszulError):
    def __init__(self, message, required=None, allowed=None):
        super().__init__(message)
        self.required = required
        self.allowed = allowed


class InexactDivisionError(KoszulError, ArithmeticError):
    pass


class CharacterOverflowError(KoszulError, OverflowError):
    pass


class NonDominantWeightError(KoszulError, ValueError):
    pass


class NonStandardSymmetryError(KoszulError):
    pass


class DirectSumError(KoszulError):
    pass


class NonInvertibleLoopError(KoszulError):
    pass
