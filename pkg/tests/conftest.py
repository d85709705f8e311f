import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.hecke import build_standard_r  # noqa: E402
from src.scalar import evaluated  # noqa: E402


@pytest.fixture(scope="session")
def H_exact():
    """Q(q) 위의 표준 R^(3|1)."""
    return build_standard_r(3, 1)


@pytest.fixture(scope="session")
def H_eval():
    """q0 = 7/5 로 평가한 표준 R^(3|1)."""
    return build_standard_r(3, 1, backend=evaluated())
