import pytest
from hypothesis import given, strategies as st
from sympy.polys.domains import QQ

from src.errors import EvalPointError, PoleError
from src.scalar import (
    EXACT,
    EvalPoint,
    eval_at,
    evaluated,
    format_scalar,
    q,
    q_factorial,
    q_int,
    scalar,
    scalar_from_str,
    scalar_to_str,
)

small = st.integers(min_value=-6, max_value=6)


@pytest.mark.parametrize(
    "n, expected",
    [
        (0, scalar(0)),
        (1, scalar(1)),
        (3, q**2 + q + 1),
        (-2, -(q + 1) / q**2),
    ],
)
def test_q_int_values(n, expected):
    assert q_int(n) == expected


def test_q_int_with_hecke_param():
    p = q**2
    assert q_int(2, p) == q**2 + 1
    assert q_int(5, 1) == 5


@pytest.mark.parametrize(
    "n, expected",
    [(0, scalar(1)), (2, q + 1), (3, (q + 1) * (q**2 + q + 1))],
)
def test_q_factorial(n, expected):
    assert q_factorial(n) == expected


def test_q_factorial_rejects_negative():
    with pytest.raises(ValueError):
        q_factorial(-1)


@given(small, small)
def test_q_int_addition_law(m, n):
    # [m+n] = [m] + q^m [n]
    assert q_int(m + n) == q_int(m) + q**m * q_int(n)


@given(small, small)
def test_evaluation_is_multiplicative(a, b):
    pt = EvalPoint("7/5")
    f, g = q_int(a), q_int(b) + 2
    assert eval_at(f * g, pt) == eval_at(f, pt) * eval_at(g, pt)
    assert eval_at(f + g, pt) == eval_at(f, pt) + eval_at(g, pt)


def test_eval_at_integer_point():
    assert eval_at(q_int(3), EvalPoint(2)) == 7
    assert eval_at(scalar(1), EvalPoint("7/5")) == 1


def test_pole_is_reported():
    with pytest.raises(PoleError):
        eval_at(1 / (q - 2), EvalPoint(2))


@pytest.mark.parametrize("bad", [0, 1, -1])
def test_eval_point_screen(bad):
    with pytest.raises(EvalPointError):
        EvalPoint(bad)


def test_eval_point_parses_fraction():
    assert EvalPoint("7/5").q0 == QQ(7, 5)
    assert str(EvalPoint("11/7")) == "11/7"


def test_backends():
    assert EXACT.exact
    bk = evaluated()
    assert not bk.exact
    assert bk.describe() == "evaluated@7/5"
    assert bk.convert(q_int(2)) == QQ(12, 5)


@pytest.mark.parametrize("f", [q_int(3), q_int(-2), (q**2 - 1) / (q + 3), scalar(0)])
def test_scalar_string_form(f):
    text = scalar_to_str(f)
    assert scalar_from_str(text) == f
    assert format_scalar(f) == text
