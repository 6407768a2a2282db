from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from rpqv.errors import DomainError
from rpqv.scalar import (
    BaseParams,
    as_scalar,
    family_factorial,
    family_number,
    format_scalar,
    half_integer,
    half_power,
    parse_rational,
    pq_number,
    rational_power,
)

small = st.fractions(min_value=F(1, 50), max_value=F(50)).filter(lambda x: x != 1)


def test_parse_rational_accepts_plain_forms():
    assert parse_rational("2/3") == F(2, 3)
    assert parse_rational("−1") == -1
    assert parse_rational(" 1/36 ") == F(1, 36)


@pytest.mark.parametrize("text", ["2//3", "1.5", "", "a", "1/0", "/3", "3/"])
def test_parse_rational_rejects(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(text)


def test_as_scalar_rejects_bool_and_float():
    with pytest.raises(TypeError):
        as_scalar(True)
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_format_scalar():
    assert format_scalar(F(-3, 6)) == "-1/2"
    assert format_scalar(F(4)) == "4"


def test_half_integer():
    assert half_integer(F(3, 2)) == F(3, 2)
    with pytest.raises(DomainError):
        half_integer(F(1, 3))


def test_base_params_fill_roots():
    b = BaseParams(F(1, 4), F(1, 9))
    assert (b.s, b.t) == (F(1, 2), F(1, 3))
    assert BaseParams(2, 3).s is None
    with pytest.raises(DomainError):
        BaseParams(0, 1)
    with pytest.raises(DomainError):
        BaseParams(4, 9, s=3)


def test_half_power_needs_roots():
    b = BaseParams(2, 3)
    assert half_power(b, "p", 3) == 8
    with pytest.raises(DomainError):
        half_power(b, "p", F(1, 2))
    r = BaseParams.from_roots(F(1, 2), F(1, 3))
    assert half_power(r, "pq", F(1, 2)) == F(1, 6)


def test_rational_power():
    assert rational_power(F(4, 9), F(3, 2)) == F(8, 27)
    with pytest.raises(DomainError):
        rational_power(F(2), F(1, 2))


@given(small, small, st.integers(-8, 8))
def test_pq_number_matches_geometric_sum(p, q, n):
    if p == q:
        return
    b = BaseParams(p, q)
    # [n] = sum_{j} p^(n-1-j) q^j for n > 0, and [-n] = -(pq)^-n [n]
    def geometric(k):
        return sum((p ** (k - 1 - j) * q ** j for j in range(k)), F(0))
    expected = geometric(n) if n >= 0 else -(p * q) ** n * geometric(-n)
    assert pq_number(b, n) == expected


@given(small, small, st.integers(-6, 6))
def test_swapped_symmetry(p, q, n):
    if p == q:
        return
    b = BaseParams(p, q)
    assert pq_number(b, n) == pq_number(b.swapped(), n)


def test_pq_number_needs_distinct():
    with pytest.raises(DomainError):
        pq_number(BaseParams(2, 2), 3)


def test_family_numbers_direct():
    b = BaseParams(F(2), F(3), mu=1, nu=2, g=F(1, 2))
    p, q = F(2), F(3)
    assert family_number(b, "JS", 3) == (p ** 3 - q ** 3) / (p - q)
    assert family_number(b, "CJ", 2) == (p ** -2 - q ** 2) / (1 / p - q)
    assert family_number(b, "Quesne", 2) == (p ** 2 - q ** -2) / (q - 1 / p)
    assert family_number(b, "HN", 2) == F(1, 2) * q ** 4 / p ** 2 * family_number(b, "Quesne", 2)
    assert family_number(b, "HB", 2) == F(1, 2) * (q ** 2 / p) ** 2 * family_number(b, "Quesne", 2)


def test_factorial():
    b = BaseParams(2, 3)
    assert family_factorial(b, "JS", 0) == 1
    assert family_factorial(b, "JS", 3) == 1 * 5 * 19
