import itertools
from fractions import Fraction as F

import pytest

from rpqv.errors import DegenerateIndexError, DomainError
from rpqv.rexpr import builtin, custom
from rpqv.scalar import BaseParams, family_number
from rpqv.virasoro import (
    bracket_sides,
    check_bracket_P1,
    check_pq_bracket,
    check_witt_form,
    classical_limit_bound,
    classical_limit_probe,
    construction_report,
    e12_residual,
    item7_report,
    omega,
    omega_literal,
    pq_bracket_sides,
    special_case_report,
)

FAMILIES = ("JS", "CJ", "Quesne", "HN", "HB")
ROOTS = dict(mu=1, nu=F(1, 2), g=F(3, 2))


def _bn(p, q, x):
    return (p ** x - q ** x) / (p - q)


def oracle_sides(family, b, delta, n, m, k):
    """Both sides of the weighted bracket from closed-form numbers and explicit sums."""
    p, q = b.p, b.q
    d = F(delta)

    def om(i):
        x = d * (i + 1)
        if x == 0:
            return F(-1)  # only JS reaches here; the other families skip x = 0
        return -(p * q) ** x * family_number(b, family, x) / _bn(p, q, x)

    def act(i, deg):
        return om(i) * _bn(p, q, deg + d * (i + 1))

    X = (p * q) ** n * _bn(p, q, n * (d - 1)) * _bn(p, q, d * m) / (_bn(p, q, n) * _bn(p, q, m))
    Y = (p * q) ** m * _bn(p, q, m * (d - 1)) * _bn(p, q, d * n) / (_bn(p, q, n) * _bn(p, q, m))
    w = om(n + m) / (om(n) * om(m))
    lhs = w * X * act(m, k) * act(n, k + m) - w * Y * act(n, k) * act(m, k + n)
    N = k + n + m + d
    brace = (p ** N * (X * p ** -n - Y * p ** -m) - q ** N * (X * q ** -n - Y * q ** -m)) / (p - q)
    return lhs, brace * act(n + m, k)


def test_pinned_pq_bracket():
    assert pq_bracket_sides(BaseParams(2, 1), 2, 2, 1, 0) == (-16830, -16830)


def test_pinned_js_bracket_carries_weight():
    # with omega_n = -(pq)^(2(n+1)) = -2^(2(n+1)) both sides scale by omega_3 = -2^8
    lhs, rhs = bracket_sides(builtin("JS", BaseParams(2, 1)), 2, 2, 1, 0)
    assert lhs == rhs == -16830 * -(2 ** 8)


def test_input_convention_breaks_pin():
    lhs, rhs = pq_bracket_sides(BaseParams(2, 1), 2, 2, 1, 0, "input")
    assert lhs == -16830 and rhs != lhs


@pytest.mark.parametrize("family", FAMILIES)
def test_bracket_against_oracle(family):
    b = BaseParams.from_roots(F(1, 2), F(1, 3), **ROOTS)
    r = builtin(family, b)
    checked = 0
    for delta, n, m, k in itertools.product((2, 3), range(-3, 4), range(-3, 4), range(-2, 3)):
        if n == m or n == 0 or m == 0:
            continue
        try:
            lhs, rhs = bracket_sides(r, delta, n, m, k)
        except DegenerateIndexError:
            continue
        assert (lhs, rhs) == oracle_sides(family, b, delta, n, m, k)
        assert lhs == rhs
        checked += 1
    assert checked > 100


def test_zero_index_skipped_with_reason(js):
    with pytest.raises(DegenerateIndexError, match=r"\[n\]=0 denominator"):
        check_bracket_P1(js, 2, 0, 1, 0)
    with pytest.raises(DegenerateIndexError, match=r"\[m\]=0 denominator"):
        check_bracket_P1(js, 2, 1, 0, 0)


def test_literal_form_off_by_weight(js):
    lhs, rhs_lit = bracket_sides(js, 2, 1, 2, 0, literal=True)
    assert lhs != rhs_lit


def test_omega():
    b = BaseParams(F(1, 4), F(1, 9))
    js = builtin("JS", b)
    for delta in (F(1, 2), 1, 2, 3):
        for n in range(-3, 4):
            assert omega(js, delta, n) == -((b.s * b.t) ** int(2 * delta * (n + 1)))
    with pytest.raises(DegenerateIndexError):
        omega(builtin("CJ", b), 2, -1)
    assert omega(builtin("CJP", b), 2, -1) == 1
    # the literal prefactor agrees with the closed form away from x = 0
    for n in (1, 2):
        assert omega_literal(js, 2, n) == omega(js, 2, n)


def test_witt_form_zero(base):
    for family in FAMILIES:
        r = builtin(family, base)
        for n, m, k in itertools.product(range(-2, 3), range(-2, 3), range(-2, 3)):
            try:
                assert check_witt_form(r, 2, n, m, k) == 0
            except DegenerateIndexError:
                pass


def test_custom_equals_builtin(base):
    r = custom("(u - v)/(p - q)", base)
    assert check_bracket_P1(r, 2, 1, 2, 1) == 0


def test_construction_report_ratio():
    b = BaseParams(2, 3)
    rows = construction_report(builtin("JS", b), 2, 1, ks=range(-1, 2))
    by_k = {row["k"]: row for row in rows}
    assert by_k[0]["residual"] == 0
    assert by_k[1]["ratio"] == b.pq


def test_e12():
    b = BaseParams.from_roots(F(1, 2), F(1, 3))
    assert all(e12_residual(b, x) == 0 for x in range(-6, 7))


def test_classical_limit_probe_small_values():
    assert classical_limit_probe("JS", 1, 0, F(1, 1000)) == 1
    assert classical_limit_probe("JS", 0, 1, F(1, 1000)) == -F(1000, 999)
    assert classical_limit_bound(0, 1, F(1, 1000)) == F(1, 1000)
    with pytest.raises(DomainError):
        classical_limit_probe("JS", 1, 0, F(1))


def test_item7_vanishes_for_js():
    b = BaseParams.from_roots(F(1, 2), F(1, 3))
    assert item7_report(b, builtin("JS", b), 2, 1)["vanishes"]


def test_special_case_report(base):
    assert special_case_report(builtin("JS", base), 2, 1, 2)["match"]
    assert special_case_report(builtin("Quesne", base), 2, 1, 2)["match"]


def test_pq_check_zero():
    b = BaseParams.from_roots(F(1, 2), F(1, 3))
    assert check_pq_bracket(b, 3, 2, -1, 1) == 0
