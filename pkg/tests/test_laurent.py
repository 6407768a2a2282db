from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from rpqv.errors import DomainError
from rpqv.laurent import (
    LadderOperator,
    LaurentPoly,
    compose,
    diagonal,
    dilation,
    identity,
    leibniz_oracle,
    multiplication,
    pq_derivative,
    r_derivative,
    r5_ordering_report,
)
from rpqv.rexpr import builtin
from rpqv.scalar import BaseParams

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.dictionaries(st.integers(-5, 5), coeffs, max_size=5).map(LaurentPoly)


def naive_apply(shift, fn, terms):
    out = {}
    for d, c in terms.items():
        out[d + shift] = out.get(d + shift, 0) + c * fn(d)
    return {d: c for d, c in out.items() if c}


def test_zero_terms_dropped():
    p = LaurentPoly({1: 0, 2: F(1, 2), 3: F(0)})
    assert dict(p) == {2: F(1, 2)}
    assert LaurentPoly().is_zero()


@given(polys, polys)
def test_ring_laws(a, b):
    assert a + b == b + a
    assert (a - b) + b == a
    assert (a - a).is_zero()
    assert 2 * a == a + a


@given(polys, st.integers(-3, 3), st.integers(-3, 3))
def test_composition_matches_sequential(poly, s1, s2):
    f = LadderOperator(s1, lambda k: F(k * k + 1, 3), "f")
    g = LadderOperator(s2, lambda k: F(2 * k - 1), "g")
    once = compose(f, g)(poly)
    twice = f(g(poly))
    assert once == twice
    expect = naive_apply(s1, lambda k: F(k * k + 1, 3), naive_apply(s2, lambda k: F(2 * k - 1), dict(poly)))
    assert dict(once) == expect


def test_operator_algebra():
    a = LadderOperator(1, lambda k: F(k), "a")
    b = LadderOperator(1, lambda k: F(1), "b")
    assert (a + b).at(3) == 4
    assert (a - b).at(3) == 2
    assert (3 * a).at(2) == 6
    with pytest.raises(DomainError):
        a + identity()
    assert (multiplication(2) @ diagonal(lambda k: F(k))).at(5) == 5


def test_dilation_and_derivative():
    b = BaseParams(2, 3)
    assert dilation(b, "P").at(3) == 8
    assert dilation(b, "ratio").at(2) == F(4, 9)
    d = pq_derivative(b)
    assert d(LaurentPoly.monomial(3)) == LaurentPoly.monomial(2, 19)
    with pytest.raises(DomainError):
        dilation(b, 0)


def test_r_derivative_canonical_and_clean():
    b = BaseParams(F(1, 4), F(1, 9))
    js = builtin("JS", b)
    assert r_derivative(js).at(0) == 0
    assert r_derivative(js).at(2) == -(b.pq ** 2) * (b.p ** 2 - b.q ** 2) / (b.p - b.q)
    assert r_derivative(js, "clean").at(2) == (b.p ** 2 - b.q ** 2) / (b.p - b.q)


def test_leibniz_oracle_reproduces_monomial_formula_for_js():
    b = BaseParams(2, 3)
    js = builtin("JS", b)
    for a in range(-2, 3):
        for c in range(-2, 3):
            if a + c == 0:
                continue
            assert leibniz_oracle(js, a, c) == r_derivative(js).at(a + c)


def test_r5_report_keys():
    rep = r5_ordering_report(builtin("JS", BaseParams(2, 3)), 2)
    assert set(rep) == {"monomial_formula", "left_factor", "right_factor"}
    assert rep["left_factor"] == 5
