from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from rpqv.errors import DomainError, ExponentError, LexError, ParseError, PoleError
from rpqv.rexpr import (
    BUILTINS,
    MALFORMED_CORPUS,
    BinOp,
    Neg,
    Num,
    Param,
    Pow,
    Var,
    builtin,
    custom,
    family_closed_form,
    parse_r,
    to_source,
    tokenize,
)
from rpqv.scalar import BaseParams


def test_tokenize_unicode_minus():
    kinds = [(t.kind, t.text) for t in tokenize("u − 1")]
    assert kinds[:3] == [("NAME", "u"), ("OP", "-"), ("INT", "1")]


def test_precedence_and_associativity():
    assert parse_r("u - v - 1") == BinOp("-", BinOp("-", Var("u"), Var("v")), Num(1))
    assert parse_r("u / v * p") == BinOp("*", BinOp("/", Var("u"), Var("v")), Param("p"))
    assert parse_r("-u^2") == Neg(Pow(Var("u"), F(2)))
    assert parse_r("u^(-1/2)") == Pow(Var("u"), F(-1, 2))


@pytest.mark.parametrize("text,cls", MALFORMED_CORPUS)
def test_malformed_inputs_raise_positioned_errors(text, cls):
    with pytest.raises(cls) as info:
        parse_r(text)
    err = info.value
    assert isinstance(err, ParseError)
    assert 0 <= err.position <= len(text)
    assert f"position {err.position}" in str(err)


def test_error_positions():
    with pytest.raises(LexError) as info:
        parse_r("u $ v")
    assert info.value.position == 2
    with pytest.raises(ParseError) as info:
        parse_r("u +")
    assert info.value.position == 3 and "end of input" in str(info.value)
    with pytest.raises(ExponentError):
        parse_r("u^(2/3)")


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_source_matches_native(name):
    b = BaseParams.from_roots(F(1, 2), F(1, 3), mu=1, nu=2, g=F(3, 2))
    native = builtin(name, b)
    parsed = custom(native.source(), b)
    for n in range(-6, 7):
        assert parsed.number(n) == native.number(n) == family_closed_form(native, n)


def test_pole_names_subexpression():
    b = BaseParams(2, 3)
    r = custom("1/(u - v)", b)
    with pytest.raises(PoleError) as info:
        r(1, 1)
    assert info.value.subexpression == "u - v"


def test_irrational_half_power():
    r = custom("u^(1/2)", BaseParams(2, 3))
    with pytest.raises(DomainError):
        r(2, 1)
    assert r(F(9, 4), 1) == F(3, 2)


leaves = st.one_of(
    st.sampled_from([Var("u"), Var("v"), Param("p"), Param("q"), Param("g")]),
    st.integers(0, 9).map(Num),
)


def _extend(children):
    return st.one_of(
        st.tuples(st.sampled_from("+-*/"), children, children).map(lambda t: BinOp(*t)),
        children.map(Neg),
        st.tuples(children, st.sampled_from([F(2), F(3), F(-1), F(1, 2), F(-3, 2)])).map(lambda t: Pow(*t)),
    )


trees = st.recursive(leaves, _extend, max_leaves=8)


@given(trees)
def test_print_parse_round_trip(tree):
    text = to_source(tree)
    again = parse_r(text)
    assert to_source(again) == text
    # the reparsed tree evaluates identically wherever the original is defined
    b = BaseParams(F(4), F(9), g=F(1, 4))
    try:
        expected = custom(text, b)(F(1, 4), F(9, 16))
    except DomainError:
        return
    assert custom(to_source(again), b)(F(1, 4), F(9, 16)) == expected
