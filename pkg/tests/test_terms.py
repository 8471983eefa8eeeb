import random

import pytest
from hypothesis import given, strategies as st

from meadow import (
    Add, Div, Inv, Mul, Neg, ONE, Var, ZERO,
    MixedSignatureError,
    contains_div, contains_inv, is_closed, is_divisive, is_fraction,
    is_inversive, is_simple_fraction, iter_subterms, mk_numeral,
    numeral_value, power, substitute, to_divisive, to_inversive,
    variables, wrap_as_fraction,
)
from meadow import eval_term, q0

from gen import random_term


def test_structural_equality_and_hash():
    assert Add(ZERO, ONE) == Add(ZERO, ONE)
    assert Add(ZERO, ONE) != Add(ONE, ZERO)
    assert hash(Div(Var("x"), ONE)) == hash(Div(Var("x"), ONE))
    assert len({ZERO, ZERO, ONE}) == 2


def test_operator_overloads_build_trees():
    x, y = Var("x"), Var("y")
    assert x + y == Add(x, y)
    assert x - y == Add(x, Neg(y))
    assert x * y == Mul(x, y)
    assert -x == Neg(x)
    assert x / y == Div(x, y)


def test_terms_are_immutable():
    with pytest.raises(Exception):
        Var("x").name = "y"


@pytest.mark.parametrize("n", [0, 1, 2, 3, 17, -1, -5])
def test_numeral_round_trip(n):
    assert numeral_value(mk_numeral(n)) == n


def test_numeral_shape():
    assert mk_numeral(0) == ZERO
    assert mk_numeral(2) == Add(Add(ZERO, ONE), ONE)
    assert mk_numeral(-2) == Neg(mk_numeral(2))


def test_numeral_value_rejects_non_numerals():
    # the constant 1 is not the numeral for 1: that is 0 + 1
    assert numeral_value(ONE) is None
    assert numeral_value(Neg(ZERO)) is None
    assert numeral_value(Var("x")) is None
    assert numeral_value(Add(ONE, ZERO)) is None


def test_numeral_value_handles_deep_chains():
    assert numeral_value(mk_numeral(50_000)) == 50_000


def test_power_shape():
    x = Var("x")
    assert power(x, 0) == ONE
    assert power(x, 1) == Mul(ONE, x)
    assert power(x, 3) == Mul(Mul(Mul(ONE, x), x), x)
    with pytest.raises(ValueError):
        power(x, -1)


def test_iter_subterms_preorder():
    t = Add(Var("x"), Neg(ONE))
    assert list(iter_subterms(t)) == [t, Var("x"), Neg(ONE), ONE]


def test_signature_predicates():
    d = Div(ONE, Var("x"))
    i = Inv(Var("x"))
    assert contains_div(d) and not contains_inv(d)
    assert contains_inv(i) and not contains_div(i)
    assert is_divisive(d) and not is_inversive(d)
    assert is_inversive(i) and not is_divisive(i)
    # signature-free terms belong to both fragments
    assert is_divisive(Var("x")) and is_inversive(Var("x"))


def test_closedness_and_variables():
    t = Add(Mul(Var("y"), Var("x")), Var("y"))
    assert not is_closed(t)
    assert variables(t) == ("x", "y")
    assert is_closed(mk_numeral(9))
    assert variables(mk_numeral(9)) == ()


def test_fraction_predicates():
    x, y = Var("x"), Var("y")
    assert is_fraction(Div(x, y))
    assert not is_fraction(Add(Div(x, y), ONE))
    assert is_simple_fraction(Div(Add(x, ONE), y))
    assert not is_simple_fraction(Div(Div(x, y), y))
    assert not is_simple_fraction(Div(x, Div(x, y)))
    assert wrap_as_fraction(x) == Div(x, ONE)
    with pytest.raises(MixedSignatureError):
        is_fraction(Inv(x))


def test_substitute():
    t = Div(Var("x"), Add(Var("y"), ONE))
    s = substitute(t, {"x": mk_numeral(2), "z": ZERO})
    assert s == Div(mk_numeral(2), Add(Var("y"), ONE))
    # unknown names in the binding are ignored, missing ones preserved
    assert substitute(Var("q"), {}) == Var("q")


def test_signature_translations():
    x, y = Var("x"), Var("y")
    assert to_inversive(Div(x, y)) == Mul(x, Inv(y))
    assert to_divisive(Inv(x)) == Div(ONE, x)
    with pytest.raises(MixedSignatureError):
        to_inversive(Inv(x))
    with pytest.raises(MixedSignatureError):
        to_divisive(Div(x, y))


def test_translation_round_trip_is_semantic_identity():
    model = q0()
    rng = random.Random(7)
    for _ in range(100):
        t = random_term(rng, 5, closed=True)
        back = to_divisive(to_inversive(t))
        assert eval_term(model, back) == eval_term(model, t)


@given(st.integers(min_value=-200, max_value=200))
def test_numeral_value_is_left_inverse_of_mk_numeral(n):
    assert numeral_value(mk_numeral(n)) == n


@given(st.integers(min_value=0, max_value=8))
def test_power_multiplicity(n):
    x = Var("x")
    t = power(x, n)
    assert sum(1 for s in iter_subterms(t) if s == x) == n
