import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import VAR_NAMES, formulas
from sotl.syntax import (BOT, BBox, Bound, Box, Forall, Imp, ParseError, Prop, Var, conj, dia, disj, free_vars, neg,
                         negative_translate, parse, show, size, substitute)

P, Q, R = Prop("P"), Prop("Q"), Prop("R")
X, Y = Var("X"), Var("Y")


def test_implication_is_right_nested():
    assert parse("P -> Q -> R") == Imp(P, Imp(Q, R))
    assert parse("(P -> Q) -> R") == Imp(Imp(P, Q), R)


def test_bottom_parses_as_quantifier():
    assert parse("forall X X") == Forall(Bound(0)) == BOT


def test_diamond_sugar_expands():
    want = Forall.bind("X", Imp(Box(Imp(P, BBox(X))), X))
    assert parse("dia P") == want == dia(P)


def test_sugar_tokens():
    assert parse("P and Q") == conj(P, Q)
    assert parse("P or Q") == disj(P, Q)
    assert parse("not P") == neg(P)
    assert parse("bot") == BOT
    assert parse("top") == neg(BOT)
    assert parse("P or Q and R") == disj(P, conj(Q, R))


def test_quantifier_scope_extends_right():
    assert parse("forall X X -> P") == Forall.bind("X", Imp(X, P))


def test_bound_names_do_not_matter():
    assert parse("forall X (X -> P)") == parse("forall Y (Y -> P)")


def test_unicode_input():
    assert parse("∀X (□X → ■P)") == parse("forall X (box X -> bbox P)")


@pytest.mark.parametrize("text, col", [("P ->", 5), ("(P -> Q", 8), ("P Q", 3), ("box", 4)])
def test_parse_errors_report_column(text, col):
    with pytest.raises(ParseError, match=f"column {col}"):
        parse(text)


def test_unknown_token():
    with pytest.raises(ParseError):
        parse("P & Q")


def test_native_diamonds_only_on_request():
    assert parse("dia P") != parse("dia P", native_diamonds=True)


def test_printing():
    assert show(Forall(Bound(0))) == "forall X X"
    assert show(Imp(P, Imp(Q, R))) == "P -> Q -> R"
    assert show(Box(BOT)) == "box (forall X X)"


def test_sugar_printing_round_trips():
    f = parse("dia (P or not Q)")
    assert show(f, sugar=True) == "dia (P or not Q)"
    assert parse(show(f, sugar=True)) == f


def test_free_vars():
    assert free_vars(P) == set()
    assert free_vars(Forall.bind("X", Imp(X, Y))) == {"Y"}
    assert free_vars(Imp(X, X)) == {"X"}


def test_substitution_examples():
    assert substitute(X, "X", BOT) == BOT
    assert substitute(BOT, "Y", P) == BOT
    # the bound Y must not capture the substituted free Y
    f = Forall.bind("Y", Imp(X, Y))
    got = substitute(f, "X", Y)
    assert got == Forall.bind("Z", Imp(Y, Var("Z")))
    assert free_vars(got) == {"Y"}


def test_size():
    assert size(P) == 1
    assert size(Imp(P, Q)) == 3
    assert size(BOT) == 2


def test_encoding_shapes():
    assert disj(P, Q) == Forall.bind("X", Imp(Imp(P, X), Imp(Imp(Q, X), X)))
    assert neg(P) == Imp(P, BOT)


def test_negative_translation_examples():
    nn = neg(neg(P))
    assert negative_translate(P) == nn
    assert negative_translate(Box(P)) == Box(nn)
    assert negative_translate(Imp(P, Q)) == Imp(nn, neg(neg(Q)))


@settings(max_examples=300)
@given(formulas)
def test_print_parse_round_trip(f):
    assert parse(show(f)) == f
    assert parse(show(f, sugar=True)) == f


@given(formulas, st.sampled_from(VAR_NAMES), formulas)
def test_substitution_free_variable_law(f, x, c):
    got = free_vars(substitute(f, x, c))
    bound = (free_vars(f) - {x}) | free_vars(c)
    if x in free_vars(f):
        assert got == bound
    else:
        assert got <= bound


@given(formulas, st.sampled_from(VAR_NAMES))
def test_identity_substitution(f, x):
    assert substitute(f, x, Var(x)) == f


@given(formulas)
def test_encodings_do_not_capture(a):
    assert free_vars(disj(a, Y)) == free_vars(a) | {"Y"}
    assert free_vars(conj(a, Y)) == free_vars(a) | {"Y"}
    assert free_vars(dia(a)) == free_vars(a)
    assert free_vars(neg(a)) == free_vars(a)


@given(formulas, st.sampled_from(VAR_NAMES), st.sampled_from(VAR_NAMES))
def test_negative_translation_commutes_with_renaming(a, x, y):
    assert negative_translate(substitute(a, x, Var(y))) == substitute(negative_translate(a), x, Var(y))


def test_negative_translation_and_substitution_differ_by_double_negation():
    # variables are double negated too, so substituting after translating adds one more layer
    a = X
    assert negative_translate(substitute(a, "X", P)) == neg(neg(P))
    assert substitute(negative_translate(a), "X", negative_translate(P)) == neg(neg(neg(neg(P))))
