import random

import pytest
from hypothesis import given

from metabelian.commod import collect
from metabelian.errors import BadIndex, ParseError
from metabelian.fox import magnus_equal
from metabelian.group import evaluate_word, from_part, identity
from metabelian.laurent import LaurentPoly
from metabelian.sampling import random_word
from metabelian.words import (
    GroupWord,
    expand_module_expr,
    parse_element,
    parse_module_expr,
    parse_poly,
    parse_word,
    print_element,
    print_module_expr,
    print_poly,
    print_word,
)

from .conftest import elements, polys, raw_exprs, seeds, words


def test_parse_word_examples():
    assert parse_word("x1 x2^-1", 2).letters == ((1, 1), (2, -1))
    assert parse_word("[x2,x1]", 2).letters == ((2, -1), (1, -1), (2, 1), (1, 1))
    assert parse_word("(x1 x2)^2", 2).letters == ((1, 1), (2, 1), (1, 1), (2, 1))
    assert parse_word("(x1 x2)^-1", 2).letters == ((2, -1), (1, -1))
    assert parse_word("x1 * x1^2 x2^0", 2).letters == ((1, 3),)
    assert parse_word("1", 2).letters == ()
    assert parse_word("  ", 2).letters == ()


def test_parse_word_errors():
    with pytest.raises(ParseError) as exc:
        parse_word("x1 ^", 2)
    assert exc.value.position == 4
    with pytest.raises(ParseError):
        parse_word("[x1 x2]", 2)
    with pytest.raises(ParseError):
        parse_word("x1 $", 2)
    with pytest.raises(ParseError):
        parse_word("x1^(a1)", 2)
    with pytest.raises(BadIndex) as exc:
        parse_word("x1 x7", 2)
    assert "x7" in str(exc.value)


def test_parse_poly_examples():
    assert parse_poly("a1^-1 + 2", 2) == LaurentPoly(2, {(-1, 0): 1, (0, 0): 2})
    assert parse_poly("2*a1^-1*a2 - 3", 2) == LaurentPoly(2, {(-1, 1): 2, (0, 0): -3})
    assert parse_poly("(a1 - 1)(a1 + 1)", 2) == parse_poly("a1^2 - 1", 2)
    assert parse_poly("-(a2)^2 + 0", 2) == LaurentPoly(2, {(0, 2): -1})
    with pytest.raises(ParseError):
        parse_poly("(a1 + 1)^-1", 2)
    with pytest.raises(BadIndex):
        parse_poly("a3", 2)


def test_parse_module_expr_examples():
    e = parse_module_expr("[x2,x1]^(a3)", 3)
    assert dict(e.factors) == {(2, 1): parse_poly("a3", 3)}
    e = parse_module_expr("[x2,x1]^(a3) * [x3,x2]^(1-a1)", 3)
    assert len(e) == 2
    # [x1,x2] = [x2,x1]^-1
    e = parse_module_expr("[x1,x2]^(1)", 2)
    assert dict(e.factors) == {(2, 1): LaurentPoly.const(2, -1)}
    assert len(parse_module_expr("1", 2)) == 0
    with pytest.raises(ParseError):
        parse_module_expr("[x1 x2]^(1)", 2)


def test_expand_examples():
    assert print_word(expand_module_expr(parse_module_expr("[x2,x1]^(1)", 2))) == print_word(parse_word("[x2,x1]", 2))
    w = expand_module_expr(parse_module_expr("[x2,x1]^(a1)", 2))
    assert w == parse_word("x1^-1 [x2,x1] x1", 2)
    assert magnus_equal(w, parse_word("x1^-1 x2^-1 x1^-1 x2 x1 x1", 2))
    assert expand_module_expr(parse_module_expr("1", 2)).letters == ()


def test_print_examples():
    assert print_element(identity(3)) == "1"
    assert print_element(parse_element("x2 x1", 2)) == "x1 x2 [x2,x1]^(1)"
    assert print_poly(parse_poly("a1 - 1", 2)) == "a1 - 1"
    assert print_word(GroupWord(2)) == "1"


def test_monomial_word_order_irrelevant():
    # conjugating an element of G' by an element of G' does nothing, so any
    # word for the monomial realizes the action
    c = parse_word("[x2,x1]", 3)
    t1 = parse_word("x1 x3^2", 3)
    t2 = parse_word("x3^2 x1", 3)
    assert magnus_equal(t1.inverse() * c * t1, t2.inverse() * c * t2)


@given(words())
def test_word_print_parse_roundtrip(w):
    assert parse_word(print_word(w), w.rank) == w


@given(elements())
def test_element_print_parse_roundtrip(g):
    text = print_element(g)
    assert parse_element(text, g.rank) == g
    assert print_element(parse_element(text, g.rank)) == text


@given(polys())
def test_poly_print_parse_roundtrip(p):
    assert parse_poly(print_poly(p), p.rank) == p


@given(raw_exprs())
def test_module_expr_print_parse_roundtrip(e):
    u = collect(e)
    assert collect(parse_module_expr(print_module_expr(u), u.rank)) == u
    assert collect(parse_module_expr(print_module_expr(e), e.rank)) == u


@given(raw_exprs())
def test_expand_then_evaluate_equals_collect(e):
    assert evaluate_word(expand_module_expr(e)) == from_part(collect(e))


@given(words())
def test_word_inverse_and_merge(w):
    assert (w * w.inverse()).letters == ()
    assert all(a[0] != b[0] for a, b in zip(w.letters, w.letters[1:]))
    assert all(e for _, e in w.letters)


@given(seeds)
def test_commutator_sugar_nests(seed):
    r = random.Random(seed)
    u, v = random_word(r, 3, 5, 2), random_word(r, 3, 5, 2)
    text = f"[{print_word(u)}, ({print_word(v)})^2]"
    expected = u.inverse() * v.pow(-2) * u * v.pow(2)
    assert parse_word(text, 3) == expected
