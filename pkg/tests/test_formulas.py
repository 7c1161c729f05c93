"""Formula parsing, printing, sorts and free variables."""

from fractions import Fraction

import pytest

from omegacantor import (
    Formula,
    LogicSet,
    ParseError,
    SortError,
    parse_formula,
    pretty,
    subst_sets,
)
from omegacantor.formulas import (
    free_vars,
    is_quantifier_free,
    And,
    DigitSum,
    EqPos,
    EqSet,
    Exists1,
    Exists2,
    First,
    InSet,
    Lt,
    Not,
    SetConst,
    SetVar,
    Subset,
    Succ,
)


def test_precedence_layering():
    f = parse_formula("x < y and y in X or not first(x)")
    # and binds tighter than or; not binds tightest
    assert isinstance(f.left, And)
    assert isinstance(f.right, Not)


def test_implication_is_right_associative():
    f = parse_formula("x = y -> y = z -> x = z")
    assert pretty(f) == pretty(parse_formula("x = y -> (y = z -> x = z)"))


def test_quantifier_body_extends_right():
    f = parse_formula("ex1 x. x in X and first(x)")
    assert isinstance(f, Exists1)
    assert isinstance(f.body, And)


def test_parse_pretty_round_trip():
    texts = [
        "ex1 x. x in X",
        "all1 x. (x in X -> ex1 y. (x < y and y in X))",
        "ex2 Y. all1 y. y in Y",
        "first_in(X) <-> not (ex1 x. (x in X and ex1 y. y < x))",
        "dsum(1,-1; X,Y) = 0 at y",
        "dsum(1/2; X) > 0",
        "X sub Y and not X = Y",
        "X = up(01;10)",
        "s(x) = y and s(y) in X",
    ]
    for text in texts:
        f = parse_formula(text)
        assert parse_formula(pretty(f)) == f


def test_case_convention_separates_sorts():
    f = parse_formula("x in X")
    assert free_vars(f) == [("x", 1), ("X", 2)]


def test_sort_errors():
    with pytest.raises(SortError):
        parse_formula("X < Y")
    with pytest.raises(SortError):
        parse_formula("x = X")
    with pytest.raises(SortError):
        parse_formula("X = x")
    with pytest.raises(SortError):
        parse_formula("dsum(1,2; X) = 0")


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_formula("ex1 x. (x in X")
    assert "line" in str(info.value) or "end of formula" in str(info.value)
    with pytest.raises(ParseError):
        parse_formula("x >< y")
    with pytest.raises(ParseError):
        parse_formula("x = y extra")


def test_sugar_desugars_to_core():
    f = parse_formula("s(x) in T")
    assert isinstance(f, Exists1)
    assert isinstance(f.body, And)
    assert isinstance(f.body.left, Succ)
    assert isinstance(f.body.right, InSet)
    # fresh variable avoids capture
    assert f.var not in ("x", "T")

    g = parse_formula("first_in(X)")
    assert isinstance(g, Exists1)
    assert isinstance(g.body.left, First)

    h = parse_formula("s_in(T at s(x))")
    assert pretty(h) == pretty(f)


def test_free_vars_shadowing():
    f = parse_formula("x in X and ex1 x. first(x)")
    assert free_vars(f) == [("x", 1), ("X", 2)]
    g = parse_formula("ex2 X. x in X")
    assert free_vars(g) == [("x", 1)]


def test_is_quantifier_free():
    assert is_quantifier_free(parse_formula("x in X and first(y)"))
    assert not is_quantifier_free(parse_formula("ex1 x. x in X"))
    # desugared forms introduce quantifiers
    assert not is_quantifier_free(parse_formula("s(x) in X"))


def test_subst_sets_replaces_free_occurrences():
    f = parse_formula("x in X and ex2 X. x in X")
    g = subst_sets(f, {"X": LogicSet.of((0, 1), (0,))})
    assert isinstance(g.left.arg, SetConst)
    # the bound occurrence is untouched
    assert isinstance(g.right.body.arg, SetVar)
    assert free_vars(g) == [("x", 1)]


def test_logic_set_basics():
    s = LogicSet.of((0, 1), (1, 0))
    assert [s.bit(i) for i in range(6)] == [0, 1, 1, 0, 1, 0]
    assert s.members_upto(6) == [1, 2, 4]
    assert not s.is_finite()
    assert LogicSet.singleton(3).members_upto(10) == [3]
    assert str(LogicSet.empty()) == "up(;0)"


def test_logic_set_canonicalizes():
    assert LogicSet.of((0, 1, 0, 1), (0, 1)) == LogicSet.of((), (0, 1))


def test_dsum_rational_coefficients():
    f = parse_formula("dsum(1/2,-3; X,Y) < 0 at z")
    assert isinstance(f, DigitSum)
    assert f.coeffs == (Fraction(1, 2), Fraction(-3))
    assert f.rel == "<"
    assert f.at == "z"


def test_up_constant_bits_validated():
    with pytest.raises(ParseError):
        parse_formula("X = up(02;1)")
