"""Compiling formulas to automata, deciding, and extracting witnesses."""

import random

import pytest

from omegacantor import (
    LogicSet,
    PreconditionError,
    check_witness,
    compile_formula,
    decide,
    model_check,
    model_check_qf,
    parse_formula,
    witness,
)
from omegacantor.compile import VarEnv, lt_formula_via_sets, singleton_automaton
from omegacantor.formulas import free_vars
from omegacantor.nba import member_up

from conftest import random_upword
from oracles import up_member_direct


def random_logic_set(rng: random.Random) -> LogicSet:
    return LogicSet.of(
        tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 3))),
        tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 2))),
    )


SENTENCES = [
    ("ex1 x. first(x)", True),
    ("all1 x. ex1 y. x < y", True),
    ("ex1 x. all1 y. (x = y or x < y)", True),
    ("ex1 x. ex1 y. (x < y and y < x)", False),
    ("all2 X. ex1 x. x in X", False),
    ("ex2 X. (first_in(X) and all1 x. (x in X -> s(x) in X))", True),
    ("all2 X. ((first_in(X) and all1 x. (x in X -> s(x) in X)) -> all1 x. x in X)", True),
    ("ex1 x. s(x) = x", False),
]


def test_decide_mini_suite():
    for text, want in SENTENCES:
        assert decide(parse_formula(text)) is want, text


def test_decide_requires_sentence():
    with pytest.raises(PreconditionError):
        decide(parse_formula("x in X"))


def test_compile_checks_environment():
    f = parse_formula("x in X")
    with pytest.raises(PreconditionError):
        compile_formula(f, VarEnv.of(["x"]))
    with pytest.raises(PreconditionError):
        compile_formula(f, VarEnv.of([("x", 2), ("X", 2)]))


def test_varenv_case_convention():
    env = VarEnv.of(["x", "X"])
    assert env.order_of("x") == 1
    assert env.order_of("X") == 2
    with pytest.raises(PreconditionError):
        VarEnv.of(["x", "x"])


def test_singleton_automaton_accepts_exactly_singletons():
    from omegacantor import TrackAlphabet

    alpha = TrackAlphabet(("x",))
    aut = singleton_automaton(alpha, "x")
    rng = random.Random(120)
    for _ in range(80):
        w = random_upword(rng, alpha)
        bits_pre, bits_per = w.track_bits("x")
        ones = sum(bits_pre) + (sum(bits_per) > 0) * 2
        assert up_member_direct(aut, w) == (sum(bits_pre) == 1 and not any(bits_per))


def test_compiled_atoms_agree_with_qf_evaluation():
    atoms = [
        "x < y",
        "x = y",
        "s(x) = y",
        "first(x)",
        "x in X",
        "X sub Y",
        "X = Y",
        "dsum(1,-1; X,Y) = 0 at x",
        "dsum(1,1; X,Y) > 0 at x",
        "dsum(1; X) < 1 at x",
    ]
    rng = random.Random(121)
    for text in atoms:
        f = parse_formula(text)
        env = VarEnv.for_formula(f)
        aut = compile_formula(f, env)
        for _ in range(40):
            assignment: dict[str, int | LogicSet] = {}
            for name, order in env.items:
                if order == 1:
                    assignment[name] = rng.randint(0, 4)
                else:
                    assignment[name] = random_logic_set(rng)
            got = model_check(f, assignment)
            want = model_check_qf(f, assignment)
            assert got == want, (text, assignment)


def test_model_check_matches_word_membership():
    # feeding the encoded assignment to the compiled automaton is the same
    # as substituting and deciding
    from omegacantor.compile import witness_word

    rng = random.Random(122)
    f = parse_formula("ex1 y. (x < y and y in X)")
    env = VarEnv.for_formula(f)
    aut = compile_formula(f, env)
    for _ in range(60):
        assignment = {"x": rng.randint(0, 4), "X": random_logic_set(rng)}
        w = witness_word(assignment, env)
        assert member_up(aut, w) == model_check(f, assignment)


def test_witness_satisfiable():
    f = parse_formula("ex1 y. (x < y and y in X)")
    got = witness(f)
    assert got is not None
    assert check_witness(f, got)
    assert set(got) == {"x", "X"}
    assert isinstance(got["x"], int)
    assert isinstance(got["X"], LogicSet)


def test_witness_canonical_and_frozen():
    # the canonical lasso gives the least witness; pinned once, stable forever
    f = parse_formula("ex1 y. (x < y and y in X)")
    got = witness(f)
    assert got == {"x": 0, "X": LogicSet.of((0, 1), (0,))}


def test_witness_unsatisfiable():
    f = parse_formula("x < y and y < x")
    assert witness(f) is None


def test_witness_round_trip_random_formulas():
    texts = [
        "x in X and not y in X and x < y",
        "X sub Y and first_in(Y) and not first_in(X)",
        "dsum(1,-1; X,Y) = 0 at x and x in X",
        "ex1 z. (x < z and z < y)",
    ]
    for text in texts:
        f = parse_formula(text)
        got = witness(f)
        assert got is not None, text
        assert check_witness(f, got), text


def test_lt_via_sets_equals_primitive():
    # the second-order definition of < agrees with the primitive everywhere
    direct = parse_formula("x < y")
    encoded = lt_formula_via_sets("x", "y")
    env = VarEnv.of([("x", 1), ("y", 1)])
    rng = random.Random(123)
    for _ in range(50):
        assignment = {"x": rng.randint(0, 5), "y": rng.randint(0, 5)}
        assert model_check(direct, assignment) == model_check(encoded, assignment)
    # and as compiled languages
    from omegacantor import language_equivalent

    a = compile_formula(direct, env)
    b = compile_formula(encoded, env)
    assert language_equivalent(a, b)


def test_model_check_qf_requires_quantifier_free():
    with pytest.raises(PreconditionError):
        model_check_qf(parse_formula("ex1 x. first(x)"), {})


def test_projection_collapses_tracks():
    f = parse_formula("ex2 X. (x in X and not y in X)")
    assert [n for n, _ in free_vars(f)] == ["x", "y"]
    env = VarEnv.for_formula(f)
    aut = compile_formula(f, env)
    assert aut.alphabet.tracks == ("x", "y")
    # satisfied exactly when x != y
    rng = random.Random(124)
    for _ in range(40):
        assignment = {"x": rng.randint(0, 3), "y": rng.randint(0, 3)}
        want = assignment["x"] != assignment["y"]
        assert model_check(f, assignment) == want
